#include "screenwright/cassette.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>

namespace screenwright {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::vector<CassetteRecord> load_cassette(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open cassette " + path.string());
    }
    std::vector<CassetteRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            CassetteRecord rec;
            rec.hash = j.at("hash").get<std::string>();
            rec.request_json = j.at("request").dump();
            rec.response = j.at("response").get<std::string>();
            rec.timestamp = j.value("timestamp", "");
            out.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::Io, path.string() + ":" + std::to_string(line_no) +
                                           ": bad cassette record: " + e.what());
        }
    }
    return out;
}

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> upstream, std::filesystem::path path)
    : upstream_(std::move(upstream)), path_(std::move(path)) {
    if (!upstream_) {
        throw Error(ErrorCode::ConfigError, "recording needs an upstream backend");
    }
    if (path_.has_parent_path()) {
        std::filesystem::create_directories(path_.parent_path());
    }
}

std::string RecordingBackend::complete(const ChatRequest& request) {
    std::string response = upstream_->complete(request);
    nlohmann::json rec = {
        {"hash", request_hash(request)},
        {"request", nlohmann::json::parse(canonical_request_json(request))},
        {"response", response},
        {"timestamp", utc_timestamp()},
    };
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot append to cassette " + path_.string());
    }
    out << rec.dump() << '\n';
    return response;
}

ReplayBackend::ReplayBackend(const std::filesystem::path& path)
    : ReplayBackend(load_cassette(path)) {}

ReplayBackend::ReplayBackend(std::vector<CassetteRecord> records) : size_(records.size()) {
    for (auto& rec : records) {
        responses_[rec.hash].push_back(std::move(rec.response));
    }
}

std::string ReplayBackend::complete(const ChatRequest& request) {
    const std::string hash = request_hash(request);
    std::lock_guard lock(mutex_);
    auto it = responses_.find(hash);
    if (it == responses_.end()) {
        throw Error(ErrorCode::ReplayMiss, "no recorded response for request " + hash);
    }
    std::size_t& n = served_[hash];
    const auto& list = it->second;
    const std::string& out = list[std::min(n, list.size() - 1)];
    ++n;
    return out;
}

} // namespace screenwright
