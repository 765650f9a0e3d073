#pragma once

// Cassettes: newline-delimited JSON records {hash, request, response, timestamp}.
// Recording appends one record per call; replay serves the n-th occurrence of
// a request hash from the n-th matching record, and keeps serving the last one
// once they run out.

#include "screenwright/gateway.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace screenwright {

struct CassetteRecord {
    std::string hash;
    std::string request_json;
    std::string response;
    std::string timestamp;
};

std::vector<CassetteRecord> load_cassette(const std::filesystem::path& path);

class RecordingBackend : public Backend {
public:
    RecordingBackend(std::shared_ptr<Backend> upstream, std::filesystem::path path);

    std::string complete(const ChatRequest& request) override;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::shared_ptr<Backend> upstream_;
    std::filesystem::path path_;
    std::mutex mutex_;
};

class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(const std::filesystem::path& path);
    explicit ReplayBackend(std::vector<CassetteRecord> records);

    // Throws ReplayMiss when the hash was never recorded.
    std::string complete(const ChatRequest& request) override;
    std::size_t size() const noexcept { return size_; }

private:
    std::map<std::string, std::vector<std::string>> responses_;
    std::map<std::string, std::size_t> served_;
    std::size_t size_ = 0;
    std::mutex mutex_;
};

} // namespace screenwright
