#include "screenwright/checkpoint.hpp"
#include "screenwright/error.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <sstream>

namespace screenwright {

namespace fs = std::filesystem;

CheckpointStore::CheckpointStore(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir_.string() + ": " + ec.message());
    }
}

bool CheckpointStore::exists(std::string_view name) const {
    return fs::exists(path(name));
}

std::optional<std::string> CheckpointStore::try_read(std::string_view name) const {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string CheckpointStore::read(std::string_view name) const {
    auto content = try_read(name);
    if (!content) {
        throw Error(ErrorCode::Io, "missing checkpoint " + path(name).string());
    }
    return std::move(*content);
}

void CheckpointStore::write(std::string_view name, std::string_view content) const {
    const fs::path target = path(name);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot rename to " + target.string() + ": " + ec.message());
    }
}

void CheckpointStore::append_line(std::string_view name, std::string_view line) const {
    std::lock_guard lock(mutex_);
    std::ofstream out(path(name), std::ios::binary | std::ios::app);
    out << line << '\n';
    if (!out) {
        throw Error(ErrorCode::Io, "cannot append to " + path(name).string());
    }
}

void CheckpointStore::remove(std::string_view name) const {
    std::error_code ec;
    fs::remove(path(name), ec);
}

std::string CheckpointStore::write_once(std::string_view name, std::string_view content) const {
    const fs::path base(name);
    const std::string stem = base.stem().string();
    const std::string ext = base.extension().string();
    for (int n = 0;; ++n) {
        const std::string candidate = n == 0 ? std::string(name) : stem + "." + std::to_string(n) + ext;
        auto existing = try_read(candidate);
        if (!existing) {
            write(candidate, content);
            return candidate;
        }
        if (*existing == content) {
            return candidate;
        }
    }
}

// StageState -------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kPipelineStageCount> kStageNames = {
    "planning", "expansion", "drafting", "screenplay"};

} // namespace

std::string_view to_string(PipelineStage stage) {
    return kStageNames[static_cast<std::size_t>(stage)];
}

void StageState::require_before(PipelineStage stage) const {
    for (int i = 0; i < static_cast<int>(stage); ++i) {
        if (!done(static_cast<PipelineStage>(i))) {
            throw Error(ErrorCode::StageOrder,
                        std::string(to_string(stage)) + " needs " +
                            std::string(to_string(static_cast<PipelineStage>(i))) +
                            " to be complete for story " + story_id);
        }
    }
}

void StageState::mark_done(PipelineStage stage) {
    completed |= 1U << static_cast<int>(stage);
}

void StageState::reset_from(PipelineStage stage) {
    for (int i = static_cast<int>(stage); i < kPipelineStageCount; ++i) {
        completed &= ~(1U << i);
    }
}

StageState StageState::load(const CheckpointStore& store, std::string story_id) {
    StageState state;
    state.story_id = std::move(story_id);
    auto text = store.try_read(kFileName);
    if (!text) {
        return state;
    }
    try {
        const auto j = nlohmann::json::parse(*text);
        for (const auto& name : j.at("completed")) {
            for (int i = 0; i < kPipelineStageCount; ++i) {
                if (kStageNames[static_cast<std::size_t>(i)] == name.get<std::string>()) {
                    state.completed |= 1U << i;
                }
            }
        }
        if (j.contains("artifacts")) {
            state.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, "bad " + std::string(kFileName) + ": " + e.what());
    }
    return state;
}

void StageState::save(const CheckpointStore& store) const {
    nlohmann::json done_list = nlohmann::json::array();
    for (int i = 0; i < kPipelineStageCount; ++i) {
        if (done(static_cast<PipelineStage>(i))) {
            done_list.push_back(kStageNames[static_cast<std::size_t>(i)]);
        }
    }
    nlohmann::json j = {{"story_id", story_id}, {"completed", done_list}, {"artifacts", artifacts}};
    store.write(kFileName, j.dump(2) + "\n");
}

} // namespace screenwright
