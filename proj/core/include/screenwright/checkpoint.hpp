#pragma once

// One directory per story. Artifacts are whole files written atomically;
// logs are append-only; state.json records which stages are complete.

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace screenwright {

class CheckpointStore {
public:
    explicit CheckpointStore(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::filesystem::path path(std::string_view name) const { return dir_ / name; }

    bool exists(std::string_view name) const;
    // Throws Io when missing.
    std::string read(std::string_view name) const;
    std::optional<std::string> try_read(std::string_view name) const;
    // Write to a temporary file, then rename over `name`.
    void write(std::string_view name, std::string_view content) const;
    void append_line(std::string_view name, std::string_view line) const;
    void remove(std::string_view name) const;

    // Writes `content` under `name` unless an identical file exists; a
    // different existing file is kept and the content goes to the first free
    // "<stem>.<n><ext>". Returns the file name used.
    std::string write_once(std::string_view name, std::string_view content) const;

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

enum class PipelineStage { Planning = 0, Expansion = 1, Drafting = 2, Screenplay = 3 };
inline constexpr int kPipelineStageCount = 4;
std::string_view to_string(PipelineStage stage);

struct StageState {
    std::string story_id;
    unsigned completed = 0;  // bit i set: PipelineStage(i) complete
    std::map<std::string, std::string> artifacts;

    bool done(PipelineStage stage) const { return (completed >> static_cast<int>(stage)) & 1U; }
    // Throws StageOrder unless every earlier stage is complete.
    void require_before(PipelineStage stage) const;
    void mark_done(PipelineStage stage);
    // Clears `stage` and everything after it.
    void reset_from(PipelineStage stage);

    static StageState load(const CheckpointStore& store, std::string story_id);
    void save(const CheckpointStore& store) const;

    inline static constexpr std::string_view kFileName = "state.json";
};

} // namespace screenwright
