#pragma once

// End-to-end orchestration: configuration, backend selection, per-story stage
// execution with checkpoints, multi-story batches and pairwise evaluation runs.

#include "screenwright/checkpoint.hpp"
#include "screenwright/dataset.hpp"
#include "screenwright/eval.hpp"
#include "screenwright/expansion.hpp"
#include "screenwright/gateway.hpp"
#include "screenwright/planning.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace screenwright {

enum class Mode { HoLLMwood, PlanThenWrite };
std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);  // "hollmwood", "plan-then-write"

enum class BackendKind { Live, Record, Replay, Mock };
std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend(std::string_view text);

struct PipelineConfig {
    GenParams writer;
    GenParams editor;
    GenParams actor;
    GenParams judge{"gpt-4-32k-0613", 1.0, 0.999, std::nullopt};
    PlanningConfig planning;
    ExpansionConfig expansion;
    Mode mode = Mode::HoLLMwood;
    bool role_play = true;
    int max_retries = Gateway::kDefaultMaxRetries;
    std::size_t rate_limit = 0;  // requests per minute, 0 = unlimited
    std::uint64_t seed = 0;
    BackendKind backend = BackendKind::Mock;
    std::string cassette;                          // record / replay
    BackendKind record_upstream = BackendKind::Live;  // Live or Mock
    int jobs = 1;                                  // stories in parallel

    // Throws ConfigError.
    void validate() const;

    // JSON with the keys shown by to_json_text(); unknown keys are rejected.
    static PipelineConfig from_json_text(std::string_view text);
    static PipelineConfig load(const std::filesystem::path& path);
    std::string to_json_text() const;
};

// Throws ConfigError when the backend cannot be built (missing key or cassette).
std::shared_ptr<Backend> make_backend(const PipelineConfig& config);
std::shared_ptr<Gateway> make_gateway(const PipelineConfig& config,
                                      std::shared_ptr<Backend> backend = nullptr,
                                      std::shared_ptr<FailureLog> failures = nullptr);

struct RunOptions {
    bool resume = false;  // keep per-item files of an interrupted stage
    bool force = false;   // redo completed stages
};

struct StoryJob {
    std::string story_id;
    Storyline storyline;
    std::filesystem::path dir;
};

Stage failure_stage(PipelineStage stage);

// Runs the stages of one story in its directory. Completed stages are loaded
// from disk instead of being rerun unless `force` is set.
class StoryRunner {
public:
    StoryRunner(const PipelineConfig& config, Gateway& gateway, StoryJob job, RunOptions options);

    void plan();
    void expand();
    void draft();
    // Produces episodes and screenplay.txt.
    Screenplay act();
    Screenplay run();

    const StageState& state() const noexcept { return state_; }
    const CheckpointStore& store() const noexcept { return store_; }

private:
    StageEnv env() const;
    bool skip(PipelineStage stage);
    void finish(PipelineStage stage);
    void clear_items(std::string_view prefix) const;

    CharacterSet load_characters() const;
    Outline load_outline() const;
    std::vector<Chapter> load_chapters(const Outline& outline) const;
    std::vector<ScriptDraft> load_drafts(const Outline& outline) const;

    PipelineConfig config_;
    Gateway* gateway_;
    StoryJob job_;
    RunOptions options_;
    CheckpointStore store_;
    StageState state_;
};

struct RunOutcome {
    std::string story_id;
    bool ok = false;
    std::optional<PipelineStage> failed_stage;
    std::string error;
    std::size_t words = 0;  // screenplay word count
    std::filesystem::path dir;
};

// Runs one story end to end. Stage errors are recorded as stage failures in
// the gateway's log and in <dir>/failure.json; they never escape.
RunOutcome run_story(const PipelineConfig& config, Gateway& gateway, const StoryJob& job,
                     const RunOptions& options);

// Stories under <root>/<story_id>, at most config.jobs at a time. Outcomes
// keep the order of `stories`.
std::vector<RunOutcome> run_batch(const PipelineConfig& config, Gateway& gateway,
                                  const std::vector<StorylineEntry>& stories,
                                  const std::filesystem::path& root, const RunOptions& options);

// Loads the artifacts of a finished story directory.
MethodRun load_method_run(const std::filesystem::path& story_dir);

// Pairs stories present in both roots by directory name and judges them.
// Writes results.ndjson, table.csv, table.txt and eval.log into `out_dir`.
EvalReport run_eval(const std::filesystem::path& x_root, const std::filesystem::path& y_root,
                    const PipelineConfig& config, Gateway& gateway,
                    const std::filesystem::path& out_dir, std::string_view x_name = "X",
                    std::string_view y_name = "Y");

struct RunStats {
    std::map<Stage, std::size_t> attempted;
    std::map<Stage, std::size_t> failed;
    std::map<Stage, double> failure_rate;
    LengthTable lengths;
};

// Failure rates and screenplay lengths over the story directories of each
// root; the method name of a root is its directory name.
RunStats run_stats(const std::vector<std::filesystem::path>& roots);
std::string format_run_stats(const RunStats& stats);

} // namespace screenwright
