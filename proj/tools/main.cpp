#include "screenwright/dataset.hpp"
#include "screenwright/eval.hpp"
#include "screenwright/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace screenwright;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitStage = 2;
constexpr int kExitConfig = 3;

// Flags shared by every subcommand that talks to a model.
struct CommonFlags {
    std::string config_path;
    std::string backend;
    std::string cassette;
    std::string record_upstream;
    std::optional<std::uint64_t> seed;
    std::string mode;
    bool no_role_play = false;
    std::optional<int> feedback_rounds;
    bool resume = false;
    bool force = false;
    std::optional<int> jobs;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        cmd->add_option("--backend", backend, "live|record|replay|mock")
            ->check(CLI::IsMember({"live", "record", "replay", "mock"}));
        cmd->add_option("--cassette", cassette, "cassette file for record/replay");
        cmd->add_option("--record-upstream", record_upstream, "backend recorded from: live|mock")
            ->check(CLI::IsMember({"live", "mock"}));
        cmd->add_option("--seed", seed, "seed for the mock backend and judge ordering");
        cmd->add_option("--mode", mode, "hollmwood|plan-then-write")
            ->check(CLI::IsMember({"hollmwood", "plan-then-write"}));
        cmd->add_flag("--no-role-play", no_role_play, "write episodes without actor agents");
        cmd->add_option("--feedback-rounds", feedback_rounds, "editor rounds per artifact")
            ->check(CLI::IsMember({0, 1, 2}));
        cmd->add_flag("--resume", resume, "keep per-item files of an interrupted stage");
        cmd->add_flag("--force", force, "redo completed stages");
        cmd->add_option("--jobs", jobs, "stories or judgments in parallel")->check(CLI::PositiveNumber);
    }

    PipelineConfig config() const {
        PipelineConfig c = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
        if (!backend.empty()) c.backend = *parse_backend(backend);
        if (!cassette.empty()) c.cassette = cassette;
        if (!record_upstream.empty()) c.record_upstream = *parse_backend(record_upstream);
        if (seed) c.seed = *seed;
        if (!mode.empty()) c.mode = *parse_mode(mode);
        if (no_role_play) c.role_play = false;
        if (feedback_rounds) c.planning.max_feedback_rounds = *feedback_rounds;
        if (jobs) c.jobs = *jobs;
        c.validate();
        return c;
    }

    RunOptions options() const { return {resume, force}; }
};

struct StoryFlags {
    std::string storyline;
    std::string dataset;
    std::string story_id;
    std::string out = "runs";

    void attach(CLI::App* cmd) {
        auto* one = cmd->add_option("--storyline", storyline, "storyline text file")
                        ->check(CLI::ExistingFile);
        auto* many = cmd->add_option("--dataset", dataset, "directory of storyline files")
                         ->check(CLI::ExistingDirectory);
        one->excludes(many);
        cmd->add_option("--story-id", story_id, "story directory name (default: file stem)");
        cmd->add_option("--out", out, "root directory for story directories");
    }

    std::vector<StorylineEntry> stories() const {
        if (!dataset.empty()) {
            return read_dataset(dataset);
        }
        if (storyline.empty()) {
            throw Error(ErrorCode::ConfigError, "need --storyline or --dataset");
        }
        std::ifstream in(storyline, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string id = story_id.empty() ? fs::path(storyline).stem().string() : story_id;
        return {{id, parse_storyline_file(ss.str())}};
    }
};

int stage_command(const CommonFlags& common, const StoryFlags& story_flags,
                  const std::function<void(StoryRunner&)>& step) {
    const PipelineConfig config = common.config();
    auto gateway = make_gateway(config);
    int code = kExitOk;
    for (const auto& s : story_flags.stories()) {
        StoryRunner runner(config, *gateway, {s.id, s.storyline, fs::path(story_flags.out) / s.id},
                           common.options());
        try {
            step(runner);
            std::cout << s.id << ": ok\n";
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::StageOrder) {
                throw;
            }
            std::cerr << s.id << ": " << e.what() << '\n';
            code = kExitStage;
        }
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"screenwright: storyline to screenplay with writer, editor and actor agents"};
    app.require_subcommand(1);

    CommonFlags common;
    StoryFlags story;

    auto* synth = app.add_subcommand("synth", "synthesize a storyline dataset");
    common.attach(synth);
    std::string synth_out = "data/storylines";
    std::size_t per_genre = 10;
    std::size_t target_words = 120;
    synth->add_option("--out", synth_out, "output directory");
    synth->add_option("--per-genre", per_genre, "storylines per genre")->check(CLI::PositiveNumber);
    synth->add_option("--target-words", target_words, "requested length")->check(CLI::PositiveNumber);

    auto* plan = app.add_subcommand("plan", "characters and outline");
    auto* expand = app.add_subcommand("expand", "expand subplots into chapters");
    auto* draft = app.add_subcommand("draft", "draft scripts from chapters");
    auto* act = app.add_subcommand("act", "role-play drafts into episodes and screenplay.txt");
    auto* run = app.add_subcommand("run", "all stages end to end");
    for (auto* cmd : {plan, expand, draft, act, run}) {
        common.attach(cmd);
        story.attach(cmd);
    }

    auto* eval = app.add_subcommand("eval", "pairwise judging of two run directories");
    common.attach(eval);
    std::string x_dir;
    std::string y_dir;
    std::string eval_out = "eval";
    std::string x_name = "X";
    std::string y_name = "Y";
    eval->add_option("--x", x_dir, "method X run root")->required()->check(CLI::ExistingDirectory);
    eval->add_option("--y", y_dir, "method Y run root")->required()->check(CLI::ExistingDirectory);
    eval->add_option("--out", eval_out, "report directory");
    eval->add_option("--x-name", x_name, "label for method X");
    eval->add_option("--y-name", y_name, "label for method Y");

    auto* stats = app.add_subcommand("stats", "dataset, length and failure statistics");
    std::string stats_dataset;
    std::vector<std::string> stats_runs;
    stats->add_option("--dataset", stats_dataset, "storyline dataset directory")
        ->check(CLI::ExistingDirectory);
    stats->add_option("--runs", stats_runs, "run roots, one per method")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (synth->parsed()) {
            const PipelineConfig config = common.config();
            auto gateway = make_gateway(config);
            SynthConfig sc;
            sc.per_genre = per_genre;
            sc.target_words = target_words;
            sc.params = config.writer;
            std::vector<std::string> warnings;
            const auto entries = synthesize_dataset(*gateway, sc, &warnings);
            write_dataset(synth_out, entries);
            for (const auto& w : warnings) {
                std::cerr << "warning: " << w << '\n';
            }
            std::cout << format_dataset_stats(dataset_stats(entries));
            return kExitOk;
        }
        if (plan->parsed()) return stage_command(common, story, [](StoryRunner& r) { r.plan(); });
        if (expand->parsed()) return stage_command(common, story, [](StoryRunner& r) { r.expand(); });
        if (draft->parsed()) return stage_command(common, story, [](StoryRunner& r) { r.draft(); });
        if (act->parsed()) return stage_command(common, story, [](StoryRunner& r) { r.act(); });
        if (run->parsed()) {
            const PipelineConfig config = common.config();
            auto gateway = make_gateway(config);
            const auto outcomes = run_batch(config, *gateway, story.stories(), story.out, common.options());
            int code = kExitOk;
            std::size_t words = 0;
            for (const auto& o : outcomes) {
                if (o.ok) {
                    std::cout << o.story_id << ": ok, " << o.words << " words\n";
                    words += o.words;
                } else {
                    std::cerr << o.story_id << ": failed in " << to_string(*o.failed_stage) << ": "
                              << o.error << '\n';
                    code = kExitStage;
                }
            }
            std::cout << "total words: " << words << ", model calls: " << gateway->calls() << '\n';
            return code;
        }
        if (eval->parsed()) {
            const PipelineConfig config = common.config();
            auto gateway = make_gateway(config);
            const auto report = run_eval(x_dir, y_dir, config, *gateway, eval_out, x_name, y_name);
            std::cout << format_table(report.rows, x_name, y_name);
            std::cout << report.pairs << " pairs, " << report.judge_failures << " judge failures\n";
            return kExitOk;
        }
        if (stats->parsed()) {
            if (stats_dataset.empty() && stats_runs.empty()) {
                std::cerr << "stats: need --dataset or --runs\n";
                return kExitConfig;
            }
            if (!stats_dataset.empty()) {
                std::cout << format_dataset_stats(dataset_stats(read_dataset(stats_dataset)));
            }
            if (!stats_runs.empty()) {
                std::vector<fs::path> roots(stats_runs.begin(), stats_runs.end());
                std::cout << format_run_stats(run_stats(roots));
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.code() == ErrorCode::ConfigError) return kExitConfig;
        if (e.code() == ErrorCode::StageFailure || e.code() == ErrorCode::StructuredOutputFailure) {
            return kExitStage;
        }
        return kExitOther;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOther;
    }
    return kExitOther;
}
