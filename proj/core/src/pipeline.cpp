#include "screenwright/pipeline.hpp"
#include "screenwright/baseline.hpp"
#include "screenwright/cassette.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/http_backend.hpp"
#include "screenwright/rate_limiter.hpp"
#include "screenwright/screenplay.hpp"
#include "screenwright/script_text.hpp"
#include "screenwright/synthetic_backend.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace screenwright {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Mode mode) {
    return mode == Mode::HoLLMwood ? "hollmwood" : "plan-then-write";
}

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "hollmwood") return Mode::HoLLMwood;
    if (text == "plan-then-write") return Mode::PlanThenWrite;
    return std::nullopt;
}

std::string_view to_string(BackendKind kind) {
    switch (kind) {
    case BackendKind::Live: return "live";
    case BackendKind::Record: return "record";
    case BackendKind::Replay: return "replay";
    case BackendKind::Mock: return "mock";
    }
    return "mock";
}

std::optional<BackendKind> parse_backend(std::string_view text) {
    for (auto k : {BackendKind::Live, BackendKind::Record, BackendKind::Replay, BackendKind::Mock}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

// Config ---------------------------------------------------------------------------

void PipelineConfig::validate() const {
    for (const auto* p : {&writer, &editor, &actor, &judge}) {
        try {
            p->validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
    }
    planning.validate();
    expansion.validate();
    if (max_retries < 0) {
        throw Error(ErrorCode::ConfigError, "max_retries must be >= 0");
    }
    if (jobs < 1) {
        throw Error(ErrorCode::ConfigError, "jobs must be >= 1");
    }
    if ((backend == BackendKind::Record || backend == BackendKind::Replay) && cassette.empty()) {
        throw Error(ErrorCode::ConfigError, "record and replay backends need a cassette path");
    }
    if (record_upstream != BackendKind::Live && record_upstream != BackendKind::Mock) {
        throw Error(ErrorCode::ConfigError, "record_upstream must be live or mock");
    }
}

namespace {

json params_json(const GenParams& p) {
    json j = {{"model", p.model_id}, {"temperature", p.temperature}, {"top_p", p.top_p}};
    j["max_tokens"] = p.max_tokens ? json(*p.max_tokens) : json(nullptr);
    return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys, std::string_view where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw Error(ErrorCode::ConfigError,
                        "unknown config key '" + key + "' in " + std::string(where));
        }
    }
}

void read_params(const json& j, GenParams& p, std::string_view where) {
    reject_unknown(j, {"model", "temperature", "top_p", "max_tokens"}, where);
    if (j.contains("model")) p.model_id = j["model"].get<std::string>();
    if (j.contains("temperature")) p.temperature = j["temperature"].get<double>();
    if (j.contains("top_p")) p.top_p = j["top_p"].get<double>();
    if (j.contains("max_tokens")) {
        p.max_tokens = j["max_tokens"].is_null() ? std::nullopt
                                                 : std::optional<int>(j["max_tokens"].get<int>());
    }
}

template <class Enum>
Enum read_enum(const json& j, std::optional<Enum> (*parse)(std::string_view), std::string_view key) {
    const auto text = j.get<std::string>();
    const auto v = parse(text);
    if (!v) {
        throw Error(ErrorCode::ConfigError, "bad value '" + text + "' for " + std::string(key));
    }
    return *v;
}

} // namespace

std::string PipelineConfig::to_json_text() const {
    json j = {{"writer", params_json(writer)},
              {"editor", params_json(editor)},
              {"actor", params_json(actor)},
              {"judge", params_json(judge)},
              {"planning",
               {{"min_characters", planning.min_characters},
                {"max_characters", planning.max_characters},
                {"max_feedback_rounds", planning.max_feedback_rounds}}},
              {"expansion", {{"context_chapters", expansion.context_chapters}}},
              {"mode", to_string(mode)},
              {"role_play", role_play},
              {"max_retries", max_retries},
              {"rate_limit", rate_limit},
              {"seed", seed},
              {"backend", to_string(backend)},
              {"cassette", cassette},
              {"record_upstream", to_string(record_upstream)},
              {"jobs", jobs}};
    return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json_text(std::string_view text) {
    PipelineConfig c;
    try {
        const json j = json::parse(text);
        if (!j.is_object()) {
            throw Error(ErrorCode::ConfigError, "config must be a JSON object");
        }
        reject_unknown(j,
                       {"writer", "editor", "actor", "judge", "planning", "expansion", "mode",
                        "role_play", "max_retries", "rate_limit", "seed", "backend", "cassette",
                        "record_upstream", "jobs"},
                       "config");
        if (j.contains("writer")) read_params(j["writer"], c.writer, "writer");
        if (j.contains("editor")) read_params(j["editor"], c.editor, "editor");
        if (j.contains("actor")) read_params(j["actor"], c.actor, "actor");
        if (j.contains("judge")) read_params(j["judge"], c.judge, "judge");
        if (j.contains("planning")) {
            const auto& p = j["planning"];
            reject_unknown(p, {"min_characters", "max_characters", "max_feedback_rounds"}, "planning");
            if (p.contains("min_characters")) c.planning.min_characters = p["min_characters"].get<std::size_t>();
            if (p.contains("max_characters")) c.planning.max_characters = p["max_characters"].get<std::size_t>();
            if (p.contains("max_feedback_rounds")) c.planning.max_feedback_rounds = p["max_feedback_rounds"].get<int>();
        }
        if (j.contains("expansion")) {
            const auto& e = j["expansion"];
            reject_unknown(e, {"context_chapters"}, "expansion");
            if (e.contains("context_chapters")) c.expansion.context_chapters = e["context_chapters"].get<int>();
        }
        if (j.contains("mode")) c.mode = read_enum<Mode>(j["mode"], parse_mode, "mode");
        if (j.contains("role_play")) c.role_play = j["role_play"].get<bool>();
        if (j.contains("max_retries")) c.max_retries = j["max_retries"].get<int>();
        if (j.contains("rate_limit")) c.rate_limit = j["rate_limit"].get<std::size_t>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("backend")) c.backend = read_enum<BackendKind>(j["backend"], parse_backend, "backend");
        if (j.contains("cassette")) c.cassette = j["cassette"].get<std::string>();
        if (j.contains("record_upstream")) {
            c.record_upstream = read_enum<BackendKind>(j["record_upstream"], parse_backend, "record_upstream");
        }
        if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot read config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

// Backends -------------------------------------------------------------------------

std::shared_ptr<Backend> make_backend(const PipelineConfig& config) {
    config.validate();
    switch (config.backend) {
    case BackendKind::Mock:
        return std::make_shared<SyntheticBackend>(config.seed);
    case BackendKind::Live:
        return std::make_shared<HttpBackend>(HttpOptions::from_env());
    case BackendKind::Record: {
        std::shared_ptr<Backend> upstream;
        if (config.record_upstream == BackendKind::Mock) {
            upstream = std::make_shared<SyntheticBackend>(config.seed);
        } else {
            upstream = std::make_shared<HttpBackend>(HttpOptions::from_env());
        }
        return std::make_shared<RecordingBackend>(upstream, config.cassette);
    }
    case BackendKind::Replay:
        if (!fs::exists(config.cassette)) {
            throw Error(ErrorCode::ConfigError, "no cassette at " + config.cassette);
        }
        return std::make_shared<ReplayBackend>(fs::path(config.cassette));
    }
    throw Error(ErrorCode::ConfigError, "unknown backend");
}

std::shared_ptr<Gateway> make_gateway(const PipelineConfig& config, std::shared_ptr<Backend> backend,
                                      std::shared_ptr<FailureLog> failures) {
    if (!backend) {
        backend = make_backend(config);
    }
    std::shared_ptr<RateLimiter> limiter;
    if (config.rate_limit > 0) {
        limiter = std::make_shared<RateLimiter>(config.rate_limit);
    }
    return std::make_shared<Gateway>(std::move(backend), std::move(failures), std::move(limiter),
                                     config.max_retries);
}

Stage failure_stage(PipelineStage stage) {
    switch (stage) {
    case PipelineStage::Planning: return Stage::Stage1_Planning;
    case PipelineStage::Expansion: return Stage::Stage2_Expansion;
    case PipelineStage::Drafting:
    case PipelineStage::Screenplay: return Stage::Stage3_Screenplay;
    }
    return Stage::Stage3_Screenplay;
}

// Story runner ---------------------------------------------------------------------

namespace {

constexpr std::string_view kStoryline = "storyline.txt";
constexpr std::string_view kScreenplay = "screenplay.txt";
constexpr std::string_view kFailure = "failure.json";

// File-name prefixes owned by each stage.
const std::vector<std::string_view>& stage_items(PipelineStage stage) {
    static const std::vector<std::string_view> planning = {"characters", "outline", "planning.log"};
    static const std::vector<std::string_view> expansion = {"chapter_", "expansion.log"};
    static const std::vector<std::string_view> drafting = {"draft_"};
    static const std::vector<std::string_view> screenplay = {"episode_", "screenplay.txt"};
    switch (stage) {
    case PipelineStage::Planning: return planning;
    case PipelineStage::Expansion: return expansion;
    case PipelineStage::Drafting: return drafting;
    case PipelineStage::Screenplay: return screenplay;
    }
    return screenplay;
}

} // namespace

StoryRunner::StoryRunner(const PipelineConfig& config, Gateway& gateway, StoryJob job,
                         RunOptions options)
    : config_(config), gateway_(&gateway), job_(std::move(job)), options_(options), store_(job_.dir) {
    config_.validate();
    job_.storyline.validate();
    if (config_.mode == Mode::PlanThenWrite) {
        config_.planning.max_feedback_rounds = 0;
    }
    store_.write_once("effective_config.json", config_.to_json_text());
    store_.write_once(kStoryline, storyline_file_text(job_.storyline));
    state_ = StageState::load(store_, job_.story_id);
}

StageEnv StoryRunner::env() const {
    return {gateway_, config_.writer, config_.editor, config_.actor, job_.story_id, &store_};
}

void StoryRunner::clear_items(std::string_view prefix) const {
    std::vector<fs::path> doomed;
    for (const auto& entry : fs::directory_iterator(store_.dir())) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0) {
            doomed.push_back(entry.path());
        }
    }
    for (const auto& p : doomed) {
        fs::remove(p);
    }
}

bool StoryRunner::skip(PipelineStage stage) {
    if (state_.done(stage) && !options_.force) {
        return true;
    }
    state_.require_before(stage);
    if (state_.done(stage)) {
        // Forced: this stage and everything downstream start over.
        for (int i = static_cast<int>(stage); i < kPipelineStageCount; ++i) {
            for (auto prefix : stage_items(static_cast<PipelineStage>(i))) {
                clear_items(prefix);
            }
        }
        state_.reset_from(stage);
        state_.save(store_);
    } else if (!options_.resume) {
        for (auto prefix : stage_items(stage)) {
            clear_items(prefix);
        }
    }
    return false;
}

void StoryRunner::finish(PipelineStage stage) {
    state_.mark_done(stage);
    state_.save(store_);
}

CharacterSet StoryRunner::load_characters() const {
    const auto doc = parse_tag_document(store_.read("characters.tags"), schema::characters());
    return extract_characters(doc, config_.planning.min_characters, config_.planning.max_characters);
}

Outline StoryRunner::load_outline() const {
    const CharacterSet cast = load_characters();
    OutlineOptions options;
    options.cast = &cast;
    return extract_outline(parse_tag_document(store_.read("outline.tags"), schema::outline()), options);
}

std::vector<Chapter> StoryRunner::load_chapters(const Outline& outline) const {
    std::vector<Chapter> out;
    for (const auto& label : outline.subplot_labels()) {
        const auto text = store_.read(chapter_file_name(label));
        out.push_back(extract_chapter(parse_tag_document(text, schema::chapter()), label));
    }
    return out;
}

std::vector<ScriptDraft> StoryRunner::load_drafts(const Outline& outline) const {
    std::vector<ScriptDraft> out;
    for (const auto& label : outline.subplot_labels()) {
        const auto text = store_.read(draft_file_name(label));
        out.push_back(extract_script_draft(parse_tag_document(text, schema::script_draft()), label));
    }
    return out;
}

void StoryRunner::plan() {
    if (skip(PipelineStage::Planning)) {
        return;
    }
    const auto result = run_plot_planning(env(), job_.storyline, config_.planning);
    state_.artifacts["characters"] = "characters.tags";
    state_.artifacts["outline"] = "outline.tags";
    state_.artifacts["character_rounds"] = std::to_string(result.character_rounds);
    state_.artifacts["outline_rounds"] = std::to_string(result.outline_rounds);
    finish(PipelineStage::Planning);
}

void StoryRunner::expand() {
    if (skip(PipelineStage::Expansion)) {
        return;
    }
    if (config_.mode == Mode::HoLLMwood) {
        const CharacterSet cast = load_characters();
        const Outline outline = load_outline();
        expand_all(env(), outline, cast, job_.storyline, config_.expansion);
        state_.artifacts["chapters"] = std::to_string(outline.subplot_count());
    }
    finish(PipelineStage::Expansion);
}

void StoryRunner::draft() {
    if (skip(PipelineStage::Drafting)) {
        return;
    }
    if (config_.mode == Mode::HoLLMwood) {
        const CharacterSet cast = load_characters();
        const Outline outline = load_outline();
        const auto chapters = load_chapters(outline);
        const auto subplots = outline.subplots();
        for (std::size_t i = 0; i < subplots.size(); ++i) {
            const auto name = draft_file_name(subplots[i]->label);
            if (store_.exists(name)) {
                continue;  // kept by --resume
            }
            const auto draft = draft_script(env(), chapters[i], subplots[i]->scene,
                                            involved_characters(*subplots[i], cast));
            store_.write(name, render(script_draft_document(draft)));
        }
    }
    finish(PipelineStage::Drafting);
}

Screenplay StoryRunner::act() {
    const Outline outline = load_outline();
    const auto episode_files = [&] {
        std::vector<Episode> episodes;
        for (const auto& label : outline.subplot_labels()) {
            const auto text = store_.read(episode_file_name(label));
            episodes.push_back(extract_episode(parse_tag_document(text, schema::episode()), label));
        }
        return episodes;
    };
    if (skip(PipelineStage::Screenplay)) {
        return assemble_screenplay(outline, episode_files());
    }
    const CharacterSet cast = load_characters();
    if (config_.mode == Mode::PlanThenWrite) {
        plan_then_write_episodes(env(), job_.storyline, cast, outline);
    } else {
        const auto drafts = load_drafts(outline);
        const auto subplots = outline.subplots();
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            const auto name = episode_file_name(drafts[i].subplot_label);
            if (store_.exists(name)) {
                continue;
            }
            const auto involved = involved_characters(*subplots[i], cast);
            const Episode ep = config_.role_play ? role_play_episode(env(), drafts[i], involved)
                                                 : direct_episode(env(), drafts[i], involved);
            store_.write(name, render(episode_document(ep)));
        }
    }
    Screenplay screenplay = assemble_screenplay(outline, episode_files());
    store_.write(kScreenplay, render_screenplay(screenplay));
    state_.artifacts["screenplay"] = std::string(kScreenplay);
    finish(PipelineStage::Screenplay);
    return screenplay;
}

Screenplay StoryRunner::run() {
    plan();
    expand();
    draft();
    return act();
}

// Batches ------------------------------------------------------------------------------

RunOutcome run_story(const PipelineConfig& config, Gateway& gateway, const StoryJob& job,
                     const RunOptions& options) {
    RunOutcome out;
    out.story_id = job.story_id;
    out.dir = job.dir;
    std::optional<StoryRunner> runner;
    try {
        runner.emplace(config, gateway, job, options);
        runner->store().remove(kFailure);
        const Screenplay screenplay = runner->run();
        out.words = word_count(render_screenplay(screenplay));
        out.ok = true;
        return out;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError || !runner) {
            throw;
        }
        PipelineStage stage = PipelineStage::Planning;
        for (int i = 0; i < kPipelineStageCount; ++i) {
            if (!runner->state().done(static_cast<PipelineStage>(i))) {
                stage = static_cast<PipelineStage>(i);
                break;
            }
        }
        const ErrorCode kind = e.code() == ErrorCode::StructuredOutputFailure ? e.cause() : e.code();
        gateway.failures()->record_stage_failure({failure_stage(stage), job.story_id,
                                                  std::string(to_string(kind))});
        json j = {{"story_id", job.story_id},
                  {"stage", to_string(failure_stage(stage))},
                  {"pipeline_stage", to_string(stage)},
                  {"error", to_string(e.code())},
                  {"cause", to_string(kind)},
                  {"message", e.what()}};
        runner->store().write(kFailure, j.dump(2) + "\n");
        out.failed_stage = stage;
        out.error = e.what();
        return out;
    }
}

std::vector<RunOutcome> run_batch(const PipelineConfig& config, Gateway& gateway,
                                  const std::vector<StorylineEntry>& stories, const fs::path& root,
                                  const RunOptions& options) {
    config.validate();
    CheckpointStore(root).write_once("effective_config.json", config.to_json_text());
    std::vector<RunOutcome> outcomes(stories.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < stories.size(); i = next++) {
            try {
                const auto& s = stories[i];
                outcomes[i] = run_story(config, gateway, {s.id, s.storyline, root / s.id}, options);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(config.jobs),
                                                std::max<std::size_t>(stories.size(), 1));
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < n; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto& t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return outcomes;
}

// Evaluation -------------------------------------------------------------------------

MethodRun load_method_run(const fs::path& story_dir) {
    const CheckpointStore store(story_dir);
    MethodRun run;
    run.characters = extract_characters(parse_tag_document(store.read("characters.tags"), schema::characters()),
                                        1, std::numeric_limits<std::size_t>::max());
    OutlineOptions options;
    options.cast = &run.characters;
    options.lenient = true;
    run.outline = extract_outline(parse_tag_document(store.read("outline.tags"), schema::outline()), options);
    const auto labels = run.outline.subplot_labels();
    const bool have_episodes = std::all_of(labels.begin(), labels.end(), [&](const PlotLabel& l) {
        return store.exists(episode_file_name(l));
    });
    if (have_episodes) {
        std::vector<Episode> episodes;
        for (const auto& l : labels) {
            episodes.push_back(extract_episode(
                parse_tag_document(store.read(episode_file_name(l)), schema::episode()), l));
        }
        run.screenplay = assemble_screenplay(run.outline, std::move(episodes));
    } else {
        run.screenplay = parse_screenplay(store.read(kScreenplay), run.characters.names(), labels);
    }
    return run;
}

namespace {

std::vector<std::string> story_dirs(const fs::path& root) {
    std::vector<std::string> out;
    if (!fs::is_directory(root)) {
        throw Error(ErrorCode::Io, "no directory " + root.string());
    }
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / kStoryline)) {
            out.push_back(entry.path().filename().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Storyline read_storyline(const fs::path& dir) {
    return parse_storyline_file(CheckpointStore(dir).read(kStoryline));
}

} // namespace

EvalReport run_eval(const fs::path& x_root, const fs::path& y_root, const PipelineConfig& config,
                    Gateway& gateway, const fs::path& out_dir, std::string_view x_name,
                    std::string_view y_name) {
    const auto xs = story_dirs(x_root);
    const auto ys = story_dirs(y_root);
    const std::set<std::string> y_set(ys.begin(), ys.end());
    std::vector<std::string> skipped;
    std::vector<StoryPairInput> stories;
    for (const auto& id : xs) {
        if (!y_set.contains(id)) {
            skipped.push_back("story " + id + " missing from " + y_root.string());
            continue;
        }
        if (!fs::exists(x_root / id / kScreenplay) || !fs::exists(y_root / id / kScreenplay)) {
            skipped.push_back("story " + id + " has no screenplay on both sides");
            continue;
        }
        stories.push_back({id, read_storyline(x_root / id), load_method_run(x_root / id),
                           load_method_run(y_root / id)});
    }
    for (const auto& id : ys) {
        if (std::find(xs.begin(), xs.end(), id) == xs.end()) {
            skipped.push_back("story " + id + " missing from " + x_root.string());
        }
    }
    EvalReport report = run_evaluation({&gateway, config.judge}, stories, config.seed, config.jobs);
    report.log.insert(report.log.begin(), skipped.begin(), skipped.end());

    const CheckpointStore out(out_dir);
    out.write_once("effective_config.json", config.to_json_text());
    out.write("results.ndjson", results_ndjson(report.results));
    out.write("table.csv", rows_csv(report.rows));
    out.write("table.txt", format_table(report.rows, x_name, y_name));
    std::string log;
    for (const auto& line : report.log) {
        log += line + "\n";
    }
    out.write("eval.log", log);
    return report;
}

// Run statistics ------------------------------------------------------------------------

RunStats run_stats(const std::vector<fs::path>& roots) {
    RunStats stats;
    std::vector<LengthSample> samples;
    for (const auto& root : roots) {
        const std::string method = fs::path(root).lexically_normal().filename().empty()
                                       ? fs::path(root).lexically_normal().parent_path().filename().string()
                                       : fs::path(root).lexically_normal().filename().string();
        for (const auto& id : story_dirs(root)) {
            const fs::path dir = root / id;
            const CheckpointStore store(dir);
            const StageState state = StageState::load(store, id);
            ++stats.attempted[Stage::Stage1_Planning];
            if (state.done(PipelineStage::Planning)) ++stats.attempted[Stage::Stage2_Expansion];
            if (state.done(PipelineStage::Expansion)) ++stats.attempted[Stage::Stage3_Screenplay];
            if (auto failure = store.try_read(kFailure)) {
                const auto j = json::parse(*failure);
                if (auto stage = parse_stage(j.at("stage").get<std::string>())) {
                    ++stats.failed[*stage];
                }
            }
            if (auto text = store.try_read(kScreenplay)) {
                samples.push_back({method, read_storyline(dir).genre, word_count(*text)});
            }
        }
    }
    for (const auto& [stage, n] : stats.attempted) {
        stats.failure_rate[stage] = failure_rate(stats.failed[stage], n);
    }
    stats.lengths = length_stats(samples);
    return stats;
}

std::string format_run_stats(const RunStats& stats) {
    std::ostringstream out;
    out << "stage,attempted,failed,failure_rate\n";
    for (const auto& [stage, n] : stats.attempted) {
        const auto failed = stats.failed.count(stage) ? stats.failed.at(stage) : 0;
        std::ostringstream rate;
        rate << std::fixed << std::setprecision(1) << stats.failure_rate.at(stage);
        out << to_string(stage) << ',' << n << ',' << failed << ',' << rate.str() << '\n';
    }
    out << '\n' << format_length_table(stats.lengths);
    return out.str();
}

} // namespace screenwright
