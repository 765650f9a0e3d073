#include "screenwright/eval.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/prompts.hpp"
#include "screenwright/script_text.hpp"
#include "screenwright/synthetic_backend.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace screenwright {

namespace {

constexpr std::array<Dimension, 4> kDimensions = {Dimension::Coherence, Dimension::Relevance,
                                                  Dimension::Interestingness, Dimension::Overall};
constexpr std::array<std::string_view, 4> kDimensionNames = {"Coherence", "Relevance",
                                                             "Interestingness", "Overall"};
constexpr std::array<std::string_view, 4> kFocus = {
    "Evaluate the coherence from plot structure, character description, scene transitions and "
    "setup consistency.",
    "Evaluate the relevance from the relationship between top-level plots and final screenplays.",
    "Evaluate the interestingness from the originality of the screenplay, the unexpectedness of "
    "plots, the depth of the characters, and the vividness of the dialog.",
    "Synthesize the coherence, relevance, and interestingness of a screenplay to assess the "
    "overall quality."};

std::size_t index(Dimension d) {
    return static_cast<std::size_t>(d);
}

} // namespace

const std::array<Dimension, 4>& all_dimensions() {
    return kDimensions;
}

std::string_view to_string(Dimension d) {
    return kDimensionNames[index(d)];
}

std::optional<Dimension> parse_dimension(std::string_view text) {
    for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
        if (kDimensionNames[i] == text) {
            return kDimensions[i];
        }
    }
    return std::nullopt;
}

std::string_view focus_text(Dimension d) {
    return kFocus[index(d)];
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::A: return "A";
    case Verdict::B: return "B";
    case Verdict::TIE: return "TIE";
    }
    return "TIE";
}

std::optional<Verdict> parse_verdict(std::string_view body) {
    if (body == "A") return Verdict::A;
    if (body == "B") return Verdict::B;
    if (body == "TIE") return Verdict::TIE;
    return std::nullopt;
}

std::string_view to_string(PresentedOrder order) {
    return order == PresentedOrder::XY ? "XY" : "YX";
}

std::string_view to_string(CanonicalVerdict v) {
    switch (v) {
    case CanonicalVerdict::MethodX: return "MethodX";
    case CanonicalVerdict::MethodY: return "MethodY";
    case CanonicalVerdict::Tie: return "TIE";
    }
    return "TIE";
}

PresentedOrder flip(PresentedOrder order) {
    return order == PresentedOrder::XY ? PresentedOrder::YX : PresentedOrder::XY;
}

Verdict flip(Verdict v) {
    if (v == Verdict::A) return Verdict::B;
    if (v == Verdict::B) return Verdict::A;
    return Verdict::TIE;
}

CanonicalVerdict canonicalize(PresentedOrder order, Verdict v) {
    if (v == Verdict::TIE) {
        return CanonicalVerdict::Tie;
    }
    const bool first = v == Verdict::A;
    const bool x_first = order == PresentedOrder::XY;
    return first == x_first ? CanonicalVerdict::MethodX : CanonicalVerdict::MethodY;
}

PresentedOrder presented_order(std::uint64_t seed, std::string_view pair_id, Dimension dimension) {
    const std::string key = std::string(pair_id) + "/" + std::string(to_string(dimension));
    std::mt19937_64 rng(seed ^ fnv1a(key));
    return (rng() >> 63) ? PresentedOrder::YX : PresentedOrder::XY;
}

// Segments ---------------------------------------------------------------------------

std::vector<Segment> segment_by_top_plot(const Screenplay& screenplay, const Outline& outline) {
    std::map<PlotLabel, const Episode*> by_label;
    for (const auto& ep : screenplay.episodes) {
        if (!outline.find_subplot(ep.subplot_label)) {
            throw Error(ErrorCode::CoverageGap, "episode " + ep.subplot_label.str() +
                                                    " has no subplot in the outline");
        }
        by_label[ep.subplot_label] = &ep;
    }
    std::vector<Segment> out;
    for (const auto& top : outline.top_plots()) {
        Segment seg;
        seg.top_plot_label = top.label;
        for (const auto& sub : top.subplots) {
            auto it = by_label.find(sub.label);
            if (it == by_label.end()) {
                throw Error(ErrorCode::CoverageGap, "no episode for " + sub.label.str());
            }
            if (!seg.text.empty()) {
                seg.text += "\n\n";
            }
            seg.text += render_episode_text(*it->second);
            ++seg.episodes;
        }
        seg.words = word_count(seg.text);
        out.push_back(std::move(seg));
    }
    return out;
}

std::string story_summary(const Outline& outline) {
    std::string out;
    for (const auto& top : outline.top_plots()) {
        if (!out.empty()) {
            out += '\n';
        }
        out += render(TagNode{top.label.str(), top.plot_text, {}});
    }
    return out;
}

std::vector<PairSpec> form_pairs(const StoryPairInput& story, std::vector<std::string>* log) {
    const auto xs = segment_by_top_plot(story.x.screenplay, story.x.outline);
    const auto ys = segment_by_top_plot(story.y.screenplay, story.y.outline);
    std::map<PlotLabel, const Segment*> y_by_label;
    for (const auto& s : ys) {
        y_by_label[s.top_plot_label] = &s;
    }
    const SharedContext shared{story.storyline.text, render(characters_document(story.x.characters)),
                               story_summary(story.x.outline)};
    std::vector<PairSpec> out;
    std::set<PlotLabel> used;
    for (const auto& x : xs) {
        auto it = y_by_label.find(x.top_plot_label);
        if (it == y_by_label.end()) {
            if (log) {
                log->push_back(story.story_id + ": dropped X segment " + x.top_plot_label.str());
            }
            continue;
        }
        used.insert(x.top_plot_label);
        out.push_back({story.story_id + ":" + x.top_plot_label.suffix(), story.story_id, x,
                       *it->second, shared});
    }
    if (log) {
        for (const auto& y : ys) {
            if (!used.contains(y.top_plot_label)) {
                log->push_back(story.story_id + ": dropped Y segment " + y.top_plot_label.str());
            }
        }
    }
    return out;
}

// Judging ----------------------------------------------------------------------------

std::optional<PairResult> judge_pair(const JudgeEnv& env, const PairSpec& pair, Dimension dimension,
                                     std::uint64_t seed) {
    const PresentedOrder order = presented_order(seed, pair.pair_id, dimension);
    const bool x_first = order == PresentedOrder::XY;
    prompts::JudgeInput in;
    in.storyline = pair.shared.storyline;
    in.characters = pair.shared.characters;
    in.story_summary = pair.shared.story_summary;
    in.focus = std::string(focus_text(dimension));
    in.screenplay_a = x_first ? pair.x.text : pair.y.text;
    in.screenplay_b = x_first ? pair.y.text : pair.x.text;
    const auto prompt = prompts::judge(in);
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.judge};

    struct Parsed {
        Verdict verdict;
        std::string explanation;
    };
    try {
        auto got = env.gateway->complete_as<Parsed>(
            req, schema::verdict(), {Stage::Eval, pair.story_id},
            [](const TagDocument& doc) {
                const TagNode* verdict = nullptr;
                const TagNode* explanation = nullptr;
                for (const auto& root : doc.roots) {
                    if (root.name == "verdict") verdict = &root;
                    if (root.name == "explanation") explanation = &root;
                }
                const auto v = verdict ? parse_verdict(verdict->text) : std::nullopt;
                if (!v) {
                    throw Error(ErrorCode::MalformedVerdict,
                                "verdict body is not A, B or TIE: '" +
                                    (verdict ? verdict->text : std::string()) + "'");
                }
                return Parsed{*v, explanation ? explanation->text : std::string()};
            },
            {ErrorCode::MalformedVerdict}, 1);
        PairResult r;
        r.pair_id = pair.pair_id;
        r.dimension = dimension;
        r.presented_order = order;
        r.verdict_raw = got.value.verdict;
        r.verdict_canonical = canonicalize(order, got.value.verdict);
        r.explanation = std::move(got.value.explanation);
        r.judge_model = env.judge.model_id;
        return r;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::StructuredOutputFailure) {
            throw;
        }
        env.gateway->failures()->record_stage_failure(
            {Stage::Eval, pair.pair_id + "/" + std::string(to_string(dimension)),
             std::string(to_string(e.cause()))});
        return std::nullopt;
    }
}

// Statistics -------------------------------------------------------------------------

double percent_one_decimal(std::size_t count, std::size_t n) {
    if (n == 0) {
        return 0.0;
    }
    const std::uint64_t tenths = (2000ULL * count + n) / (2ULL * n);
    return static_cast<double>(tenths) / 10.0;
}

double sign_test_p_value(std::size_t x_wins, std::size_t y_wins) {
    const std::size_t n = x_wins + y_wins;
    if (n == 0) {
        return 1.0;
    }
    const std::size_t k = std::min(x_wins, y_wins);
    const double nn = static_cast<double>(n);
    const double ln2 = std::log(2.0);
    // log of C(n, i) / 2^n, summed with log-sum-exp.
    std::vector<double> logs;
    logs.reserve(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
        const double ii = static_cast<double>(i);
        logs.push_back(std::lgamma(nn + 1) - std::lgamma(ii + 1) - std::lgamma(nn - ii + 1) - nn * ln2);
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    double sum = 0;
    for (double l : logs) {
        sum += std::exp(l - top);
    }
    const double p = 2.0 * std::exp(top + std::log(sum));
    return std::min(1.0, p);
}

WinRateRow row_from_counts(Dimension dimension, std::size_t x_wins, std::size_t y_wins,
                           std::size_t ties) {
    WinRateRow row;
    row.dimension = dimension;
    row.x_wins = x_wins;
    row.y_wins = y_wins;
    row.ties = ties;
    row.n_pairs = x_wins + y_wins + ties;
    row.x_pct = percent_one_decimal(x_wins, row.n_pairs);
    row.y_pct = percent_one_decimal(y_wins, row.n_pairs);
    row.tie_pct = percent_one_decimal(ties, row.n_pairs);
    row.zero_information = x_wins + y_wins == 0;
    row.p_value = sign_test_p_value(x_wins, y_wins);
    return row;
}

WinRateRow aggregate(const std::vector<PairResult>& results, Dimension dimension) {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t t = 0;
    for (const auto& r : results) {
        if (r.dimension != dimension) {
            continue;
        }
        switch (r.verdict_canonical) {
        case CanonicalVerdict::MethodX: ++x; break;
        case CanonicalVerdict::MethodY: ++y; break;
        case CanonicalVerdict::Tie: ++t; break;
        }
    }
    if (x + y + t == 0) {
        throw Error(ErrorCode::EmptyResults,
                    "no judgments for dimension " + std::string(to_string(dimension)));
    }
    return row_from_counts(dimension, x, y, t);
}

std::vector<CountTriple> reconstruct_counts(double x_pct, double y_pct, double tie_pct,
                                            std::size_t n) {
    const auto tenths = [](double pct) { return static_cast<long>(std::lround(pct * 10.0)); };
    const long tx = tenths(x_pct);
    const long ty = tenths(y_pct);
    const long tt = tenths(tie_pct);
    const auto as_tenths = [&](std::size_t c) { return tenths(percent_one_decimal(c, n)); };
    std::vector<CountTriple> out;
    for (std::size_t x = 0; x <= n; ++x) {
        if (as_tenths(x) != tx) {
            continue;
        }
        for (std::size_t y = 0; x + y <= n; ++y) {
            if (as_tenths(y) == ty && as_tenths(n - x - y) == tt) {
                out.push_back({x, y, n - x - y});
            }
        }
    }
    return out;
}

// Orchestration ----------------------------------------------------------------------

EvalReport run_evaluation(const JudgeEnv& env, const std::vector<StoryPairInput>& stories,
                          std::uint64_t seed, int jobs, const std::vector<Dimension>& dimensions) {
    const std::vector<Dimension> dims =
        dimensions.empty() ? std::vector<Dimension>(kDimensions.begin(), kDimensions.end()) : dimensions;
    EvalReport report;
    std::vector<PairSpec> pairs;
    for (const auto& story : stories) {
        auto p = form_pairs(story, &report.log);
        pairs.insert(pairs.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    report.pairs = pairs.size();

    const std::size_t total = pairs.size() * dims.size();
    std::vector<std::optional<PairResult>> slots(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                slots[i] = judge_pair(env, pairs[i / dims.size()], dims[i % dims.size()], seed);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    const auto n_threads = static_cast<std::size_t>(std::max(1, jobs));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    for (std::size_t i = 0; i < total; ++i) {
        if (slots[i]) {
            report.results.push_back(std::move(*slots[i]));
        } else {
            ++report.judge_failures;
            report.log.push_back("judge failure excluded: " + pairs[i / dims.size()].pair_id + "/" +
                                 std::string(to_string(dims[i % dims.size()])));
        }
    }
    for (Dimension d : dims) {
        const bool any = std::any_of(report.results.begin(), report.results.end(),
                                     [&](const PairResult& r) { return r.dimension == d; });
        if (any) {
            report.rows.push_back(aggregate(report.results, d));
        }
    }
    return report;
}

std::string results_ndjson(const std::vector<PairResult>& results) {
    std::string out;
    for (const auto& r : results) {
        nlohmann::json j = {{"pair_id", r.pair_id},
                            {"dimension", to_string(r.dimension)},
                            {"order", to_string(r.presented_order)},
                            {"verdict_raw", to_string(r.verdict_raw)},
                            {"verdict_canonical", to_string(r.verdict_canonical)},
                            {"explanation", r.explanation},
                            {"judge_model", r.judge_model}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

namespace {

std::string fixed1(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(1) << v;
    return ss.str();
}

std::string sci(double v) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(3) << v;
    return ss.str();
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

} // namespace

std::string rows_csv(const std::vector<WinRateRow>& rows) {
    std::ostringstream out;
    out << "dimension,n_pairs,x_wins,y_wins,ties,x_pct,y_pct,tie_pct,p_value,significant\n";
    for (const auto& r : rows) {
        out << to_string(r.dimension) << ',' << r.n_pairs << ',' << r.x_wins << ',' << r.y_wins
            << ',' << r.ties << ',' << fixed1(r.x_pct) << ',' << fixed1(r.y_pct) << ','
            << fixed1(r.tie_pct) << ',' << sci(r.p_value) << ',' << (r.significant() ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string format_table(const std::vector<WinRateRow>& rows, std::string_view x_name,
                         std::string_view y_name) {
    constexpr std::size_t kLabel = 24;
    constexpr std::size_t kCell = 17;
    const auto label = [&](std::string s) {
        s.resize(std::max(s.size(), kLabel), ' ');
        return s;
    };
    std::ostringstream out;
    out << label("");
    for (const auto& r : rows) {
        out << pad(std::string(to_string(r.dimension)), kCell);
    }
    out << '\n';
    const auto line = [&](std::string name, auto pick, auto mark) {
        out << label(std::move(name));
        for (const auto& r : rows) {
            std::string cell = fixed1(pick(r));
            if (mark(r)) {
                cell += '*';
            }
            out << pad(cell, kCell);
        }
        out << '\n';
    };
    line(std::string(x_name) + " Wins", [](const WinRateRow& r) { return r.x_pct; },
         [](const WinRateRow& r) { return r.significant() && r.x_wins > r.y_wins; });
    line(std::string(y_name) + " Wins", [](const WinRateRow& r) { return r.y_pct; },
         [](const WinRateRow& r) { return r.significant() && r.y_wins > r.x_wins; });
    line("Ties", [](const WinRateRow& r) { return r.tie_pct; },
         [](const WinRateRow&) { return false; });
    out << label("n");
    for (const auto& r : rows) {
        out << pad(std::to_string(r.n_pairs), kCell);
    }
    out << '\n' << label("p");
    for (const auto& r : rows) {
        out << pad(r.zero_information ? std::string("1 (no info)") : sci(r.p_value), kCell);
    }
    out << "\n* p < 0.05, two-sided exact sign test with ties excluded (assumed test)\n";
    return out.str();
}

// Lengths ------------------------------------------------------------------------------

LengthTable length_stats(const std::vector<LengthSample>& samples) {
    LengthTable table;
    std::map<std::string, std::map<Genre, std::pair<double, std::size_t>>> cells;
    std::map<std::string, std::pair<double, std::size_t>> methods;
    double total = 0;
    for (const auto& s : samples) {
        auto& c = cells[s.method][s.genre];
        c.first += static_cast<double>(s.words);
        ++c.second;
        auto& m = methods[s.method];
        m.first += static_cast<double>(s.words);
        ++m.second;
        total += static_cast<double>(s.words);
    }
    for (const auto& [method, genres] : cells) {
        for (const auto& [genre, c] : genres) {
            table.by_method_genre[method][genre] = c.first / static_cast<double>(c.second);
        }
    }
    for (const auto& [method, m] : methods) {
        table.by_method[method] = m.first / static_cast<double>(m.second);
    }
    table.samples = samples.size();
    table.overall = samples.empty() ? 0.0 : total / static_cast<double>(samples.size());
    return table;
}

std::string format_length_table(const LengthTable& table) {
    std::ostringstream out;
    out << "method,genre,avg_words\n";
    for (const auto& [method, genres] : table.by_method_genre) {
        for (const auto& [genre, avg] : genres) {
            out << method << ',' << genre_slug(genre) << ',' << fixed1(avg) << '\n';
        }
        out << method << ",all," << fixed1(table.by_method.at(method)) << '\n';
    }
    out << "all,all," << fixed1(table.overall) << '\n';
    return out.str();
}

// Failure rates ------------------------------------------------------------------------

double failure_rate(std::size_t failures, std::size_t attempts) {
    if (failures > attempts) {
        throw Error(ErrorCode::InvalidValue, "more failures than attempts");
    }
    return percent_one_decimal(failures, attempts);
}

std::map<Stage, double> failure_rates(const FailureLog& log,
                                      const std::map<Stage, std::size_t>& attempted) {
    std::map<Stage, double> out;
    for (const auto& [stage, attempts] : attempted) {
        out[stage] = failure_rate(log.failed_stories(stage), attempts);
    }
    return out;
}

} // namespace screenwright
