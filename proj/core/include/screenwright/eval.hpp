#pragma once

// Pairwise judging: screenplays are cut into one segment per top-level plot,
// segments with the same label form a pair, and each pair is judged once per
// dimension with a seeded presentation order. Verdicts are mapped back to the
// methods before aggregation.

#include "screenwright/gateway.hpp"
#include "screenwright/story.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace screenwright {

enum class Dimension { Coherence, Relevance, Interestingness, Overall };
const std::array<Dimension, 4>& all_dimensions();
std::string_view to_string(Dimension dimension);
std::optional<Dimension> parse_dimension(std::string_view text);
// Judge focus description for the dimension.
std::string_view focus_text(Dimension dimension);

enum class Verdict { A, B, TIE };
std::string_view to_string(Verdict verdict);
// Exact bodies "A", "B", "TIE" only.
std::optional<Verdict> parse_verdict(std::string_view body);

enum class PresentedOrder { XY, YX };
enum class CanonicalVerdict { MethodX, MethodY, Tie };
std::string_view to_string(PresentedOrder order);
std::string_view to_string(CanonicalVerdict verdict);

PresentedOrder flip(PresentedOrder order);
Verdict flip(Verdict verdict);
CanonicalVerdict canonicalize(PresentedOrder order, Verdict verdict);

// Seeded coin flip per (pair, dimension).
PresentedOrder presented_order(std::uint64_t seed, std::string_view pair_id, Dimension dimension);

struct Segment {
    PlotLabel top_plot_label;
    std::string text;
    std::size_t episodes = 0;
    std::size_t words = 0;
};

// One segment per top plot: its episodes' rendered text joined by blank lines.
// Throws CoverageGap when an outline subplot has no episode or an episode
// belongs to no subplot.
std::vector<Segment> segment_by_top_plot(const Screenplay& screenplay, const Outline& outline);

// Top-plot texts, one tag per line.
std::string story_summary(const Outline& outline);

struct SharedContext {
    std::string storyline;
    std::string characters;
    std::string story_summary;
};

struct MethodRun {
    CharacterSet characters;
    Outline outline;
    Screenplay screenplay;
};

struct StoryPairInput {
    std::string story_id;
    Storyline storyline;
    MethodRun x;
    MethodRun y;
};

struct PairSpec {
    std::string pair_id;  // "<story_id>:<top index>"
    std::string story_id;
    Segment x;
    Segment y;
    SharedContext shared;
};

// Aligns segments by top-plot label; unmatched segments are dropped and
// described in `log`. The shared context comes from method X.
std::vector<PairSpec> form_pairs(const StoryPairInput& story, std::vector<std::string>* log = nullptr);

struct PairResult {
    std::string pair_id;
    Dimension dimension = Dimension::Coherence;
    PresentedOrder presented_order = PresentedOrder::XY;
    Verdict verdict_raw = Verdict::TIE;
    CanonicalVerdict verdict_canonical = CanonicalVerdict::Tie;
    std::string explanation;
    std::string judge_model;
};

struct JudgeEnv {
    Gateway* gateway = nullptr;
    GenParams judge;
};

// Malformed verdicts get one retry; after that the judgment is excluded and
// nullopt is returned.
std::optional<PairResult> judge_pair(const JudgeEnv& env, const PairSpec& pair, Dimension dimension,
                                     std::uint64_t seed);

struct WinRateRow {
    Dimension dimension = Dimension::Coherence;
    std::size_t x_wins = 0;
    std::size_t y_wins = 0;
    std::size_t ties = 0;
    std::size_t n_pairs = 0;
    double x_pct = 0;
    double y_pct = 0;
    double tie_pct = 0;
    double p_value = 1.0;
    bool zero_information = false;  // no decisive judgments

    bool significant(double alpha = 0.05) const { return !zero_information && p_value < alpha; }
};

// 100 * count / n rounded half-up to one decimal.
double percent_one_decimal(std::size_t count, std::size_t n);

// Two-sided exact binomial sign test, H0 p = 0.5, ties already excluded:
// min(1, 2 * P(X <= min(x, y))) with X ~ Bin(x + y, 1/2). 1.0 when x + y == 0.
double sign_test_p_value(std::size_t x_wins, std::size_t y_wins);

WinRateRow row_from_counts(Dimension dimension, std::size_t x_wins, std::size_t y_wins,
                           std::size_t ties);
// Throws EmptyResults when no result carries `dimension`.
WinRateRow aggregate(const std::vector<PairResult>& results, Dimension dimension);

struct CountTriple {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t ties = 0;

    bool operator==(const CountTriple&) const = default;
};

// Every (x, y, ties) with x + y + ties == n whose one-decimal percentages
// equal the given ones.
std::vector<CountTriple> reconstruct_counts(double x_pct, double y_pct, double tie_pct,
                                            std::size_t n);

struct EvalReport {
    std::vector<PairResult> results;
    std::vector<WinRateRow> rows;  // one per dimension judged
    std::vector<std::string> log;
    std::size_t pairs = 0;
    std::size_t judge_failures = 0;
};

// Judges every pair on every dimension with up to `jobs` concurrent calls.
// Results keep (pair, dimension) order regardless of `jobs`.
EvalReport run_evaluation(const JudgeEnv& env, const std::vector<StoryPairInput>& stories,
                          std::uint64_t seed, int jobs = 1,
                          const std::vector<Dimension>& dimensions = {});

std::string results_ndjson(const std::vector<PairResult>& results);
std::string rows_csv(const std::vector<WinRateRow>& rows);
// Table-shaped text: X wins / Y wins / ties per dimension, '*' marks p < 0.05.
std::string format_table(const std::vector<WinRateRow>& rows, std::string_view x_name,
                         std::string_view y_name);

// Length statistics ----------------------------------------------------------------

struct LengthSample {
    std::string method;
    Genre genre = Genre::Drama;
    std::size_t words = 0;
};

struct LengthTable {
    std::map<std::string, std::map<Genre, double>> by_method_genre;
    std::map<std::string, double> by_method;
    double overall = 0;
    std::size_t samples = 0;
};

LengthTable length_stats(const std::vector<LengthSample>& samples);
std::string format_length_table(const LengthTable& table);

// Failure rates --------------------------------------------------------------------

// 100 * failures / attempts, one decimal. Throws InvalidValue if failures > attempts.
double failure_rate(std::size_t failures, std::size_t attempts);
// Per stage: distinct stories whose stage failed over stories attempted.
std::map<Stage, double> failure_rates(const FailureLog& log,
                                      const std::map<Stage, std::size_t>& attempted);

} // namespace screenwright
