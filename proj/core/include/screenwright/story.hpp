#pragma once

// Value types for every pipeline artifact. Types with invariants validate on
// construction and throw screenwright::Error; all of them are immutable once built.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace screenwright {

enum class Genre { Romance, ScienceFiction, Horror, Drama, Crime, Comedy };

const std::array<Genre, 6>& all_genres();
std::string_view to_string(Genre genre);  // "Science Fiction"
std::string_view genre_slug(Genre genre); // "science_fiction"
// Accepts display names and slugs, case-insensitively.
std::optional<Genre> parse_genre(std::string_view text);

// Count of maximal non-whitespace runs.
std::size_t word_count(std::string_view text);

struct Storyline {
    inline static constexpr std::size_t kSoftMinWords = 50;
    inline static constexpr std::size_t kSoftMaxWords = 300;

    Genre genre = Genre::Drama;
    std::string text;

    // Throws InvalidValue on empty text.
    void validate() const;
    bool within_soft_bounds() const;
};

struct Character {
    std::string full_name;
    std::string introduction;

    void validate() const;
    bool operator==(const Character&) const = default;
};

class CharacterSet {
public:
    inline static constexpr std::size_t kMinCharacters = 3;
    inline static constexpr std::size_t kMaxCharacters = 6;

    CharacterSet() = default;
    // Throws CardinalityOutOfRange, DuplicateName or InvalidValue.
    explicit CharacterSet(std::vector<Character> characters,
                          std::size_t min_size = kMinCharacters,
                          std::size_t max_size = kMaxCharacters);

    const std::vector<Character>& characters() const noexcept { return characters_; }
    std::size_t size() const noexcept { return characters_.size(); }
    bool empty() const noexcept { return characters_.empty(); }
    const Character* find(std::string_view full_name) const;
    bool contains(std::string_view full_name) const { return find(full_name) != nullptr; }
    std::vector<std::string> names() const;

    auto begin() const { return characters_.begin(); }
    auto end() const { return characters_.end(); }

    bool operator==(const CharacterSet&) const = default;

private:
    std::vector<Character> characters_;
};

// "plot_1" for a top-level plot, "plot_1a" for a subplot.
class PlotLabel {
public:
    inline static constexpr int kMaxSubplots = 26;

    PlotLabel() = default;
    static PlotLabel top(int top_index);
    // `sub_index` is zero-based: 0 -> 'a'. Throws TooManySubplots past 'z'.
    static PlotLabel sub(int top_index, int sub_index);
    // Accepts "plot_1a" or "1a". Throws InvalidLabel.
    static PlotLabel parse(std::string_view text);
    static std::optional<PlotLabel> try_parse(std::string_view text);

    int top_index() const noexcept { return top_; }
    std::optional<char> sub_letter() const;
    int sub_index() const noexcept { return sub_; }  // -1 for top-level
    bool is_subplot() const noexcept { return sub_ >= 0; }
    PlotLabel parent() const { return top(top_); }

    std::string str() const;     // "plot_1a"
    std::string suffix() const;  // "1a"

    auto operator<=>(const PlotLabel&) const = default;

private:
    PlotLabel(int top, int sub) : top_(top), sub_(sub) {}

    int top_ = 1;
    int sub_ = -1;
};

struct Subplot {
    PlotLabel label;
    std::string plot_text;
    std::string scene;  // may be empty
    std::vector<std::string> involved_characters;

    bool operator==(const Subplot&) const = default;
};

struct TopPlot {
    PlotLabel label;
    std::string plot_text;
    std::string scene;
    std::vector<std::string> involved_characters;
    std::vector<Subplot> subplots;

    bool operator==(const TopPlot&) const = default;
};

class Outline {
public:
    Outline() = default;
    // Checks: top indices 1..k contiguous, every top plot has subplots a,b,c...
    // without gaps, labels unique. Throws LabelGap, EmptyTopPlot, InvalidLabel.
    explicit Outline(std::vector<TopPlot> top_plots);

    const std::vector<TopPlot>& top_plots() const noexcept { return top_plots_; }
    // All subplots in outline order.
    std::vector<const Subplot*> subplots() const;
    std::vector<PlotLabel> subplot_labels() const;
    std::size_t subplot_count() const;
    const Subplot* find_subplot(const PlotLabel& label) const;
    const TopPlot* find_top(int top_index) const;
    // Position of `label` in outline order, or nullopt.
    std::optional<std::size_t> subplot_position(const PlotLabel& label) const;

    bool operator==(const Outline&) const = default;

private:
    std::vector<TopPlot> top_plots_;
};

class Advice {
public:
    inline static constexpr std::string_view kNoneSentinel = "None";

    static Advice none() { return Advice(std::nullopt); }
    static Advice text(std::string content) { return Advice(std::move(content)); }
    // The exact (case-sensitive) body "None" is the sentinel; anything else is advice.
    static Advice from_body(std::string_view body);

    bool is_none() const noexcept { return !content_.has_value(); }
    // Wire body: "None" for the sentinel.
    std::string body() const;
    const std::string& content() const;

    bool operator==(const Advice&) const = default;

private:
    explicit Advice(std::optional<std::string> content) : content_(std::move(content)) {}

    std::optional<std::string> content_;
};

struct Chapter {
    PlotLabel subplot_label;
    std::string text;

    void validate() const;
    bool operator==(const Chapter&) const = default;
};

enum class Placement { Interior, Exterior, Other };

struct SceneHeading {
    Placement placement = Placement::Interior;
    std::string placement_raw;  // as written, e.g. "INT." or "INT./EXT."
    std::string location;
    std::string time_of_day;

    // "INT.; Inside Emma Taylor's room; DAY."
    std::string str() const;
    bool operator==(const SceneHeading&) const = default;
};

// Splits "INT.; location; TIME." on ';'. Throws ComponentCount.
SceneHeading parse_scene_heading(std::string_view raw);

struct DraftEvent {
    std::string character;
    std::string performance_guide;

    bool operator==(const DraftEvent&) const = default;
};

struct ScriptDraft {
    PlotLabel subplot_label;
    SceneHeading scene_heading;
    std::vector<DraftEvent> events;

    void validate() const;
    bool operator==(const ScriptDraft&) const = default;
};

// One realized event: Character / [Action] / (Parenthetical) / Dialogue.
class DetailedPerformance {
public:
    DetailedPerformance() = default;
    // A non-empty parenthetical is normalized to be wrapped in parentheses.
    // Throws ConstraintViolation when dialogue is empty but the parenthetical is
    // not, or when both action and dialogue are empty.
    DetailedPerformance(std::string character, std::string action, std::string parenthetical,
                        std::string dialogue);

    const std::string& character() const noexcept { return character_; }
    const std::string& action() const noexcept { return action_; }
    const std::string& parenthetical() const noexcept { return parenthetical_; }
    const std::string& dialogue() const noexcept { return dialogue_; }

    bool operator==(const DetailedPerformance&) const = default;

private:
    std::string character_;
    std::string action_;
    std::string parenthetical_;
    std::string dialogue_;
};

struct Episode {
    PlotLabel subplot_label;
    SceneHeading scene_heading;
    std::vector<DetailedPerformance> performances;

    void validate() const;
    bool operator==(const Episode&) const = default;
};

struct Screenplay {
    std::vector<Episode> episodes;

    bool operator==(const Screenplay&) const = default;
};

} // namespace screenwright
