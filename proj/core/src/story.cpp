#include "screenwright/story.hpp"

#include "screenwright/error.hpp"
#include "screenwright/tags.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace screenwright {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

const std::array<Genre, 6>& all_genres() {
    static const std::array<Genre, 6> genres = {Genre::Romance, Genre::ScienceFiction,
                                                Genre::Horror,  Genre::Drama,
                                                Genre::Crime,   Genre::Comedy};
    return genres;
}

std::string_view to_string(Genre genre) {
    switch (genre) {
    case Genre::Romance: return "Romance";
    case Genre::ScienceFiction: return "Science Fiction";
    case Genre::Horror: return "Horror";
    case Genre::Drama: return "Drama";
    case Genre::Crime: return "Crime";
    case Genre::Comedy: return "Comedy";
    }
    return "Drama";
}

std::string_view genre_slug(Genre genre) {
    switch (genre) {
    case Genre::Romance: return "romance";
    case Genre::ScienceFiction: return "science_fiction";
    case Genre::Horror: return "horror";
    case Genre::Drama: return "drama";
    case Genre::Crime: return "crime";
    case Genre::Comedy: return "comedy";
    }
    return "drama";
}

std::optional<Genre> parse_genre(std::string_view text) {
    const std::string key = lower(trim(text));
    for (Genre g : all_genres()) {
        if (key == lower(to_string(g)) || key == genre_slug(g)) {
            return g;
        }
    }
    if (key == "sci-fi" || key == "scifi") {
        return Genre::ScienceFiction;
    }
    return std::nullopt;
}

std::size_t word_count(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        if (is_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

void Storyline::validate() const {
    if (trim(text).empty()) {
        throw Error(ErrorCode::InvalidValue, "storyline text is empty");
    }
}

bool Storyline::within_soft_bounds() const {
    const std::size_t words = word_count(text);
    return words >= kSoftMinWords && words <= kSoftMaxWords;
}

void Character::validate() const {
    if (trim(full_name).empty()) {
        throw Error(ErrorCode::InvalidValue, "character full name is empty");
    }
    if (full_name.find_first_of("<>") != std::string::npos) {
        throw Error(ErrorCode::InvalidValue, "character name contains '<' or '>': " + full_name);
    }
    if (trim(introduction).empty()) {
        throw Error(ErrorCode::InvalidValue, "character introduction is empty: " + full_name);
    }
}

CharacterSet::CharacterSet(std::vector<Character> characters, std::size_t min_size,
                           std::size_t max_size)
    : characters_(std::move(characters)) {
    if (characters_.size() < min_size || characters_.size() > max_size) {
        throw Error(ErrorCode::CardinalityOutOfRange,
                    std::to_string(characters_.size()) + " characters, expected " +
                        std::to_string(min_size) + ".." + std::to_string(max_size));
    }
    std::set<std::string_view> seen;
    for (const auto& c : characters_) {
        c.validate();
        if (!seen.insert(c.full_name).second) {
            throw Error(ErrorCode::DuplicateName, "duplicate character name: " + c.full_name);
        }
    }
}

const Character* CharacterSet::find(std::string_view full_name) const {
    for (const auto& c : characters_) {
        if (c.full_name == full_name) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<std::string> CharacterSet::names() const {
    std::vector<std::string> out;
    out.reserve(characters_.size());
    for (const auto& c : characters_) {
        out.push_back(c.full_name);
    }
    return out;
}

PlotLabel PlotLabel::top(int top_index) {
    if (top_index < 1) {
        throw Error(ErrorCode::InvalidLabel, "top index must be positive");
    }
    return PlotLabel(top_index, -1);
}

PlotLabel PlotLabel::sub(int top_index, int sub_index) {
    if (top_index < 1 || sub_index < 0) {
        throw Error(ErrorCode::InvalidLabel, "invalid subplot index");
    }
    if (sub_index >= kMaxSubplots) {
        throw Error(ErrorCode::TooManySubplots,
                    "top plot " + std::to_string(top_index) + " has more than 26 subplots");
    }
    return PlotLabel(top_index, sub_index);
}

std::optional<PlotLabel> PlotLabel::try_parse(std::string_view text) {
    if (text.substr(0, 5) == "plot_") {
        text.remove_prefix(5);
    }
    std::size_t i = 0;
    long value = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000) {
            return std::nullopt;
        }
        ++i;
    }
    if (i == 0 || value < 1 || text[0] == '0') {
        return std::nullopt;
    }
    if (i == text.size()) {
        return PlotLabel(static_cast<int>(value), -1);
    }
    if (i + 1 == text.size() && text[i] >= 'a' && text[i] <= 'z') {
        return PlotLabel(static_cast<int>(value), text[i] - 'a');
    }
    return std::nullopt;
}

PlotLabel PlotLabel::parse(std::string_view text) {
    if (auto label = try_parse(text)) {
        return *label;
    }
    throw Error(ErrorCode::InvalidLabel, "not a plot label: " + std::string(text));
}

std::optional<char> PlotLabel::sub_letter() const {
    if (sub_ < 0) {
        return std::nullopt;
    }
    return static_cast<char>('a' + sub_);
}

std::string PlotLabel::suffix() const {
    std::string out = std::to_string(top_);
    if (sub_ >= 0) {
        out += static_cast<char>('a' + sub_);
    }
    return out;
}

std::string PlotLabel::str() const {
    return "plot_" + suffix();
}

Outline::Outline(std::vector<TopPlot> top_plots) : top_plots_(std::move(top_plots)) {
    if (top_plots_.empty()) {
        throw Error(ErrorCode::MissingTag, "outline has no plots");
    }
    for (std::size_t i = 0; i < top_plots_.size(); ++i) {
        const TopPlot& tp = top_plots_[i];
        if (tp.label.is_subplot()) {
            throw Error(ErrorCode::InvalidLabel, tp.label.str() + " used as a top-level plot");
        }
        if (tp.label.top_index() != static_cast<int>(i) + 1) {
            throw Error(ErrorCode::LabelGap, "expected plot_" + std::to_string(i + 1) +
                                                 ", found " + tp.label.str());
        }
        if (tp.subplots.empty()) {
            throw Error(ErrorCode::EmptyTopPlot, tp.label.str() + " has no subplots");
        }
        for (std::size_t j = 0; j < tp.subplots.size(); ++j) {
            const PlotLabel& sl = tp.subplots[j].label;
            if (!sl.is_subplot() || sl.top_index() != tp.label.top_index()) {
                throw Error(ErrorCode::OrphanSubplot,
                            sl.str() + " listed under " + tp.label.str());
            }
            if (sl.sub_index() != static_cast<int>(j)) {
                throw Error(ErrorCode::LabelGap,
                            "expected " + PlotLabel::sub(tp.label.top_index(), static_cast<int>(j)).str() +
                                ", found " + sl.str());
            }
        }
    }
}

std::vector<const Subplot*> Outline::subplots() const {
    std::vector<const Subplot*> out;
    for (const auto& tp : top_plots_) {
        for (const auto& sp : tp.subplots) {
            out.push_back(&sp);
        }
    }
    return out;
}

std::vector<PlotLabel> Outline::subplot_labels() const {
    std::vector<PlotLabel> out;
    for (const auto* sp : subplots()) {
        out.push_back(sp->label);
    }
    return out;
}

std::size_t Outline::subplot_count() const {
    std::size_t n = 0;
    for (const auto& tp : top_plots_) {
        n += tp.subplots.size();
    }
    return n;
}

const Subplot* Outline::find_subplot(const PlotLabel& label) const {
    for (const auto* sp : subplots()) {
        if (sp->label == label) {
            return sp;
        }
    }
    return nullptr;
}

const TopPlot* Outline::find_top(int top_index) const {
    for (const auto& tp : top_plots_) {
        if (tp.label.top_index() == top_index) {
            return &tp;
        }
    }
    return nullptr;
}

std::optional<std::size_t> Outline::subplot_position(const PlotLabel& label) const {
    const auto all = subplots();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i]->label == label) {
            return i;
        }
    }
    return std::nullopt;
}

Advice Advice::from_body(std::string_view body) {
    if (body == kNoneSentinel) {
        return none();
    }
    return text(std::string(body));
}

std::string Advice::body() const {
    return content_ ? *content_ : std::string(kNoneSentinel);
}

const std::string& Advice::content() const {
    static const std::string empty;
    return content_ ? *content_ : empty;
}

void Chapter::validate() const {
    if (trim(text).empty()) {
        throw Error(ErrorCode::InvalidValue, "chapter " + subplot_label.str() + " is empty");
    }
}

std::string SceneHeading::str() const {
    std::string head;
    switch (placement) {
    case Placement::Interior: head = "INT."; break;
    case Placement::Exterior: head = "EXT."; break;
    case Placement::Other: head = placement_raw; break;
    }
    return head + "; " + location + "; " + time_of_day + ".";
}

SceneHeading parse_scene_heading(std::string_view raw) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t semi = raw.find(';', pos);
        parts.push_back(trim(raw.substr(pos, semi == std::string_view::npos ? semi : semi - pos)));
        if (semi == std::string_view::npos) {
            break;
        }
        pos = semi + 1;
    }
    if (parts.size() != 3) {
        throw Error(ErrorCode::ComponentCount,
                    "scene heading needs 3 ';'-separated components, found " +
                        std::to_string(parts.size()) + ": " + std::string(raw));
    }
    std::string_view time = parts[2];
    while (!time.empty() && time.back() == '.') {
        time.remove_suffix(1);
    }
    time = trim(time);
    if (parts[0].empty() || parts[1].empty() || time.empty()) {
        throw Error(ErrorCode::ComponentCount, "scene heading has an empty component: " +
                                                   std::string(raw));
    }
    SceneHeading heading;
    heading.placement_raw = std::string(parts[0]);
    if (parts[0] == "INT.") {
        heading.placement = Placement::Interior;
    } else if (parts[0] == "EXT.") {
        heading.placement = Placement::Exterior;
    } else {
        heading.placement = Placement::Other;
    }
    heading.location = std::string(parts[1]);
    heading.time_of_day = std::string(time);
    return heading;
}

void ScriptDraft::validate() const {
    if (events.empty()) {
        throw Error(ErrorCode::InvalidValue, "script draft " + subplot_label.str() + " has no events");
    }
}

DetailedPerformance::DetailedPerformance(std::string character, std::string action,
                                         std::string parenthetical, std::string dialogue)
    : character_(trim(character)),
      action_(trim(action)),
      parenthetical_(trim(parenthetical)),
      dialogue_(trim(dialogue)) {
    if (character_.empty()) {
        throw Error(ErrorCode::InvalidValue, "performance has no character");
    }
    if (dialogue_.empty() && !parenthetical_.empty()) {
        throw Error(ErrorCode::ConstraintViolation,
                    "parenthetical without dialogue for " + character_);
    }
    if (action_.empty() && dialogue_.empty()) {
        throw Error(ErrorCode::ConstraintViolation,
                    "performance for " + character_ + " has neither action nor dialogue");
    }
    if (!parenthetical_.empty() &&
        !(parenthetical_.front() == '(' && parenthetical_.back() == ')')) {
        parenthetical_ = "(" + parenthetical_ + ")";
    }
}

void Episode::validate() const {
    if (performances.empty()) {
        throw Error(ErrorCode::InvalidValue, "episode " + subplot_label.str() + " has no performances");
    }
}

} // namespace screenwright
