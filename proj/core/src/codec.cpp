#include "screenwright/codec.hpp"

#include "screenwright/error.hpp"

#include <map>

namespace screenwright {

namespace schema {

namespace {

bool is_plot_tag(std::string_view name) {
    return name.substr(0, 5) == "plot_" && PlotLabel::try_parse(name).has_value();
}

TagSpec performance_spec(std::size_t min_count, std::size_t max_count) {
    return TagSpec::container("detailed_performance",
                              {TagSpec::leaf("character"), TagSpec::leaf("action", 0, 1),
                               TagSpec::leaf("parenthetical", 0, 1),
                               TagSpec::leaf("dialogue", 0, 1)},
                              min_count, max_count);
}

} // namespace

const TagSchema& characters() {
    static const TagSchema s{{TagSpec::container(
        "characters", {TagSpec::indexed("character_", {TagSpec::leaf("full_name"),
                                                       TagSpec::leaf("character_introduction")},
                                        1, kUnbounded)})}};
    return s;
}

const TagSchema& outline() {
    static const TagSchema s = [] {
        TagSpec plot{"plot_N", is_plot_tag, 1, kUnbounded, {}};
        return TagSchema{{TagSpec::container("outline", {plot})}};
    }();
    return s;
}

const TagSchema& advice() {
    static const TagSchema s{{TagSpec::leaf("advice")}};
    return s;
}

const TagSchema& chapter() {
    static const TagSchema s{{TagSpec::leaf("chapter")}};
    return s;
}

const TagSchema& script_draft() {
    static const TagSchema s{{TagSpec::container(
        "script_draft",
        {TagSpec::leaf("scene_heading", 0, 1),
         TagSpec::container("character_performance",
                            {TagSpec::leaf("character"), TagSpec::leaf("performance")}, 1,
                            kUnbounded)})}};
    return s;
}

const TagSchema& detailed_performance() {
    static const TagSchema s{{performance_spec(1, 1)}};
    return s;
}

const TagSchema& episode() {
    static const TagSchema s{{TagSpec::container(
        "episode", {TagSpec::leaf("scene_heading", 0, 1), performance_spec(1, kUnbounded)})}};
    return s;
}

const TagSchema& verdict() {
    static const TagSchema s{{TagSpec::leaf("explanation"), TagSpec::leaf("verdict")}};
    return s;
}

const TagSchema& storyline() {
    static const TagSchema s{{TagSpec::leaf("storyline")}};
    return s;
}

} // namespace schema

namespace {

TagNode leaf(std::string name, std::string text) {
    return TagNode{std::move(name), std::move(text), {}};
}

const TagNode& expect_root(const TagDocument& doc, std::string_view name) {
    for (const auto& r : doc.roots) {
        if (r.name == name) {
            return r;
        }
    }
    throw Error(ErrorCode::MissingTag, "expected <" + std::string(name) + ">");
}

std::size_t rfind_marker(std::string_view body, std::string_view marker) {
    return body.rfind(marker);
}

// The renderer adds exactly one closing dot.
std::string strip_trailing_dot(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.back() == '.') {
        s.remove_suffix(1);
    }
    return std::string(trim(s));
}

void check_names(const std::vector<std::string>& names, const PlotLabel& label,
                 const OutlineOptions& options) {
    if (!options.cast) {
        return;
    }
    for (const auto& name : names) {
        if (options.cast->contains(name)) {
            continue;
        }
        const std::string msg = label.str() + " names unknown character '" + name + "'";
        if (!options.lenient) {
            throw Error(ErrorCode::UnknownCharacterName, msg);
        }
        if (options.warnings) {
            options.warnings->push_back(msg);
        }
    }
}

} // namespace

// Characters ----------------------------------------------------------------

CharacterSet extract_characters(const TagDocument& doc, std::size_t min_size,
                                std::size_t max_size) {
    const TagNode& root = expect_root(doc, "characters");
    std::vector<Character> out;
    for (const auto& node : root.children) {
        out.push_back(Character{node.child_text("full_name"),
                                node.child_text("character_introduction")});
    }
    return CharacterSet(std::move(out), min_size, max_size);
}

TagDocument characters_document(const std::vector<Character>& characters) {
    TagNode root{"characters", {}, {}};
    for (std::size_t i = 0; i < characters.size(); ++i) {
        TagNode c{"character_" + std::to_string(i + 1), {}, {}};
        c.children.push_back(leaf("full_name", characters[i].full_name));
        c.children.push_back(leaf("character_introduction", characters[i].introduction));
        root.children.push_back(std::move(c));
    }
    return TagDocument{{std::move(root)}};
}

TagDocument characters_document(const CharacterSet& characters) {
    return characters_document(characters.characters());
}

std::string render_character_blocks(const std::vector<Character>& characters) {
    const TagDocument doc = characters_document(characters);
    std::string out;
    for (const auto& child : doc.root().children) {
        if (!out.empty()) {
            out += '\n';
        }
        out += render(child);
    }
    return out;
}

// Outline -------------------------------------------------------------------

PlotBody split_plot_body(std::string_view body) {
    constexpr std::string_view kScene = "Scene:";
    constexpr std::string_view kCharacters = "Characters:";
    const std::size_t scene_at = rfind_marker(body, kScene);
    const std::size_t chars_at = rfind_marker(body, kCharacters);
    constexpr auto npos = std::string_view::npos;

    PlotBody out;
    const std::size_t text_end = std::min(scene_at, chars_at);
    out.plot_text = std::string(trim(body.substr(0, text_end == npos ? body.size() : text_end)));

    if (scene_at != npos) {
        const std::size_t from = scene_at + kScene.size();
        const std::size_t to = (chars_at != npos && chars_at > scene_at) ? chars_at : body.size();
        out.scene = strip_trailing_dot(body.substr(from, to - from));
    }
    if (chars_at != npos) {
        const std::size_t from = chars_at + kCharacters.size();
        const std::size_t to = (scene_at != npos && scene_at > chars_at) ? scene_at : body.size();
        const std::string list = strip_trailing_dot(body.substr(from, to - from));
        std::string_view rest = list;
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            const std::string_view name = trim(rest.substr(0, comma));
            if (!name.empty()) {
                out.characters.emplace_back(name);
            }
            if (comma == npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
    }
    return out;
}

std::string join_plot_body(const PlotBody& body) {
    std::string out = body.plot_text;
    out += "\nScene:";
    if (!body.scene.empty()) {
        out += " " + body.scene + ".";
    }
    out += " Characters:";
    for (std::size_t i = 0; i < body.characters.size(); ++i) {
        out += (i == 0 ? " " : ", ") + body.characters[i];
    }
    return out;
}

Outline extract_outline(const TagDocument& doc, const OutlineOptions& options) {
    const TagNode& root = expect_root(doc, "outline");
    std::vector<TopPlot> tops;
    std::map<PlotLabel, bool> seen;
    for (const auto& node : root.children) {
        const PlotLabel label = PlotLabel::parse(node.name);
        if (seen.count(label)) {
            throw Error(ErrorCode::InvalidLabel, "duplicate label " + label.str());
        }
        seen[label] = true;
        PlotBody body = split_plot_body(node.text);
        check_names(body.characters, label, options);
        if (!label.is_subplot()) {
            if (label.top_index() != static_cast<int>(tops.size()) + 1) {
                throw Error(ErrorCode::LabelGap, "expected plot_" + std::to_string(tops.size() + 1) +
                                                     ", found " + label.str());
            }
            tops.push_back(TopPlot{label, std::move(body.plot_text), std::move(body.scene),
                                   std::move(body.characters), {}});
            continue;
        }
        if (tops.empty() || tops.back().label.top_index() != label.top_index()) {
            throw Error(ErrorCode::OrphanSubplot,
                        label.str() + " does not follow " + label.parent().str());
        }
        TopPlot& parent = tops.back();
        if (label.sub_index() != static_cast<int>(parent.subplots.size())) {
            throw Error(ErrorCode::LabelGap,
                        "expected " +
                            PlotLabel::sub(label.top_index(),
                                           static_cast<int>(parent.subplots.size()))
                                .str() +
                            ", found " + label.str());
        }
        parent.subplots.push_back(Subplot{label, std::move(body.plot_text), std::move(body.scene),
                                          std::move(body.characters)});
    }
    for (const auto& tp : tops) {
        if (tp.subplots.empty()) {
            throw Error(ErrorCode::EmptyTopPlot, tp.label.str() + " has no subplots");
        }
    }
    return Outline(std::move(tops));
}

TagDocument outline_document(const Outline& outline) {
    TagNode root{"outline", {}, {}};
    for (const auto& tp : outline.top_plots()) {
        root.children.push_back(
            leaf(tp.label.str(), join_plot_body({tp.plot_text, tp.scene, tp.involved_characters})));
        for (const auto& sp : tp.subplots) {
            root.children.push_back(leaf(
                sp.label.str(), join_plot_body({sp.plot_text, sp.scene, sp.involved_characters})));
        }
    }
    return TagDocument{{std::move(root)}};
}

std::string render_plot_blocks(const Outline& outline) {
    const TagDocument doc = outline_document(outline);
    std::string out;
    for (const auto& child : doc.root().children) {
        if (!out.empty()) {
            out += '\n';
        }
        out += render(child);
    }
    return out;
}

// Advice / chapter / storyline ----------------------------------------------

Advice extract_advice(const TagDocument& doc) {
    return Advice::from_body(expect_root(doc, "advice").text);
}

TagDocument advice_document(const Advice& advice) {
    return TagDocument{{leaf("advice", advice.body())}};
}

Chapter extract_chapter(const TagDocument& doc, const PlotLabel& label) {
    Chapter chapter{label, expect_root(doc, "chapter").text};
    chapter.validate();
    return chapter;
}

TagDocument chapter_document(const Chapter& chapter) {
    return TagDocument{{leaf("chapter", chapter.text)}};
}

std::string extract_storyline_text(const TagDocument& doc) {
    return expect_root(doc, "storyline").text;
}

// Script drafts and performances ---------------------------------------------

ScriptDraft extract_script_draft(const TagDocument& doc, const PlotLabel& label) {
    const TagNode& root = expect_root(doc, "script_draft");
    if (root.children.empty() || root.children.front().name != "scene_heading") {
        throw Error(ErrorCode::MissingSceneHeading,
                    "script draft must open with exactly one <scene_heading>");
    }
    ScriptDraft draft;
    draft.subplot_label = label;
    draft.scene_heading = parse_scene_heading(root.children.front().text);
    for (const auto* node : root.children_named("character_performance")) {
        draft.events.push_back(
            DraftEvent{node->child_text("character"), node->child_text("performance")});
    }
    draft.validate();
    return draft;
}

TagDocument script_draft_document(const ScriptDraft& draft) {
    TagNode root{"script_draft", {}, {}};
    root.children.push_back(leaf("scene_heading", draft.scene_heading.str()));
    for (const auto& event : draft.events) {
        TagNode ev{"character_performance", {}, {}};
        ev.children.push_back(leaf("character", event.character));
        ev.children.push_back(leaf("performance", event.performance_guide));
        root.children.push_back(std::move(ev));
    }
    return TagDocument{{std::move(root)}};
}

DetailedPerformance extract_performance(const TagNode& node) {
    return DetailedPerformance(node.child_text("character"), node.child_text("action"),
                               node.child_text("parenthetical"), node.child_text("dialogue"));
}

TagNode performance_node(const DetailedPerformance& performance) {
    TagNode node{"detailed_performance", {}, {}};
    node.children.push_back(leaf("character", performance.character()));
    node.children.push_back(leaf("action", performance.action()));
    node.children.push_back(leaf("parenthetical", performance.parenthetical()));
    node.children.push_back(leaf("dialogue", performance.dialogue()));
    return node;
}

Episode extract_episode(const TagDocument& doc, const PlotLabel& label,
                        const SceneHeading* fallback_heading) {
    const TagNode& root = expect_root(doc, "episode");
    Episode episode;
    episode.subplot_label = label;
    if (const TagNode* heading = root.child("scene_heading")) {
        episode.scene_heading = parse_scene_heading(heading->text);
    } else if (fallback_heading) {
        episode.scene_heading = *fallback_heading;
    } else {
        throw Error(ErrorCode::MissingSceneHeading, "episode has no <scene_heading>");
    }
    for (const auto* node : root.children_named("detailed_performance")) {
        episode.performances.push_back(extract_performance(*node));
    }
    episode.validate();
    return episode;
}

TagDocument episode_document(const Episode& episode) {
    TagNode root{"episode", {}, {}};
    root.children.push_back(leaf("scene_heading", episode.scene_heading.str()));
    for (const auto& p : episode.performances) {
        root.children.push_back(performance_node(p));
    }
    return TagDocument{{std::move(root)}};
}

} // namespace screenwright
