#include "screenwright/script_text.hpp"

#include "screenwright/error.hpp"
#include "screenwright/tags.hpp"

#include <algorithm>

namespace screenwright {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

bool wrapped(std::string_view line, char open, char close) {
    return line.size() >= 2 && line.front() == open && line.back() == close;
}

} // namespace

std::string render_performance_text(const DetailedPerformance& performance) {
    std::string out = performance.character() + ":";
    if (!performance.action().empty()) {
        out += "\n[" + performance.action() + "]";
    }
    if (!performance.parenthetical().empty()) {
        out += "\n" + performance.parenthetical();
    }
    if (!performance.dialogue().empty()) {
        out += "\n" + performance.dialogue();
    }
    return out;
}

std::string render_episode_text(const Episode& episode) {
    std::string out = episode.scene_heading.str();
    for (const auto& p : episode.performances) {
        out += '\n';
        out += render_performance_text(p);
    }
    return out;
}

std::string render_screenplay(const Screenplay& screenplay) {
    std::string out;
    for (std::size_t i = 0; i < screenplay.episodes.size(); ++i) {
        if (i > 0) {
            out += "\n\n";
        }
        out += render_episode_text(screenplay.episodes[i]);
    }
    out += '\n';
    return out;
}

Screenplay parse_screenplay(std::string_view text, const std::vector<std::string>& cast_names,
                            const std::vector<PlotLabel>& labels) {
    if (!text.empty() && text.back() == '\n') {
        text.remove_suffix(1);
    }
    auto is_name_line = [&](std::string_view line) {
        if (line.empty() || line.back() != ':') {
            return false;
        }
        const std::string_view name = line.substr(0, line.size() - 1);
        return std::find(cast_names.begin(), cast_names.end(), name) != cast_names.end();
    };

    Screenplay screenplay;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        const std::size_t sep = text.find("\n\n", pos);
        const std::string_view block =
            text.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
        const auto lines = split_lines(block);
        if (screenplay.episodes.size() >= labels.size()) {
            throw Error(ErrorCode::InvalidValue, "more episodes than labels");
        }
        Episode episode;
        episode.subplot_label = labels[screenplay.episodes.size()];
        episode.scene_heading = parse_scene_heading(lines.front());

        std::size_t i = 1;
        while (i < lines.size()) {
            if (!is_name_line(lines[i])) {
                throw Error(ErrorCode::InvalidValue,
                            "expected a character line, found: " + std::string(lines[i]));
            }
            std::string name(lines[i].substr(0, lines[i].size() - 1));
            ++i;
            std::string action;
            std::string parenthetical;
            std::string dialogue;
            if (i < lines.size() && wrapped(lines[i], '[', ']')) {
                action = std::string(lines[i].substr(1, lines[i].size() - 2));
                ++i;
            }
            if (i < lines.size() && wrapped(lines[i], '(', ')')) {
                parenthetical = std::string(lines[i]);
                ++i;
            }
            while (i < lines.size() && !is_name_line(lines[i])) {
                if (!dialogue.empty()) {
                    dialogue += '\n';
                }
                dialogue += std::string(lines[i]);
                ++i;
            }
            episode.performances.emplace_back(std::move(name), std::move(action),
                                              std::move(parenthetical), std::move(dialogue));
        }
        episode.validate();
        screenplay.episodes.push_back(std::move(episode));
        if (sep == std::string_view::npos) {
            break;
        }
        pos = sep + 2;
    }
    return screenplay;
}

} // namespace screenwright
