#include "screenwright/expansion.hpp"
#include "screenwright/codec.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace screenwright {

void ExpansionConfig::validate() const {
    if (context_chapters < 0) {
        throw Error(ErrorCode::ConfigError, "context_chapters must be >= 0");
    }
}

std::string chapter_file_name(const PlotLabel& label) {
    return "chapter_" + label.suffix() + ".tags";
}

std::vector<Character> involved_characters(const Subplot& subplot, const CharacterSet& cast) {
    std::vector<Character> out;
    for (const auto& name : subplot.involved_characters) {
        if (const Character* c = cast.find(name)) {
            out.push_back(*c);
        } else {
            out.push_back(Character{name, ""});
        }
    }
    return out;
}

ExpansionContext build_expansion_context(const Outline& outline, const CharacterSet& cast,
                                         const std::vector<Chapter>& chapters_so_far,
                                         const PlotLabel& label, const ExpansionConfig& config) {
    config.validate();
    const auto pos = outline.subplot_position(label);
    if (!pos) {
        throw Error(ErrorCode::UnknownLabel, label.str() + " is not a subplot of the outline");
    }
    const auto subplots = outline.subplots();
    if (chapters_so_far.size() != *pos) {
        throw Error(ErrorCode::OutOfOrderExpansion,
                    label.str() + " needs exactly " + std::to_string(*pos) +
                        " earlier chapters, got " + std::to_string(chapters_so_far.size()));
    }
    for (std::size_t i = 0; i < chapters_so_far.size(); ++i) {
        if (chapters_so_far[i].subplot_label != subplots[i]->label) {
            throw Error(ErrorCode::OutOfOrderExpansion,
                        "chapter " + std::to_string(i + 1) + " is for " +
                            chapters_so_far[i].subplot_label.str() + ", expected " +
                            subplots[i]->label.str());
        }
    }

    ExpansionContext ctx;
    ctx.current = *subplots[*pos];
    ctx.position = *pos;
    ctx.scene = ctx.current.scene;
    ctx.is_last = *pos + 1 == subplots.size();

    const std::size_t window =
        std::min<std::size_t>(static_cast<std::size_t>(config.context_chapters), *pos);
    const std::size_t split = *pos - window;
    for (std::size_t i = 0; i < split; ++i) {
        ctx.earlier_subplots_raw.push_back(*subplots[i]);
    }
    for (std::size_t i = split; i < *pos; ++i) {
        ctx.recent_chapters.push_back(chapters_so_far[i]);
    }

    std::set<std::string> seen;
    for (std::size_t i = 0; i < *pos; ++i) {
        seen.insert(subplots[i]->involved_characters.begin(), subplots[i]->involved_characters.end());
    }
    for (auto& c : involved_characters(ctx.current, cast)) {
        const bool first = !seen.contains(c.full_name);
        ctx.involved.push_back({std::move(c), first});
    }
    return ctx;
}

std::string render_involved(const std::vector<InvolvedCharacter>& involved) {
    std::string out;
    for (std::size_t i = 0; i < involved.size(); ++i) {
        TagNode node{"character_" + std::to_string(i + 1), {}, {}};
        node.children.push_back({"full_name", involved[i].character.full_name, {}});
        node.children.push_back({"character_introduction", involved[i].character.introduction, {}});
        if (involved[i].first_appearance) {
            node.children.push_back({"remark", std::string(prompts::kFirstAppearanceRemark), {}});
        }
        if (!out.empty()) {
            out += '\n';
        }
        out += render(node);
    }
    return out;
}

prompts::Prompt expansion_prompt(const ExpansionContext& ctx, const Storyline& storyline) {
    prompts::ExpansionInput in;
    in.plot_point = ctx.current.plot_text;
    in.storyline = storyline.text;
    in.scene = ctx.scene;
    in.involved_characters = render_involved(ctx.involved);
    for (const auto& s : ctx.earlier_subplots_raw) {
        if (!in.earlier_plot_points.empty()) {
            in.earlier_plot_points += '\n';
        }
        in.earlier_plot_points += render(TagNode{s.label.str(), s.plot_text, {}});
    }
    for (const auto& c : ctx.recent_chapters) {
        if (!in.recent_chapters.empty()) {
            in.recent_chapters += '\n';
        }
        in.recent_chapters += render(chapter_document(c).root());
    }
    in.is_last = ctx.is_last;
    return prompts::expansion(in);
}

Chapter expand_subplot(const StageEnv& env, const ExpansionContext& ctx, const Storyline& storyline) {
    const auto prompt = expansion_prompt(ctx, storyline);
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.writer};
    const PlotLabel label = ctx.current.label;
    return env.gateway
        ->complete_as<Chapter>(req, schema::chapter(), {Stage::Stage2_Expansion, env.story_id},
                               [&](const TagDocument& doc) { return extract_chapter(doc, label); },
                               {ErrorCode::InvalidValue})
        .value;
}

std::vector<Chapter> expand_all(const StageEnv& env, const Outline& outline,
                                const CharacterSet& cast, const Storyline& storyline,
                                const ExpansionConfig& config) {
    config.validate();
    std::vector<Chapter> chapters;
    const auto subplots = outline.subplots();
    bool resuming = env.store != nullptr;
    for (const Subplot* sub : subplots) {
        if (resuming) {
            if (auto text = env.store->try_read(chapter_file_name(sub->label))) {
                chapters.push_back(
                    extract_chapter(parse_tag_document(*text, schema::chapter()), sub->label));
                continue;
            }
            resuming = false;
        }
        const auto ctx = build_expansion_context(outline, cast, chapters, sub->label, config);
        Chapter chapter = expand_subplot(env, ctx, storyline);
        if (env.store) {
            env.store->write(chapter_file_name(sub->label), render(chapter_document(chapter)));
            nlohmann::json recent = nlohmann::json::array();
            for (const auto& c : ctx.recent_chapters) {
                recent.push_back(c.subplot_label.suffix());
            }
            nlohmann::json earlier = nlohmann::json::array();
            for (const auto& s : ctx.earlier_subplots_raw) {
                earlier.push_back(s.label.suffix());
            }
            nlohmann::json first = nlohmann::json::array();
            for (const auto& c : ctx.involved) {
                if (c.first_appearance) {
                    first.push_back(c.character.full_name);
                }
            }
            nlohmann::json line = {{"label", sub->label.suffix()}, {"recent_chapters", recent},
                                   {"earlier_subplots", earlier}, {"first_appearance", first},
                                   {"is_last", ctx.is_last}};
            env.store->append_line("expansion.log", line.dump());
        }
        chapters.push_back(std::move(chapter));
    }
    return chapters;
}

} // namespace screenwright
