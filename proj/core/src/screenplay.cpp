#include "screenwright/screenplay.hpp"
#include "screenwright/codec.hpp"

#include <algorithm>
#include <map>

namespace screenwright {

std::string draft_file_name(const PlotLabel& label) {
    return "draft_" + label.suffix() + ".tags";
}

std::string episode_file_name(const PlotLabel& label) {
    return "episode_" + label.suffix() + ".tags";
}

namespace {

CallContext screenplay_call(const StageEnv& env) {
    return {Stage::Stage3_Screenplay, env.story_id};
}

bool has_name(const std::vector<Character>& involved, std::string_view name) {
    return std::any_of(involved.begin(), involved.end(),
                       [&](const Character& c) { return c.full_name == name; });
}

void check_cast(const Episode& episode, const std::vector<Character>& involved) {
    for (const auto& p : episode.performances) {
        if (!has_name(involved, p.character())) {
            throw Error(ErrorCode::ForeignCharacter,
                        p.character() + " is not involved in " + episode.subplot_label.str());
        }
    }
}

} // namespace

std::string render_act_history(const std::vector<std::pair<DraftEvent, DetailedPerformance>>& history) {
    std::string out;
    for (const auto& [event, performance] : history) {
        if (!out.empty()) {
            out += '\n';
        }
        out += render(TagNode{"performance_guide", event.performance_guide, {}});
        out += '\n';
        out += render(performance_node(performance));
    }
    return out;
}

ScriptDraft draft_script(const StageEnv& env, const Chapter& chapter, const std::string& scene,
                         const std::vector<Character>& involved) {
    chapter.validate();
    const auto prompt = prompts::script_draft(chapter.text, scene, render_character_blocks(involved));
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.writer};
    const PlotLabel label = chapter.subplot_label;
    return env.gateway
        ->complete_as<ScriptDraft>(req, schema::script_draft(), screenplay_call(env),
                                   [&](const TagDocument& doc) {
                                       ScriptDraft draft = extract_script_draft(doc, label);
                                       for (const auto& e : draft.events) {
                                           if (!has_name(involved, e.character)) {
                                               throw Error(ErrorCode::ForeignCharacter,
                                                           e.character + " is not involved in " +
                                                               label.str());
                                           }
                                       }
                                       return draft;
                                   })
        .value;
}

prompts::Prompt act_prompt(const ActorContext& actor, const DraftEvent& event,
                           const SceneHeading& scene) {
    prompts::ActInput in;
    in.role_name = actor.role_name;
    in.role_intro = actor.role_intro;
    in.performance_guide = event.performance_guide;
    in.scene = scene.str();
    in.involved_characters = actor.involved_characters;
    in.act_history = render_act_history(actor.act_history);
    return prompts::act(in);
}

DetailedPerformance perform_event(const StageEnv& env, const ActorContext& actor,
                                  const DraftEvent& event, const SceneHeading& scene) {
    if (event.character != actor.role_name) {
        throw Error(ErrorCode::InvalidValue,
                    "event for " + event.character + " given to actor " + actor.role_name);
    }
    const auto prompt = act_prompt(actor, event, scene);
    auto extract = [&](const TagDocument& doc) {
        DetailedPerformance p = extract_performance(doc.root());
        if (p.character() != actor.role_name) {
            throw Error(ErrorCode::RoleMismatch,
                        "actor " + actor.role_name + " answered as " + p.character());
        }
        return p;
    };
    ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.actor};
    try {
        return env.gateway
            ->complete_as<DetailedPerformance>(req, schema::detailed_performance(),
                                               screenplay_call(env), extract)
            .value;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RoleMismatch) {
            throw;
        }
    }
    req.turns.back().content += "\n" + prompts::role_correction(actor.role_name);
    return env.gateway
        ->complete_as<DetailedPerformance>(req, schema::detailed_performance(),
                                           screenplay_call(env), extract)
        .value;
}

Episode role_play_episode(const StageEnv& env, const ScriptDraft& draft,
                          const std::vector<Character>& involved) {
    draft.validate();
    const std::string rendered = render_character_blocks(involved);
    std::map<std::string, ActorContext> actors;
    for (const auto& c : involved) {
        actors.emplace(c.full_name, ActorContext{c.full_name, c.introduction, rendered, {}});
    }
    Episode episode{draft.subplot_label, draft.scene_heading, {}};
    for (const auto& event : draft.events) {
        auto it = actors.find(event.character);
        if (it == actors.end()) {
            throw Error(ErrorCode::ForeignCharacter,
                        event.character + " is not involved in " + draft.subplot_label.str());
        }
        DetailedPerformance p = perform_event(env, it->second, event, draft.scene_heading);
        for (auto& [name, actor] : actors) {
            actor.act_history.emplace_back(event, p);
        }
        episode.performances.push_back(std::move(p));
    }
    episode.validate();
    return episode;
}

Episode direct_episode(const StageEnv& env, const ScriptDraft& draft,
                       const std::vector<Character>& involved) {
    draft.validate();
    const auto prompt =
        prompts::direct_episode(render(script_draft_document(draft)), render_character_blocks(involved));
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.writer};
    return env.gateway
        ->complete_as<Episode>(req, schema::episode(), screenplay_call(env),
                               [&](const TagDocument& doc) {
                                   Episode ep = extract_episode(doc, draft.subplot_label,
                                                                &draft.scene_heading);
                                   ep.scene_heading = draft.scene_heading;
                                   check_cast(ep, involved);
                                   return ep;
                               })
        .value;
}

Screenplay assemble_screenplay(const Outline& outline, std::vector<Episode> episodes) {
    std::map<PlotLabel, Episode> by_label;
    for (auto& ep : episodes) {
        if (!outline.find_subplot(ep.subplot_label)) {
            throw Error(ErrorCode::UnknownLabel, ep.subplot_label.str() + " is not in the outline");
        }
        const PlotLabel label = ep.subplot_label;
        if (!by_label.emplace(label, std::move(ep)).second) {
            throw Error(ErrorCode::DuplicateEpisode, "two episodes for " + label.str());
        }
    }
    Screenplay out;
    for (const auto& label : outline.subplot_labels()) {
        auto it = by_label.find(label);
        if (it == by_label.end()) {
            throw Error(ErrorCode::MissingEpisode, "no episode for " + label.str());
        }
        out.episodes.push_back(std::move(it->second));
    }
    return out;
}

} // namespace screenwright
