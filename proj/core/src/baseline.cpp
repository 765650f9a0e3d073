#include "screenwright/baseline.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/expansion.hpp"
#include "screenwright/screenplay.hpp"
#include "screenwright/script_text.hpp"

#include <algorithm>

namespace screenwright {

prompts::Prompt plan_then_write_prompt(const Storyline& storyline, const CharacterSet& cast,
                                       const Outline& outline, const Subplot& subplot,
                                       const Episode* previous) {
    prompts::PlanThenWriteInput in;
    in.storyline = storyline.text;
    in.characters = render(characters_document(cast));
    in.outline = render(outline_document(outline));
    if (previous) {
        in.previous_episode = render_episode_text(*previous);
    }
    in.plot_point = subplot.plot_text;
    in.scene = subplot.scene;
    in.involved_characters = render_character_blocks(involved_characters(subplot, cast));
    return prompts::plan_then_write_episode(in);
}

Episode plan_then_write_episode(const StageEnv& env, const Storyline& storyline,
                                const CharacterSet& cast, const Outline& outline,
                                const Subplot& subplot, const Episode* previous) {
    const auto prompt = plan_then_write_prompt(storyline, cast, outline, subplot, previous);
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, env.writer};
    const auto involved = involved_characters(subplot, cast);
    return env.gateway
        ->complete_as<Episode>(
            req, schema::episode(), {Stage::Stage3_Screenplay, env.story_id},
            [&](const TagDocument& doc) {
                Episode ep = extract_episode(doc, subplot.label);
                for (const auto& p : ep.performances) {
                    const bool known = std::any_of(involved.begin(), involved.end(),
                                                   [&](const Character& c) {
                                                       return c.full_name == p.character();
                                                   });
                    if (!known) {
                        throw Error(ErrorCode::ForeignCharacter,
                                    p.character() + " is not involved in " + subplot.label.str());
                    }
                }
                return ep;
            },
            {ErrorCode::MissingSceneHeading, ErrorCode::ComponentCount})
        .value;
}

std::vector<Episode> plan_then_write_episodes(const StageEnv& env, const Storyline& storyline,
                                              const CharacterSet& cast, const Outline& outline) {
    std::vector<Episode> out;
    bool resuming = env.store != nullptr;
    for (const Subplot* sub : outline.subplots()) {
        if (resuming) {
            if (auto text = env.store->try_read(episode_file_name(sub->label))) {
                out.push_back(extract_episode(parse_tag_document(*text, schema::episode()), sub->label));
                continue;
            }
            resuming = false;
        }
        Episode ep = plan_then_write_episode(env, storyline, cast, outline, *sub,
                                             out.empty() ? nullptr : &out.back());
        if (env.store) {
            env.store->write(episode_file_name(sub->label), render(episode_document(ep)));
        }
        out.push_back(std::move(ep));
    }
    return out;
}

} // namespace screenwright
