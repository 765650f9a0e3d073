#pragma once

// Stage 3: draft each chapter into a scene heading plus single-character
// events, then let one actor per character realize the events in order. All
// actors of an episode share its performance history.

#include "screenwright/expansion.hpp"
#include "screenwright/planning.hpp"

#include <string>
#include <utility>
#include <vector>

namespace screenwright {

struct ActorContext {
    std::string role_name;
    std::string role_intro;
    std::string involved_characters;  // rendered introductions
    std::vector<std::pair<DraftEvent, DetailedPerformance>> act_history;
};

std::string render_act_history(const std::vector<std::pair<DraftEvent, DetailedPerformance>>& history);

// Throws ForeignCharacter or MissingSceneHeading (not retried).
ScriptDraft draft_script(const StageEnv& env, const Chapter& chapter, const std::string& scene,
                         const std::vector<Character>& involved);

prompts::Prompt act_prompt(const ActorContext& actor, const DraftEvent& event,
                           const SceneHeading& scene);

// Throws RoleMismatch when the corrective retry still names someone else, and
// ConstraintViolation for a parenthetical without dialogue.
DetailedPerformance perform_event(const StageEnv& env, const ActorContext& actor,
                                  const DraftEvent& event, const SceneHeading& scene);

Episode role_play_episode(const StageEnv& env, const ScriptDraft& draft,
                          const std::vector<Character>& involved);

// Ablation without role-play: one third-person call for the whole draft.
Episode direct_episode(const StageEnv& env, const ScriptDraft& draft,
                       const std::vector<Character>& involved);

// Orders episodes by the outline. Throws MissingEpisode, DuplicateEpisode,
// UnknownLabel.
Screenplay assemble_screenplay(const Outline& outline, std::vector<Episode> episodes);

std::string draft_file_name(const PlotLabel& label);
std::string episode_file_name(const PlotLabel& label);

} // namespace screenwright
