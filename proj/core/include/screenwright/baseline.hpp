#pragma once

// Plan-then-Write baseline: characters and outline without feedback, then one
// episode per subplot written directly from the outline, with the previous
// episode and a one-episode example in the prompt.

#include "screenwright/planning.hpp"
#include "screenwright/prompts.hpp"

#include <string>
#include <vector>

namespace screenwright {

prompts::Prompt plan_then_write_prompt(const Storyline& storyline, const CharacterSet& cast,
                                       const Outline& outline, const Subplot& subplot,
                                       const Episode* previous);

Episode plan_then_write_episode(const StageEnv& env, const Storyline& storyline,
                                const CharacterSet& cast, const Outline& outline,
                                const Subplot& subplot, const Episode* previous);

// All episodes in outline order; resumes from episode_<label>.tags in env.store.
std::vector<Episode> plan_then_write_episodes(const StageEnv& env, const Storyline& storyline,
                                              const CharacterSet& cast, const Outline& outline);

} // namespace screenwright
