#pragma once

// Prompt catalog. Writer, Editor, Actor and judge prompts are reproduced
// verbatim with their inputs substituted; the storyline-synthesis,
// direct-episode and plan-then-write prompts are this project's own.

#include "screenwright/story.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace screenwright::prompts {

struct Prompt {
    std::string system;
    std::string user;
};

// System prompts, also used by the synthetic backend to recognise the stage.
extern const std::string_view kCharacterWriterSystem;
extern const std::string_view kCharacterEditorSystem;
extern const std::string_view kOutlineWriterSystem;
extern const std::string_view kOutlineEditorSystem;
extern const std::string_view kExpansionSystem;
extern const std::string_view kDraftSystem;
extern const std::string_view kActorSystemTail;  // shared tail after role name/intro
extern const std::string_view kDirectEpisodeSystem;
extern const std::string_view kPlanThenWriteSystem;
extern const std::string_view kSynthesisSystem;
extern const std::string_view kJudgeSystemHead;

extern const std::string_view kLastPlotSentence;
extern const std::string_view kFirstAppearanceRemark;

// Stage 1 ------------------------------------------------------------------

Prompt character_generation(std::string_view storyline);
// First editor turn on characters. `character_blocks` is the body of <characters>.
Prompt character_advice(std::string_view storyline, std::string_view character_blocks);
std::string character_advice_again(std::string_view revised_blocks, std::string_view storyline);
std::string character_revision(std::string_view advice, std::string_view storyline);

// `characters` is the full <characters> document.
Prompt outline_generation(std::string_view storyline, std::string_view characters);
// `character_blocks` / `plot_blocks` are tag bodies without their wrapper.
Prompt outline_advice(std::string_view storyline, std::string_view character_blocks,
                      std::string_view plot_blocks);
std::string outline_advice_again(std::string_view revised_plot_blocks, std::string_view storyline,
                                 std::string_view characters);
std::string outline_revision(std::string_view advice, std::string_view storyline,
                             std::string_view characters);

// Stage 2 ------------------------------------------------------------------

struct ExpansionInput {
    std::string plot_point;
    std::string storyline;
    std::string scene;
    std::string involved_characters;  // rendered, with first-appearance remarks
    std::string earlier_plot_points;  // raw subplots beyond the chapter window
    std::string recent_chapters;      // nearest expanded chapters
    bool is_last = false;
};

Prompt expansion(const ExpansionInput& input);

// Stage 3 ------------------------------------------------------------------

Prompt script_draft(std::string_view chapter, std::string_view scene,
                    std::string_view involved_characters);

struct ActInput {
    std::string role_name;
    std::string role_intro;
    std::string performance_guide;
    std::string scene;
    std::string involved_characters;
    std::string act_history;
};

Prompt act(const ActInput& input);
std::string role_correction(std::string_view role_name);

// Ablation: one third-person call per draft.
Prompt direct_episode(std::string_view draft, std::string_view involved_characters);

// Baseline: one call per subplot with an in-context example episode.
struct PlanThenWriteInput {
    std::string storyline;
    std::string characters;
    std::string outline;
    std::string previous_episode;
    std::string plot_point;
    std::string scene;
    std::string involved_characters;
};

Prompt plan_then_write_episode(const PlanThenWriteInput& input);
std::string_view plan_then_write_example();

// Evaluation -----------------------------------------------------------------

struct JudgeInput {
    std::string storyline;
    std::string characters;
    std::string story_summary;
    std::string focus;
    std::string screenplay_a;
    std::string screenplay_b;
};

Prompt judge(const JudgeInput& input);

// Dataset ----------------------------------------------------------------------

Prompt storyline_synthesis(Genre genre, std::size_t target_words);

} // namespace screenwright::prompts
