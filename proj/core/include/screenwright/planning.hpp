#pragma once

// Stage 1: the Writer drafts characters, then an outline; after each draft the
// Editor advises and the Writer revises, for at most max_feedback_rounds
// rounds or until the Editor answers "None".

#include "screenwright/checkpoint.hpp"
#include "screenwright/gateway.hpp"
#include "screenwright/story.hpp"

#include <optional>
#include <string>
#include <vector>

namespace screenwright {

struct PlanningConfig {
    std::size_t min_characters = CharacterSet::kMinCharacters;
    std::size_t max_characters = CharacterSet::kMaxCharacters;
    int max_feedback_rounds = 2;

    void validate() const;
};

// Everything a stage needs to talk to the model and persist its artifacts.
struct StageEnv {
    Gateway* gateway = nullptr;
    GenParams writer;
    GenParams editor;
    GenParams actor;
    std::string story_id;
    const CheckpointStore* store = nullptr;  // optional
};

enum class RevisionTarget { Characters, Outline };

struct RevisionSession {
    RevisionTarget target = RevisionTarget::Characters;
    std::string writer_system;
    std::string editor_system;
    std::vector<ChatTurn> writer_history;
    std::vector<ChatTurn> editor_history;
    int rounds_completed = 0;

    // Current artifact and its fixed inputs.
    std::string storyline;
    std::optional<CharacterSet> characters;  // Characters target: the artifact; Outline: the cast
    std::optional<Outline> outline;
    PlanningConfig config;
};

RevisionSession character_session(const Storyline& storyline, const PlanningConfig& config);
RevisionSession outline_session(const Storyline& storyline, const CharacterSet& cast,
                                const PlanningConfig& config);

// Writer's first draft; fills session.characters.
CharacterSet generate_characters(const StageEnv& env, RevisionSession& session);
// Writer's first draft; fills session.outline.
Outline generate_outline(const StageEnv& env, RevisionSession& session);

Advice editor_feedback(const StageEnv& env, RevisionSession& session);
// Requires non-sentinel advice. Replaces the session's artifact.
void revise(const StageEnv& env, RevisionSession& session, const Advice& advice);

// generate, then while rounds remain: advise; stop on None; revise.
// Checkpoints <name>_r<k>.tags per round and logs advice to planning.log.
void run_feedback_loop(const StageEnv& env, RevisionSession& session);

struct PlanningResult {
    CharacterSet characters;
    Outline outline;
    int character_rounds = 0;
    int outline_rounds = 0;
};

PlanningResult run_plot_planning(const StageEnv& env, const Storyline& storyline,
                                 const PlanningConfig& config);

// Canonical checkpoint text of each artifact.
std::string characters_file_text(const CharacterSet& characters);
std::string outline_file_text(const Outline& outline);

} // namespace screenwright
