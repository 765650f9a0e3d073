#pragma once

// Stage 2: expand subplots into chapters left to right. The prompt for the
// k-th subplot carries the nearest n chapters verbatim and the raw text of
// every earlier subplot outside that window.

#include "screenwright/planning.hpp"
#include "screenwright/prompts.hpp"

#include <string>
#include <vector>

namespace screenwright {

struct ExpansionConfig {
    int context_chapters = 1;

    void validate() const;
};

struct InvolvedCharacter {
    Character character;
    bool first_appearance = false;

    bool operator==(const InvolvedCharacter&) const = default;
};

struct ExpansionContext {
    Subplot current;
    std::size_t position = 0;  // zero-based index in outline order
    std::string scene;
    std::vector<InvolvedCharacter> involved;
    std::vector<Chapter> recent_chapters;
    std::vector<Subplot> earlier_subplots_raw;
    bool is_last = false;
};

// Cast members of `subplot`, in the subplot's order. Names missing from the
// cast (lenient outlines) come back with an empty introduction.
std::vector<Character> involved_characters(const Subplot& subplot, const CharacterSet& cast);

// `chapters_so_far` must be the chapters of every subplot before `label`, in
// order. Throws UnknownLabel or OutOfOrderExpansion.
ExpansionContext build_expansion_context(const Outline& outline, const CharacterSet& cast,
                                         const std::vector<Chapter>& chapters_so_far,
                                         const PlotLabel& label, const ExpansionConfig& config);

std::string render_involved(const std::vector<InvolvedCharacter>& involved);
prompts::Prompt expansion_prompt(const ExpansionContext& context, const Storyline& storyline);

Chapter expand_subplot(const StageEnv& env, const ExpansionContext& context,
                       const Storyline& storyline);

// Resumes from chapter_<label>.tags files already in env.store (a contiguous
// prefix), then expands the rest, checkpointing each chapter.
std::vector<Chapter> expand_all(const StageEnv& env, const Outline& outline,
                                const CharacterSet& cast, const Storyline& storyline,
                                const ExpansionConfig& config);

std::string chapter_file_name(const PlotLabel& label);

} // namespace screenwright
