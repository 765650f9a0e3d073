#pragma once

// Tag schemas for each artifact, plus conversion between TagDocument and the
// domain types. Extraction validates; rendering produces the canonical form.

#include "screenwright/story.hpp"
#include "screenwright/tags.hpp"

#include <string>
#include <vector>

namespace screenwright {

namespace schema {

const TagSchema& characters();
const TagSchema& outline();
const TagSchema& advice();
const TagSchema& chapter();
const TagSchema& script_draft();
const TagSchema& detailed_performance();
const TagSchema& episode();
const TagSchema& verdict();  // <explanation> + <verdict>
const TagSchema& storyline();

} // namespace schema

// Characters ----------------------------------------------------------------

CharacterSet extract_characters(const TagDocument& doc,
                                std::size_t min_size = CharacterSet::kMinCharacters,
                                std::size_t max_size = CharacterSet::kMaxCharacters);
TagDocument characters_document(const std::vector<Character>& characters);
TagDocument characters_document(const CharacterSet& characters);
// The <character_i> blocks without the enclosing <characters> tag.
std::string render_character_blocks(const std::vector<Character>& characters);

// Outline -------------------------------------------------------------------

struct PlotBody {
    std::string plot_text;
    std::string scene;
    std::vector<std::string> characters;
};

// Splits at the last "Scene:" and last "Characters:" markers.
PlotBody split_plot_body(std::string_view body);
std::string join_plot_body(const PlotBody& body);

struct OutlineOptions {
    const CharacterSet* cast = nullptr;     // when set, names are checked
    bool lenient = false;                   // unknown names become warnings
    std::vector<std::string>* warnings = nullptr;
};

// Groups flat plot_N / plot_Na siblings by label. Throws LabelGap,
// OrphanSubplot, EmptyTopPlot, InvalidLabel, UnknownCharacterName.
Outline extract_outline(const TagDocument& doc, const OutlineOptions& options = {});
TagDocument outline_document(const Outline& outline);
// Flat plot tags without the enclosing <outline>.
std::string render_plot_blocks(const Outline& outline);

// Advice / chapter / storyline ----------------------------------------------

Advice extract_advice(const TagDocument& doc);
TagDocument advice_document(const Advice& advice);

Chapter extract_chapter(const TagDocument& doc, const PlotLabel& label);
TagDocument chapter_document(const Chapter& chapter);

std::string extract_storyline_text(const TagDocument& doc);

// Script drafts and performances ---------------------------------------------

// Throws MissingSceneHeading when the heading is absent or not first.
ScriptDraft extract_script_draft(const TagDocument& doc, const PlotLabel& label);
TagDocument script_draft_document(const ScriptDraft& draft);

DetailedPerformance extract_performance(const TagNode& node);
TagNode performance_node(const DetailedPerformance& performance);

// `fallback_heading` is used when the document carries no <scene_heading>.
Episode extract_episode(const TagDocument& doc, const PlotLabel& label,
                        const SceneHeading* fallback_heading = nullptr);
TagDocument episode_document(const Episode& episode);

} // namespace screenwright
