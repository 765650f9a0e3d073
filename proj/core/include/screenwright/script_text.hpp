#pragma once

// Plain-text screenplay format (screenplay.txt):
//
//   INT.; Inside Emma Taylor's room; DAY.
//   Dorothy Smith:
//   [Dorothy Smith enters the room.]
//   (cautiously, to Emma Taylor)
//   My miss, you still have to take care of your body.
//
// Episodes are separated by one blank line. Output is byte-deterministic.

#include "screenwright/story.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace screenwright {

std::string render_performance_text(const DetailedPerformance& performance);
std::string render_episode_text(const Episode& episode);
std::string render_screenplay(const Screenplay& screenplay);

// Inverse of render_screenplay. Name lines are recognised against `cast_names`;
// episodes are labelled from `labels` in order. Throws InvalidValue on text
// that does not follow the format.
Screenplay parse_screenplay(std::string_view text, const std::vector<std::string>& cast_names,
                            const std::vector<PlotLabel>& labels);

} // namespace screenwright
