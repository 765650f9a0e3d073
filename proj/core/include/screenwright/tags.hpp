#pragma once

// HTML-style tag format used for every model input/output and checkpoint file.
//
// The format has no attributes, no entities and no self-closing tags. A leaf
// tag holds free text; a container tag holds other tags. Text between the
// tags a schema expects is ignored, so models may wrap their answer in prose.

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace screenwright {

struct TagNode {
    std::string name;
    std::string text;               // leaf body, whitespace-trimmed
    std::vector<TagNode> children;  // container body, document order

    bool is_leaf() const noexcept { return children.empty(); }

    // First child with the given name, or nullptr.
    const TagNode* child(std::string_view child_name) const;
    // Text of the first child with the given name, or empty.
    std::string child_text(std::string_view child_name) const;
    std::vector<const TagNode*> children_named(std::string_view child_name) const;

    bool operator==(const TagNode&) const = default;
};

struct TagDocument {
    std::vector<TagNode> roots;

    // The first root node; throws MissingTag when the document is empty.
    const TagNode& root() const;

    bool operator==(const TagDocument&) const = default;
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Describes one expected tag: how its name is matched, how many times it may
// appear among its siblings, and (for containers) what it may contain.
struct TagSpec {
    std::string name;  // exact name, or a readable name for a pattern
    std::function<bool(std::string_view)> matcher;  // empty: exact match on `name`
    std::size_t min_count = 1;
    std::size_t max_count = 1;
    std::vector<TagSpec> children;  // empty: leaf

    bool is_leaf() const noexcept { return children.empty(); }
    bool matches(std::string_view candidate) const;

    static TagSpec leaf(std::string name, std::size_t min_count = 1, std::size_t max_count = 1);
    static TagSpec container(std::string name, std::vector<TagSpec> children,
                             std::size_t min_count = 1, std::size_t max_count = 1);
    // Matches `<prefix><digits>`, e.g. character_1, character_12.
    static TagSpec indexed(std::string prefix, std::vector<TagSpec> children,
                           std::size_t min_count = 1, std::size_t max_count = kUnbounded);
};

struct TagSchema {
    std::vector<TagSpec> roots;
};

// Parses model output against a schema. Throws Error with MissingTag,
// UnbalancedTag or ArityViolation; each carries the offending byte range.
TagDocument parse_tag_document(std::string_view raw, const TagSchema& schema);

// Canonical rendering: "\n" line endings, one tag per line, no indentation.
// Single-line leaf text renders inline; multi-line text goes on its own lines.
std::string render(const TagNode& node);
std::string render(const TagDocument& doc);

// render(parse(raw)).
std::string canonicalize(std::string_view raw, const TagSchema& schema);

std::string_view trim(std::string_view s);
bool is_tag_name(std::string_view s);

} // namespace screenwright
