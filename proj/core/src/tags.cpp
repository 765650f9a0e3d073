#include "screenwright/tags.hpp"

#include "screenwright/error.hpp"

#include <optional>

namespace screenwright {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9');
}

struct Token {
    std::size_t begin = 0;  // position of '<'
    std::size_t end = 0;    // one past '>'
    std::string_view name;
    bool closing = false;
};

// Next well-formed tag token in [pos, end). Anything else (e.g. "a < b") is text.
std::optional<Token> next_token(std::string_view raw, std::size_t pos, std::size_t end) {
    while (pos < end) {
        const std::size_t lt = raw.find('<', pos);
        if (lt == std::string_view::npos || lt >= end) {
            return std::nullopt;
        }
        std::size_t p = lt + 1;
        bool closing = false;
        if (p < end && raw[p] == '/') {
            closing = true;
            ++p;
        }
        const std::size_t name_begin = p;
        if (p < end && is_name_start(raw[p])) {
            ++p;
            while (p < end && is_name_char(raw[p])) {
                ++p;
            }
            if (p < end && raw[p] == '>') {
                return Token{lt, p + 1, raw.substr(name_begin, p - name_begin), closing};
            }
        }
        pos = lt + 1;
    }
    return std::nullopt;
}

// Matching close tag for an element opened just before `pos`; nested elements
// of the same name are balanced.
std::optional<Token> find_close(std::string_view raw, std::size_t pos, std::size_t end,
                                std::string_view name) {
    int depth = 1;
    while (auto tok = next_token(raw, pos, end)) {
        if (tok->name == name) {
            depth += tok->closing ? -1 : 1;
            if (depth == 0) {
                return tok;
            }
        }
        pos = tok->end;
    }
    return std::nullopt;
}

void parse_level(std::string_view raw, std::size_t begin, std::size_t end,
                 const std::vector<TagSpec>& specs, std::vector<TagNode>& out) {
    std::vector<std::size_t> counts(specs.size(), 0);
    std::size_t pos = begin;
    while (auto tok = next_token(raw, pos, end)) {
        std::size_t index = specs.size();
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (specs[i].matches(tok->name)) {
                index = i;
                break;
            }
        }
        if (index == specs.size()) {
            pos = tok->end;
            continue;
        }
        const std::string name(tok->name);
        if (tok->closing) {
            throw Error(ErrorCode::UnbalancedTag, "closing </" + name + "> without opening tag",
                        tok->begin, tok->end);
        }
        const auto close = find_close(raw, tok->end, end, tok->name);
        if (!close) {
            throw Error(ErrorCode::UnbalancedTag, "<" + name + "> is never closed", tok->begin,
                        tok->end);
        }
        const TagSpec& spec = specs[index];
        if (++counts[index] > spec.max_count) {
            throw Error(ErrorCode::ArityViolation,
                        "<" + name + "> appears more than " + std::to_string(spec.max_count) +
                            " time(s)",
                        tok->begin, close->end);
        }
        TagNode node;
        node.name = name;
        if (spec.is_leaf()) {
            node.text = std::string(trim(raw.substr(tok->end, close->begin - tok->end)));
        } else {
            parse_level(raw, tok->end, close->begin, spec.children, node.children);
        }
        out.push_back(std::move(node));
        pos = close->end;
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (counts[i] < specs[i].min_count) {
            throw Error(ErrorCode::MissingTag,
                        "expected <" + specs[i].name + "> (at least " +
                            std::to_string(specs[i].min_count) + ", found " +
                            std::to_string(counts[i]) + ")",
                        begin, end);
        }
    }
}

void render_into(const TagNode& node, std::string& out) {
    out += '<';
    out += node.name;
    out += '>';
    if (node.is_leaf()) {
        if (node.text.find('\n') != std::string::npos) {
            out += '\n';
            out += node.text;
            out += '\n';
        } else {
            out += node.text;
        }
    } else {
        out += '\n';
        for (const auto& child : node.children) {
            render_into(child, out);
            out += '\n';
        }
    }
    out += "</";
    out += node.name;
    out += '>';
}

} // namespace

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(kWhitespace);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(kWhitespace);
    return s.substr(first, last - first + 1);
}

bool is_tag_name(std::string_view s) {
    if (s.empty() || !is_name_start(s.front())) {
        return false;
    }
    for (char c : s) {
        if (!is_name_char(c)) {
            return false;
        }
    }
    return true;
}

const TagNode* TagNode::child(std::string_view child_name) const {
    for (const auto& c : children) {
        if (c.name == child_name) {
            return &c;
        }
    }
    return nullptr;
}

std::string TagNode::child_text(std::string_view child_name) const {
    const TagNode* c = child(child_name);
    return c ? c->text : std::string{};
}

std::vector<const TagNode*> TagNode::children_named(std::string_view child_name) const {
    std::vector<const TagNode*> out;
    for (const auto& c : children) {
        if (c.name == child_name) {
            out.push_back(&c);
        }
    }
    return out;
}

const TagNode& TagDocument::root() const {
    if (roots.empty()) {
        throw Error(ErrorCode::MissingTag, "document has no root tag");
    }
    return roots.front();
}

bool TagSpec::matches(std::string_view candidate) const {
    return matcher ? matcher(candidate) : candidate == name;
}

TagSpec TagSpec::leaf(std::string name, std::size_t min_count, std::size_t max_count) {
    return TagSpec{std::move(name), {}, min_count, max_count, {}};
}

TagSpec TagSpec::container(std::string name, std::vector<TagSpec> children,
                           std::size_t min_count, std::size_t max_count) {
    return TagSpec{std::move(name), {}, min_count, max_count, std::move(children)};
}

TagSpec TagSpec::indexed(std::string prefix, std::vector<TagSpec> children,
                         std::size_t min_count, std::size_t max_count) {
    auto matcher = [prefix](std::string_view candidate) {
        if (candidate.size() <= prefix.size() || candidate.substr(0, prefix.size()) != prefix) {
            return false;
        }
        for (char c : candidate.substr(prefix.size())) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    return TagSpec{prefix + "N", std::move(matcher), min_count, max_count, std::move(children)};
}

TagDocument parse_tag_document(std::string_view raw, const TagSchema& schema) {
    TagDocument doc;
    parse_level(raw, 0, raw.size(), schema.roots, doc.roots);
    return doc;
}

std::string render(const TagNode& node) {
    std::string out;
    render_into(node, out);
    return out;
}

std::string render(const TagDocument& doc) {
    std::string out;
    for (const auto& root : doc.roots) {
        render_into(root, out);
        out += '\n';
    }
    return out;
}

std::string canonicalize(std::string_view raw, const TagSchema& schema) {
    return render(parse_tag_document(raw, schema));
}

} // namespace screenwright
