#include "screenwright/error.hpp"
#include "screenwright/tags.hpp"

#include <gtest/gtest.h>

using namespace screenwright;

namespace {

const TagSchema& pair_schema() {
    static const TagSchema s{{TagSpec::container(
        "pair", {TagSpec::leaf("left"), TagSpec::leaf("right", 0, 1)})}};
    return s;
}

ErrorCode code_of(std::string_view raw, const TagSchema& schema) {
    try {
        parse_tag_document(raw, schema);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for: " << raw;
    return ErrorCode::Io;
}

} // namespace

TEST(Tags, ParsesLeavesAndContainers) {
    const auto doc = parse_tag_document("<pair><left> a </left><right>b</right></pair>", pair_schema());
    ASSERT_EQ(doc.roots.size(), 1u);
    EXPECT_EQ(doc.root().name, "pair");
    EXPECT_EQ(doc.root().child_text("left"), "a");
    EXPECT_EQ(doc.root().child_text("right"), "b");
}

TEST(Tags, IgnoresProseAroundExpectedTags) {
    const auto doc = parse_tag_document("Sure! Here it is:\n<pair>\nnoise\n<left>x</left>\n</pair>\nThanks.",
                                        pair_schema());
    EXPECT_EQ(doc.root().child_text("left"), "x");
    EXPECT_EQ(doc.root().child("right"), nullptr);
}

TEST(Tags, MissingRequiredTag) {
    EXPECT_EQ(code_of("<pair><right>b</right></pair>", pair_schema()), ErrorCode::MissingTag);
    EXPECT_EQ(code_of("nothing here", pair_schema()), ErrorCode::MissingTag);
}

TEST(Tags, UnbalancedTagCarriesOffset) {
    const std::string raw = "<pair><left>a</pair>";
    try {
        parse_tag_document(raw, pair_schema());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnbalancedTag);
        EXPECT_NE(e.begin_offset(), Error::npos);
        EXPECT_LE(e.begin_offset(), raw.size());
    }
}

TEST(Tags, ArityViolation) {
    EXPECT_EQ(code_of("<pair><left>a</left><left>b</left></pair>", pair_schema()),
              ErrorCode::ArityViolation);
}

TEST(Tags, IndexedSpecMatchesNumberedNames) {
    const TagSpec spec = TagSpec::indexed("character_", {TagSpec::leaf("full_name")});
    EXPECT_TRUE(spec.matches("character_1"));
    EXPECT_TRUE(spec.matches("character_12"));
    EXPECT_FALSE(spec.matches("character_"));
    EXPECT_FALSE(spec.matches("character_x"));
}

TEST(Tags, RenderIsCanonical) {
    TagNode root{"pair", "", {{"left", "one line", {}}, {"right", "two\nlines", {}}}};
    EXPECT_EQ(render(root), "<pair>\n<left>one line</left>\n<right>\ntwo\nlines\n</right>\n</pair>");
    TagNode empty{"dialogue", "", {}};
    EXPECT_EQ(render(empty), "<dialogue></dialogue>");
}

TEST(Tags, CanonicalizeIsIdempotent) {
    const std::string raw = "  <pair>\n   <left>\n  spaced   \n</left>\n</pair>  ";
    const auto once = canonicalize(raw, pair_schema());
    EXPECT_EQ(canonicalize(once, pair_schema()), once);
}

TEST(Tags, TrimAndNames) {
    EXPECT_EQ(trim("  a b \n"), "a b");
    EXPECT_EQ(trim(""), "");
    EXPECT_TRUE(is_tag_name("plot_1a"));
    EXPECT_FALSE(is_tag_name("plot 1"));
    EXPECT_FALSE(is_tag_name(""));
}
