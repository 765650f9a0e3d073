#include "screenwright/error.hpp"
#include "screenwright/story.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace screenwright;

TEST(Story, WordCountCountsWhitespaceRuns) {
    EXPECT_EQ(word_count(""), 0u);
    EXPECT_EQ(word_count("   \n\t "), 0u);
    EXPECT_EQ(word_count("one"), 1u);
    EXPECT_EQ(word_count(" one  two\nthree\t"), 3u);
}

TEST(Story, GenreNames) {
    EXPECT_EQ(all_genres().size(), 6u);
    EXPECT_EQ(to_string(Genre::ScienceFiction), "Science Fiction");
    EXPECT_EQ(genre_slug(Genre::ScienceFiction), "science_fiction");
    EXPECT_EQ(parse_genre("science fiction"), Genre::ScienceFiction);
    EXPECT_EQ(parse_genre("HORROR"), Genre::Horror);
    EXPECT_FALSE(parse_genre("western"));
}

TEST(Story, StorylineBounds) {
    Storyline s{Genre::Drama, ""};
    EXPECT_THROW(s.validate(), Error);
    s.text = "short";
    EXPECT_NO_THROW(s.validate());
    EXPECT_FALSE(s.within_soft_bounds());
    EXPECT_TRUE(screenwright::testing::sample_storyline().within_soft_bounds());
}

TEST(Story, CharacterSetInvariants) {
    const std::vector<Character> two = {{"A B", "x"}, {"C D", "y"}};
    try {
        CharacterSet{two};
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CardinalityOutOfRange);
    }
    const std::vector<Character> dup = {{"A B", "x"}, {"A B", "y"}, {"C D", "z"}};
    try {
        CharacterSet{dup};
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateName);
    }
    const std::vector<Character> angle = {{"A <B>", "x"}, {"C D", "y"}, {"E F", "z"}};
    EXPECT_THROW(CharacterSet{angle}, Error);
    const auto cast = screenwright::testing::sample_cast(3);
    EXPECT_TRUE(cast.contains("Ruby Lane"));
    EXPECT_FALSE(cast.contains("ruby lane"));
}

TEST(Story, PlotLabels) {
    EXPECT_EQ(PlotLabel::top(3).str(), "plot_3");
    EXPECT_EQ(PlotLabel::sub(1, 0).str(), "plot_1a");
    EXPECT_EQ(PlotLabel::sub(2, 25).suffix(), "2z");
    EXPECT_THROW(PlotLabel::sub(1, 26), Error);
    EXPECT_EQ(PlotLabel::parse("plot_12c"), PlotLabel::sub(12, 2));
    EXPECT_EQ(PlotLabel::parse("4b"), PlotLabel::sub(4, 1));
    EXPECT_FALSE(PlotLabel::try_parse("plot_0"));
    EXPECT_FALSE(PlotLabel::try_parse("plot_1A"));
    EXPECT_LT(PlotLabel::sub(1, 1), PlotLabel::sub(2, 0));
    EXPECT_EQ(PlotLabel::sub(3, 1).parent(), PlotLabel::top(3));
}

TEST(Story, OutlineStructure) {
    const auto cast = screenwright::testing::sample_cast();
    const auto outline = screenwright::testing::sample_outline(cast, 3, 2);
    EXPECT_EQ(outline.subplot_count(), 6u);
    EXPECT_EQ(outline.subplot_position(PlotLabel::sub(2, 1)), 3u);
    EXPECT_EQ(outline.find_subplot(PlotLabel::sub(4, 0)), nullptr);

    auto tops = outline.top_plots();
    tops[1].label = PlotLabel::top(5);
    for (auto& s : tops[1].subplots) {
        s.label = PlotLabel::sub(5, s.label.sub_index());
    }
    try {
        [[maybe_unused]] Outline o(tops);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LabelGap);
    }
    auto empty = outline.top_plots();
    empty[0].subplots.clear();
    try {
        [[maybe_unused]] Outline o(empty);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyTopPlot);
    }
}

TEST(Story, AdviceSentinel) {
    EXPECT_TRUE(Advice::from_body("None").is_none());
    EXPECT_FALSE(Advice::from_body("none").is_none());
    EXPECT_FALSE(Advice::from_body("None.").is_none());
    EXPECT_EQ(Advice::none().body(), "None");
    EXPECT_EQ(Advice::text("Add conflict.").body(), "Add conflict.");
}

TEST(Story, SceneHeadingParse) {
    const auto h = parse_scene_heading("INT.; Inside Emma Taylor's room; DAY.");
    EXPECT_EQ(h.placement, Placement::Interior);
    EXPECT_EQ(h.location, "Inside Emma Taylor's room");
    EXPECT_EQ(h.time_of_day, "DAY");
    EXPECT_EQ(h.str(), "INT.; Inside Emma Taylor's room; DAY.");
    EXPECT_EQ(parse_scene_heading("EXT.; pier; NIGHT").placement, Placement::Exterior);
    EXPECT_EQ(parse_scene_heading("INT./EXT.; car; DUSK.").placement, Placement::Other);
    try {
        parse_scene_heading("INT.; only two");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ComponentCount);
    }
}

TEST(Story, PerformanceConstraint) {
    EXPECT_NO_THROW(DetailedPerformance("A", "walks", "", ""));
    EXPECT_EQ(DetailedPerformance("A", "", "softly", "hi").parenthetical(), "(softly)");
    try {
        DetailedPerformance("A", "walks", "(softly)", "");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
    EXPECT_THROW(DetailedPerformance("A", "", "", ""), Error);
}
