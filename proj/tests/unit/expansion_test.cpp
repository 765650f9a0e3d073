#include "screenwright/expansion.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/synthetic_backend.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace screenwright;
using namespace screenwright::testing;

namespace {

std::vector<Chapter> chapters_for(const Outline& outline, std::size_t count) {
    std::vector<Chapter> out;
    const auto labels = outline.subplot_labels();
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back({labels[i], "Chapter text for " + labels[i].suffix() + "."});
    }
    return out;
}

} // namespace

class ExpansionWindow : public ::testing::TestWithParam<int> {};

// Subplot k sees chapters max(0, k-n)..k-1 verbatim and the raw text of every earlier subplot.
TEST_P(ExpansionWindow, RecentChaptersAndRawSubplotsPartitionThePast) {
    const int n = GetParam();
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 3);  // 6 subplots
    const auto labels = outline.subplot_labels();
    ASSERT_EQ(labels.size(), 6u);
    ExpansionConfig config{n};
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto ctx =
            build_expansion_context(outline, cast, chapters_for(outline, k), labels[k], config);
        const std::size_t window = std::min<std::size_t>(static_cast<std::size_t>(n), k);
        ASSERT_EQ(ctx.recent_chapters.size(), window) << k;
        ASSERT_EQ(ctx.earlier_subplots_raw.size(), k - window) << k;
        for (std::size_t i = 0; i < ctx.earlier_subplots_raw.size(); ++i) {
            EXPECT_EQ(ctx.earlier_subplots_raw[i].label, labels[i]);
        }
        for (std::size_t i = 0; i < ctx.recent_chapters.size(); ++i) {
            EXPECT_EQ(ctx.recent_chapters[i].subplot_label, labels[k - window + i]);
        }
        EXPECT_EQ(ctx.position, k);
        EXPECT_EQ(ctx.is_last, k + 1 == labels.size());
        EXPECT_EQ(ctx.scene, "Location " + labels[k].suffix());
    }
}

INSTANTIATE_TEST_SUITE_P(Windows, ExpansionWindow, ::testing::Values(0, 1, 2));

TEST(Expansion, FirstAppearanceRemarks) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    const auto labels = outline.subplot_labels();
    // subplot k involves cast k and k+1: only k+1 is new after the first subplot
    const auto first = build_expansion_context(outline, cast, {}, labels[0], {});
    ASSERT_EQ(first.involved.size(), 2u);
    EXPECT_TRUE(first.involved[0].first_appearance);
    EXPECT_TRUE(first.involved[1].first_appearance);
    const auto second = build_expansion_context(outline, cast, chapters_for(outline, 1), labels[1], {});
    EXPECT_FALSE(second.involved[0].first_appearance);
    EXPECT_TRUE(second.involved[1].first_appearance);

    const auto text = render_involved(second.involved);
    EXPECT_EQ(text.find("<remark>"), text.rfind("<remark>"));
    EXPECT_NE(text.find("<remark>"), std::string::npos);
}

TEST(Expansion, PromptCarriesWindowedContext) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    const auto labels = outline.subplot_labels();
    const auto ctx = build_expansion_context(outline, cast, chapters_for(outline, 3), labels[3], {1});
    const auto p = expansion_prompt(ctx, sample_storyline());
    EXPECT_NE(p.user.find("Chapter text for 2a."), std::string::npos);
    EXPECT_EQ(p.user.find("Chapter text for 1b."), std::string::npos);
    EXPECT_NE(p.user.find("Subplot 1a moves the story forward."), std::string::npos);
    EXPECT_NE(p.user.find("Subplot 1b moves the story forward."), std::string::npos);
}

TEST(Expansion, OutOfOrderAndUnknownLabels) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    const auto labels = outline.subplot_labels();
    try {
        build_expansion_context(outline, cast, {}, labels[2], {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfOrderExpansion);
    }
    auto wrong = chapters_for(outline, 2);
    std::swap(wrong[0], wrong[1]);
    EXPECT_THROW(build_expansion_context(outline, cast, wrong, labels[2], {}), Error);
    try {
        build_expansion_context(outline, cast, {}, PlotLabel::sub(5, 0), {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
    }
    EXPECT_THROW(build_expansion_context(outline, cast, {}, labels[0], {-1}), Error);
}

TEST(Expansion, ExpandAllCheckpointsAndResumes) {
    TempDir dir;
    CheckpointStore store(dir.path());
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    auto backend = std::make_shared<ScriptedBackend>([](const ChatRequest&, std::size_t i) {
        return "<chapter>Chapter number " + std::to_string(i) + ".</chapter>";
    });
    Gateway gw(backend);
    StageEnv env;
    env.gateway = &gw;
    env.story_id = "s";
    env.store = &store;
    const auto chapters = expand_all(env, outline, cast, sample_storyline(), {});
    ASSERT_EQ(chapters.size(), 4u);
    EXPECT_EQ(backend->call_count(), 4u);
    EXPECT_TRUE(store.exists("chapter_2b.tags"));

    store.remove("chapter_2a.tags");
    store.remove("chapter_2b.tags");
    const auto again = expand_all(env, outline, cast, sample_storyline(), {});
    EXPECT_EQ(backend->call_count(), 6u);
    EXPECT_EQ(again[0], chapters[0]);
    EXPECT_EQ(again[1], chapters[1]);
}
