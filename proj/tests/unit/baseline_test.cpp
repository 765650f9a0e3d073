#include "screenwright/baseline.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/screenplay.hpp"
#include "screenwright/synthetic_backend.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace screenwright;
using namespace screenwright::testing;

namespace {

std::string episode_reply(const Subplot& sub, std::string_view line) {
    Episode ep{sub.label, parse_scene_heading("INT.; " + sub.scene + "; DAY."),
               {DetailedPerformance(sub.involved_characters.front(), "", "", std::string(line))}};
    return render(episode_document(ep));
}

} // namespace

TEST(Baseline, PromptCarriesPreviousEpisodeAndExample) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    const auto subs = outline.subplots();
    const auto first = plan_then_write_prompt(sample_storyline(), cast, outline, *subs[0], nullptr);
    Episode prev{subs[0]->label, parse_scene_heading("INT.; Location 1a; DAY."),
                 {DetailedPerformance("Walter Greene", "", "", "The light stays on.")}};
    const auto second = plan_then_write_prompt(sample_storyline(), cast, outline, *subs[1], &prev);
    EXPECT_EQ(first.user.find("The light stays on."), std::string::npos);
    EXPECT_NE(second.user.find("The light stays on."), std::string::npos);
    EXPECT_NE(second.user.find("Subplot 1b moves the story forward."), std::string::npos);
    EXPECT_NE(first.user.find(std::string(prompts::plan_then_write_example()).substr(0, 40)),
              std::string::npos);
}

TEST(Baseline, OneCallPerSubplotInOrder) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    const auto subs = outline.subplots();
    auto backend = std::make_shared<ScriptedBackend>([&](const ChatRequest&, std::size_t i) {
        return episode_reply(*subs[i], "line " + std::to_string(i));
    });
    Gateway gw(backend);
    TempDir dir;
    CheckpointStore store(dir.path());
    StageEnv env;
    env.gateway = &gw;
    env.story_id = "s";
    env.store = &store;
    const auto eps = plan_then_write_episodes(env, sample_storyline(), cast, outline);
    ASSERT_EQ(eps.size(), 4u);
    EXPECT_EQ(backend->call_count(), 4u);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        EXPECT_EQ(eps[i].subplot_label, subs[i]->label);
    }
    EXPECT_TRUE(store.exists(episode_file_name(subs[3]->label)));
    const auto reqs = backend->requests();
    EXPECT_NE(reqs[2].last_user().find("line 1"), std::string::npos);
    // resume serves stored episodes without calls
    const auto again = plan_then_write_episodes(env, sample_storyline(), cast, outline);
    EXPECT_EQ(again, eps);
    EXPECT_EQ(backend->call_count(), 4u);
}

TEST(Baseline, ForeignCharacterIsNotRetried) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 1, 1);
    Subplot other = *outline.subplots()[0];
    other.involved_characters = {"Tobias Ward"};
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{episode_reply(other, "hi")});
    Gateway gw(backend);
    StageEnv env;
    env.gateway = &gw;
    try {
        plan_then_write_episodes(env, sample_storyline(), cast, outline);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ForeignCharacter);
    }
}
