#include "screenwright/screenplay.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/synthetic_backend.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace screenwright;
using namespace screenwright::testing;

namespace {

std::string performance_reply(std::string_view name, std::string_view dialogue) {
    return "<detailed_performance>\n<character>" + std::string(name) + "</character>\n<action>" +
           std::string(name) + " turns.</action>\n<parenthetical></parenthetical>\n<dialogue>" +
           std::string(dialogue) + "</dialogue>\n</detailed_performance>";
}

std::size_t count_of(std::string_view text, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

ScriptDraft four_event_draft(const PlotLabel& label) {
    const auto h = parse_scene_heading("INT.; The lighthouse; NIGHT.");
    return {label,
            h,
            {{"Walter Greene", "guide one"},
             {"Clara Greene", "guide two"},
             {"Walter Greene", "guide three"},
             {"Clara Greene", "guide four"}}};
}

std::vector<Character> two_cast() {
    const auto cast = sample_cast(2 + 1);
    return {cast.characters()[0], cast.characters()[1]};
}

// Actor replies as whoever the system prompt names.
ScriptedBackend::Responder echo_actor() {
    return [](const ChatRequest& req, std::size_t i) {
        const std::string name =
            req.system.find("Walter Greene") != std::string::npos ? "Walter Greene" : "Clara Greene";
        return performance_reply(name, "line " + std::to_string(i));
    };
}

StageEnv env_for(Gateway& gw) {
    StageEnv env;
    env.gateway = &gw;
    env.story_id = "s";
    return env;
}

} // namespace

TEST(Screenplay, ActorsShareTheEpisodeHistory) {
    auto backend = std::make_shared<ScriptedBackend>(echo_actor());
    Gateway gw(backend);
    const auto ep = role_play_episode(env_for(gw), four_event_draft(PlotLabel::sub(1, 0)), two_cast());
    ASSERT_EQ(ep.performances.size(), 4u);
    const auto reqs = backend->requests();
    ASSERT_EQ(reqs.size(), 4u);
    const std::size_t base = count_of(reqs[0].last_user(), "<performance_guide>");
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        // event i sees every earlier event of the episode, whichever actor played it
        EXPECT_EQ(count_of(reqs[i].last_user(), "<performance_guide>") - base, i) << i;
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_NE(reqs[i].last_user().find("<dialogue>line " + std::to_string(j) + "</dialogue>"),
                      std::string::npos);
        }
    }
    EXPECT_EQ(ep.performances[2].character(), "Walter Greene");
    EXPECT_EQ(ep.scene_heading.location, "The lighthouse");
}

TEST(Screenplay, HistoryDoesNotCarryAcrossEpisodes) {
    auto backend = std::make_shared<ScriptedBackend>(echo_actor());
    Gateway gw(backend);
    role_play_episode(env_for(gw), four_event_draft(PlotLabel::sub(1, 0)), two_cast());
    role_play_episode(env_for(gw), four_event_draft(PlotLabel::sub(1, 1)), two_cast());
    const auto reqs = backend->requests();
    ASSERT_EQ(reqs.size(), 8u);
    EXPECT_EQ(reqs[4].last_user(), reqs[0].last_user());
}

TEST(Screenplay, RoleMismatchGetsOneCorrectiveRetry) {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{
        performance_reply("Clara Greene", "wrong"), performance_reply("Walter Greene", "right")});
    Gateway gw(backend);
    ActorContext actor{"Walter Greene", "keeper", "", {}};
    const DraftEvent event{"Walter Greene", "guide"};
    const auto heading = parse_scene_heading("INT.; Room; DAY.");
    const auto p = perform_event(env_for(gw), actor, event, heading);
    EXPECT_EQ(p.dialogue(), "right");
    const auto reqs = backend->requests();
    ASSERT_EQ(reqs.size(), 2u);
    EXPECT_EQ(reqs[1].last_user().rfind(reqs[0].last_user(), 0), 0u);
    EXPECT_GT(reqs[1].last_user().size(), reqs[0].last_user().size());
}

TEST(Screenplay, PersistentRoleMismatchFails) {
    auto backend = std::make_shared<ScriptedBackend>(
        [](const ChatRequest&, std::size_t) { return performance_reply("Clara Greene", "no"); });
    Gateway gw(backend, nullptr, nullptr, 0);
    ActorContext actor{"Walter Greene", "keeper", "", {}};
    try {
        perform_event(env_for(gw), actor, {"Walter Greene", "guide"}, parse_scene_heading("INT.; R; DAY."));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RoleMismatch);
    }
    EXPECT_EQ(backend->call_count(), 2u);
}

TEST(Screenplay, ParentheticalWithoutDialogueIsRejected) {
    EXPECT_THROW(DetailedPerformance("Walter Greene", "", "softly", ""), Error);
    const auto reply =
        "<detailed_performance>\n<character>Walter Greene</character>\n<action>He sits.</action>\n"
        "<parenthetical>(softly)</parenthetical>\n<dialogue></dialogue>\n</detailed_performance>";
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{reply, reply, reply});
    Gateway gw(backend);
    ActorContext actor{"Walter Greene", "keeper", "", {}};
    try {
        perform_event(env_for(gw), actor, {"Walter Greene", "guide"}, parse_scene_heading("INT.; R; DAY."));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
}

TEST(Screenplay, DraftRejectsForeignCharacters) {
    const std::string reply =
        "<script_draft>\n<scene_heading>INT.; Room; DAY.</scene_heading>\n<character_performance>\n"
        "<character>Marcus Vell</character>\n<performance>He smiles.</performance>\n"
        "</character_performance>\n</script_draft>";
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{reply});
    Gateway gw(backend);
    try {
        draft_script(env_for(gw), {PlotLabel::sub(1, 0), "Some chapter."}, "Room", two_cast());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ForeignCharacter);
    }
    EXPECT_EQ(backend->call_count(), 1u);
}

TEST(Screenplay, DirectEpisodeKeepsDraftHeading) {
    const auto draft = four_event_draft(PlotLabel::sub(2, 0));
    Episode ep{draft.subplot_label, parse_scene_heading("EXT.; Elsewhere; DAY."),
               {DetailedPerformance("Walter Greene", "He waits.", "", "")}};
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{render(episode_document(ep))});
    Gateway gw(backend);
    const auto got = direct_episode(env_for(gw), draft, two_cast());
    EXPECT_EQ(got.scene_heading, draft.scene_heading);
    EXPECT_EQ(got.performances.size(), 1u);
    EXPECT_EQ(backend->call_count(), 1u);
}

TEST(Screenplay, AssembleOrdersByOutline) {
    const auto cast = sample_cast(4);
    const auto outline = sample_outline(cast, 2, 2);
    std::vector<Episode> eps;
    for (const auto& l : outline.subplot_labels()) {
        eps.push_back({l, parse_scene_heading("INT.; R; DAY."),
                       {DetailedPerformance("Walter Greene", "x", "", "")}});
    }
    std::reverse(eps.begin(), eps.end());
    const auto sp = assemble_screenplay(outline, eps);
    EXPECT_EQ(sp.episodes.front().subplot_label, PlotLabel::sub(1, 0));
    EXPECT_EQ(sp.episodes.back().subplot_label, PlotLabel::sub(2, 1));

    const auto code_of = [&](std::vector<Episode> v) {
        try {
            assemble_screenplay(outline, std::move(v));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidValue;
    };
    auto missing = eps;
    missing.pop_back();
    EXPECT_EQ(code_of(missing), ErrorCode::MissingEpisode);
    auto dup = eps;
    dup.push_back(eps.front());
    EXPECT_EQ(code_of(dup), ErrorCode::DuplicateEpisode);
    auto unknown = eps;
    unknown.front().subplot_label = PlotLabel::sub(3, 0);
    EXPECT_EQ(code_of(unknown), ErrorCode::UnknownLabel);
}
