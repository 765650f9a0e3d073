#include "screenwright/script_text.hpp"
#include "screenwright/error.hpp"

#include <gtest/gtest.h>

using namespace screenwright;

namespace {

Episode porridge() {
    Episode ep;
    ep.subplot_label = PlotLabel::sub(1, 0);
    ep.scene_heading = parse_scene_heading("INT.; Inside Emma Taylor's room; DAY.");
    ep.performances = {
        DetailedPerformance("Dorothy Smith", "Dorothy Smith enters the room.", "", ""),
        DetailedPerformance("Dorothy Smith", "", "(cautiously, to Emma Taylor)",
                            "My miss, you still have to take care of your body."),
        DetailedPerformance("Emma Taylor", "Emma Taylor slams her bowl on the floor.",
                            "(capriciously)", "No no no, I just won't eat!")};
    return ep;
}

} // namespace

TEST(ScriptText, EpisodeLayout) {
    EXPECT_EQ(render_episode_text(porridge()),
              "INT.; Inside Emma Taylor's room; DAY.\n"
              "Dorothy Smith:\n"
              "[Dorothy Smith enters the room.]\n"
              "Dorothy Smith:\n"
              "(cautiously, to Emma Taylor)\n"
              "My miss, you still have to take care of your body.\n"
              "Emma Taylor:\n"
              "[Emma Taylor slams her bowl on the floor.]\n"
              "(capriciously)\n"
              "No no no, I just won't eat!");
}

TEST(ScriptText, ScreenplayRoundTrip) {
    Screenplay sp;
    sp.episodes = {porridge(), porridge()};
    sp.episodes[1].subplot_label = PlotLabel::sub(1, 1);
    const auto text = render_screenplay(sp);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_NE(text.find("\n\nINT."), std::string::npos);
    const auto back = parse_screenplay(text, {"Dorothy Smith", "Emma Taylor"},
                                       {PlotLabel::sub(1, 0), PlotLabel::sub(1, 1)});
    EXPECT_EQ(back, sp);
}

TEST(ScriptText, ParseRejectsUnknownSpeaker) {
    Screenplay sp;
    sp.episodes = {porridge()};
    EXPECT_THROW(parse_screenplay(render_screenplay(sp), {"Emma Taylor"}, {PlotLabel::sub(1, 0)}), Error);
}
