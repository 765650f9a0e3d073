#include "screenwright/dataset.hpp"
#include "screenwright/synthetic_backend.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace screenwright;
using namespace screenwright::testing;

namespace {

std::string storyline_reply(std::size_t words) {
    std::string text;
    for (std::size_t i = 0; i < words; ++i) {
        text += (i ? " w" : "w") + std::to_string(i);
    }
    return "<storyline>" + text + "</storyline>";
}

// Whitespace-split word count, independent of word_count().
std::size_t split_words(const std::string& s) {
    std::istringstream in(s);
    std::size_t n = 0;
    for (std::string w; in >> w;) ++n;
    return n;
}

} // namespace

TEST(Dataset, MockSynthesisFillsEveryGenre) {
    Gateway gw(std::make_shared<SyntheticBackend>(5));
    SynthConfig config;
    const auto entries = synthesize_dataset(gw, config);
    ASSERT_EQ(entries.size(), 60u);
    std::set<std::string> ids;
    for (const auto& e : entries) {
        ids.insert(e.id);
        EXPECT_FALSE(e.storyline.text.empty());
    }
    EXPECT_EQ(ids.size(), 60u);
    EXPECT_TRUE(ids.contains("science_fiction_10"));
    const auto stats = dataset_stats(entries);
    EXPECT_EQ(stats.by_genre.size(), 6u);
    for (const auto& [g, s] : stats.by_genre) {
        EXPECT_EQ(s.count, 10u);
    }
}

TEST(Dataset, StatsMatchIndependentCount) {
    std::vector<StorylineEntry> entries = {
        {"drama_01", {Genre::Drama, "one two three"}},
        {"drama_02", {Genre::Drama, "  one\ttwo \n three four five "}},
        {"horror_01", {Genre::Horror, "a b"}},
    };
    const auto stats = dataset_stats(entries);
    std::size_t total = 0;
    for (const auto& e : entries) total += split_words(e.storyline.text);
    EXPECT_DOUBLE_EQ(stats.total.avg_words, static_cast<double>(total) / 3.0);
    EXPECT_EQ(stats.total.min_words, 2u);
    EXPECT_EQ(stats.total.max_words, 5u);
    EXPECT_DOUBLE_EQ(stats.by_genre.at(Genre::Drama).avg_words, 4.0);
    const auto csv = format_dataset_stats(stats);
    EXPECT_NE(csv.find("drama,2,4.0,3,5"), std::string::npos);
    EXPECT_NE(csv.find("all,3,3.3,2,5"), std::string::npos);
}

TEST(Dataset, OutOfBoundsLengthIsRegeneratedOnce) {
    auto backend = std::make_shared<ScriptedBackend>(
        std::vector<std::string>{storyline_reply(10), storyline_reply(80)});
    Gateway gw(backend);
    std::vector<std::string> warnings;
    const auto s = synthesize_storyline(gw, Genre::Crime, SynthConfig{}, "crime_01", &warnings);
    EXPECT_EQ(word_count(s.text), 80u);
    EXPECT_TRUE(warnings.empty());

    auto short_backend = std::make_shared<ScriptedBackend>(
        std::vector<std::string>{storyline_reply(10), storyline_reply(12)});
    Gateway gw2(short_backend);
    const auto t = synthesize_storyline(gw2, Genre::Crime, SynthConfig{}, "crime_02", &warnings);
    EXPECT_EQ(word_count(t.text), 12u);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(short_backend->call_count(), 2u);
}

TEST(Dataset, FilesRoundTrip) {
    TempDir dir;
    Gateway gw(std::make_shared<SyntheticBackend>(1));
    SynthConfig config;
    config.per_genre = 2;
    const auto entries = synthesize_dataset(gw, config);
    write_dataset(dir.path(), entries);
    EXPECT_TRUE(std::filesystem::exists(dir / "index.tsv"));
    auto back = read_dataset(dir.path());
    auto sorted = entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    EXPECT_EQ(back, sorted);
}

TEST(Dataset, StorylineFileHeader) {
    const Storyline s{Genre::ScienceFiction, "A ship wakes up."};
    EXPECT_EQ(storyline_file_text(s), "Genre: Science Fiction\nA ship wakes up.\n");
    const auto back = parse_storyline_file(storyline_file_text(s));
    EXPECT_EQ(back.genre, Genre::ScienceFiction);
    EXPECT_EQ(back.text, s.text);
    EXPECT_EQ(parse_storyline_file("Just text.\n").genre, Genre::Drama);
    EXPECT_THROW(parse_storyline_file("Genre: Western\nText"), Error);
    EXPECT_THROW(parse_storyline_file("Genre: Horror\n   \n"), Error);
}

TEST(Dataset, ConfigValidation) {
    SynthConfig c;
    c.genres.clear();
    EXPECT_THROW(synthesize_dataset(*std::make_shared<Gateway>(std::make_shared<SyntheticBackend>()), c),
                 Error);
}
