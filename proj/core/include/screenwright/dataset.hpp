#pragma once

// Storyline corpus: synthesis with a chat model, on-disk layout and statistics.

#include "screenwright/gateway.hpp"
#include "screenwright/story.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace screenwright {

struct SynthConfig {
    std::vector<Genre> genres{all_genres().begin(), all_genres().end()};
    std::size_t per_genre = 10;
    std::size_t target_words = 120;
    GenParams params;

    void validate() const;
};

struct StorylineEntry {
    std::string id;  // "<genre_slug>_<nn>"
    Storyline storyline;

    bool operator==(const StorylineEntry& other) const {
        return id == other.id && storyline.genre == other.storyline.genre &&
               storyline.text == other.storyline.text;
    }
};

// Out-of-bounds lengths get one regeneration; a second miss is accepted and
// noted in `warnings`.
Storyline synthesize_storyline(Gateway& gateway, Genre genre, const SynthConfig& config,
                               const std::string& story_id,
                               std::vector<std::string>* warnings = nullptr);

std::vector<StorylineEntry> synthesize_dataset(Gateway& gateway, const SynthConfig& config,
                                               std::vector<std::string>* warnings = nullptr);

struct GenreStats {
    std::size_t count = 0;
    double avg_words = 0;
    std::size_t min_words = 0;
    std::size_t max_words = 0;
};

struct DatasetStats {
    std::map<Genre, GenreStats> by_genre;
    GenreStats total;
};

DatasetStats dataset_stats(const std::vector<StorylineEntry>& entries);
std::string format_dataset_stats(const DatasetStats& stats);

// Layout: <dir>/<id>.txt with "Genre: <name>" on the first line, then the text.
void write_dataset(const std::filesystem::path& dir, const std::vector<StorylineEntry>& entries);
std::vector<StorylineEntry> read_dataset(const std::filesystem::path& dir);

std::string storyline_file_text(const Storyline& storyline);
// Inverse of storyline_file_text. A file without a genre line is read as Drama.
Storyline parse_storyline_file(std::string_view text);

} // namespace screenwright
