#include "screenwright/dataset.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace screenwright {

namespace fs = std::filesystem;

void SynthConfig::validate() const {
    if (genres.empty()) {
        throw Error(ErrorCode::ConfigError, "synthesis needs at least one genre");
    }
    if (per_genre == 0 || target_words == 0) {
        throw Error(ErrorCode::ConfigError, "per_genre and target_words must be positive");
    }
    params.validate();
}

Storyline synthesize_storyline(Gateway& gateway, Genre genre, const SynthConfig& config,
                               const std::string& story_id, std::vector<std::string>* warnings) {
    const auto prompt = prompts::storyline_synthesis(genre, config.target_words);
    const ChatRequest req{prompt.system, {{Role::User, prompt.user}}, config.params};
    const auto once = [&] {
        auto got = gateway.complete_as<Storyline>(
            req, schema::storyline(), {Stage::Synth, story_id},
            [genre](const TagDocument& doc) {
                Storyline s{genre, extract_storyline_text(doc)};
                s.validate();
                return s;
            },
            {ErrorCode::InvalidValue});
        return got.value;
    };
    Storyline s = once();
    if (s.within_soft_bounds()) {
        return s;
    }
    s = once();
    if (!s.within_soft_bounds() && warnings) {
        warnings->push_back(story_id + ": accepted storyline of " + std::to_string(word_count(s.text)) +
                            " words");
    }
    return s;
}

namespace {

std::string entry_id(Genre genre, std::size_t n) {
    std::ostringstream id;
    id << genre_slug(genre) << '_' << std::setw(2) << std::setfill('0') << n;
    return id.str();
}

} // namespace

std::vector<StorylineEntry> synthesize_dataset(Gateway& gateway, const SynthConfig& config,
                                               std::vector<std::string>* warnings) {
    config.validate();
    std::vector<StorylineEntry> out;
    for (Genre g : config.genres) {
        for (std::size_t i = 1; i <= config.per_genre; ++i) {
            const std::string id = entry_id(g, i);
            out.push_back({id, synthesize_storyline(gateway, g, config, id, warnings)});
        }
    }
    return out;
}

DatasetStats dataset_stats(const std::vector<StorylineEntry>& entries) {
    DatasetStats stats;
    std::map<Genre, std::size_t> sums;
    std::size_t total = 0;
    const auto add = [](GenreStats& g, std::size_t words) {
        g.min_words = g.count == 0 ? words : std::min(g.min_words, words);
        g.max_words = std::max(g.max_words, words);
        ++g.count;
    };
    for (const auto& e : entries) {
        const std::size_t words = word_count(e.storyline.text);
        add(stats.by_genre[e.storyline.genre], words);
        add(stats.total, words);
        sums[e.storyline.genre] += words;
        total += words;
    }
    for (auto& [genre, g] : stats.by_genre) {
        g.avg_words = static_cast<double>(sums[genre]) / static_cast<double>(g.count);
    }
    if (stats.total.count > 0) {
        stats.total.avg_words = static_cast<double>(total) / static_cast<double>(stats.total.count);
    }
    return stats;
}

std::string format_dataset_stats(const DatasetStats& stats) {
    std::ostringstream out;
    out << "genre,count,avg_words,min_words,max_words\n";
    const auto row = [&](std::string_view name, const GenreStats& g) {
        out << name << ',' << g.count << ',' << std::fixed << std::setprecision(1) << g.avg_words
            << ',' << g.min_words << ',' << g.max_words << '\n';
    };
    for (const auto& [genre, g] : stats.by_genre) {
        row(genre_slug(genre), g);
    }
    row("all", stats.total);
    return out.str();
}

std::string storyline_file_text(const Storyline& storyline) {
    return "Genre: " + std::string(to_string(storyline.genre)) + "\n" + storyline.text + "\n";
}

Storyline parse_storyline_file(std::string_view text) {
    Storyline s;
    constexpr std::string_view kPrefix = "Genre:";
    if (text.substr(0, kPrefix.size()) == kPrefix) {
        const auto eol = text.find('\n');
        const auto name = trim(text.substr(kPrefix.size(), eol - kPrefix.size()));
        const auto genre = parse_genre(name);
        if (!genre) {
            throw Error(ErrorCode::InvalidValue, "unknown genre '" + std::string(name) + "'");
        }
        s.genre = *genre;
        text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    }
    s.text = std::string(trim(text));
    s.validate();
    return s;
}

void write_dataset(const fs::path& dir, const std::vector<StorylineEntry>& entries) {
    fs::create_directories(dir);
    std::ofstream index(dir / "index.tsv", std::ios::binary);
    index << "id\tgenre\twords\n";
    for (const auto& e : entries) {
        std::ofstream f(dir / (e.id + ".txt"), std::ios::binary);
        f << storyline_file_text(e.storyline);
        if (!f) {
            throw Error(ErrorCode::Io, "cannot write " + (dir / (e.id + ".txt")).string());
        }
        index << e.id << '\t' << genre_slug(e.storyline.genre) << '\t'
              << word_count(e.storyline.text) << '\n';
    }
    if (!index) {
        throw Error(ErrorCode::Io, "cannot write index in " + dir.string());
    }
}

std::vector<StorylineEntry> read_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw Error(ErrorCode::Io, "no dataset directory " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<StorylineEntry> out;
    for (const auto& p : files) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        out.push_back({p.stem().string(), parse_storyline_file(ss.str())});
    }
    return out;
}

} // namespace screenwright
