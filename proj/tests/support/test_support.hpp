#pragma once

#include "screenwright/codec.hpp"
#include "screenwright/gateway.hpp"
#include "screenwright/story.hpp"
#include "screenwright/tags.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace screenwright::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view tag = "sw");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::filesystem::path fixtures_dir();
std::filesystem::path demo_dir();

Storyline sample_storyline(Genre genre = Genre::Drama);
CharacterSet sample_cast(std::size_t n = 4);
// `tops` top plots with `subs` subplots each; subplot k involves cast members k and k+1.
Outline sample_outline(const CharacterSet& cast, int tops = 2, int subs = 2);

struct CorpusDoc {
    std::filesystem::path file;
    const TagSchema* schema = nullptr;
};

// tests/fixtures/corpus/<kind>__<name>.tags; <kind> picks the schema.
std::vector<CorpusDoc> corpus();
const TagSchema* schema_for(std::string_view kind);

// Stand-alone replies in each wire format.
std::string characters_reply(const std::vector<Character>& cast);
std::string advice_reply(std::string_view body);

} // namespace screenwright::testing
