#include "screenwright/synthetic_backend.hpp"
#include "screenwright/prompts.hpp"
#include "screenwright/story.hpp"
#include "screenwright/tags.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

namespace screenwright {

std::uint64_t fnv1a(std::string_view text, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ScriptedBackend --------------------------------------------------------------

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies)
    : responder_([replies = std::move(replies)](const ChatRequest&, std::size_t i) {
          if (i >= replies.size()) {
              throw Error(ErrorCode::TransportError, "scripted backend has no reply left");
          }
          return replies[i];
      }) {}

ScriptedBackend::ScriptedBackend(Responder responder) : responder_(std::move(responder)) {}

std::string ScriptedBackend::complete(const ChatRequest& request) {
    std::size_t index = 0;
    {
        std::lock_guard lock(mutex_);
        index = requests_.size();
        requests_.push_back(request);
    }
    return responder_(request, index);
}

std::vector<ChatRequest> ScriptedBackend::requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
}

std::size_t ScriptedBackend::call_count() const {
    std::lock_guard lock(mutex_);
    return requests_.size();
}

// SyntheticBackend -------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 12> kFirstNames = {
    "Iris", "Maxwell", "Amara", "Dorothy", "Emma", "Victor",
    "Lena", "Tomas", "Grace", "Julian", "Nadia", "Owen"};
constexpr std::array<std::string_view, 12> kSurnames = {
    "Nemo", "Carter", "Patel", "Smith", "Taylor", "Hale",
    "Moreau", "Okafor", "Lindqvist", "Reyes", "Brennan", "Sato"};
constexpr std::array<std::string_view, 6> kRoles = {
    "a stubborn investigator", "a weary mentor", "an ambitious rival",
    "a loyal friend with a secret", "a charming outsider", "a reluctant heir"};
constexpr std::array<std::string_view, 8> kScenes = {
    "the harbor warehouse", "a rooftop garden", "the old observatory", "a crowded night market",
    "the family kitchen", "an abandoned train station", "the council chamber", "a lakeside cabin"};
constexpr std::array<std::string_view, 6> kGuides = {
    "{a} steps forward and confronts {b} about the missing letter.",
    "{a} hesitates, then admits a painful truth to {b}.",
    "{a} searches the room for a clue while {b} keeps watch.",
    "{a} laughs nervously and tries to change the subject.",
    "{a} makes a quiet promise to {b}.",
    "{a} refuses to back down and raises the stakes."};
constexpr std::array<std::string_view, 6> kLines = {
    "We can't keep pretending this never happened.",
    "Tell me what you saw that night.",
    "If we go now, there is still time.",
    "I trusted you, and you knew all along.",
    "Stay close. Whatever happens, stay close.",
    "This ends tonight, one way or another."};
constexpr std::array<std::string_view, 6> kTones = {
    "firmly", "softly", "urgently", "with a bitter smile", "cautiously", "in a whisper"};

std::string fill(std::string_view pattern, std::string_view a, std::string_view b) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern.compare(i, 3, "{a}") == 0) {
            out += a;
            i += 2;
        } else if (pattern.compare(i, 3, "{b}") == 0) {
            out += b;
            i += 2;
        } else {
            out += pattern[i];
        }
    }
    return out;
}

// Bodies of every <tag>...</tag> in `text`, in order.
std::vector<std::string> blocks(std::string_view text, std::string_view tag) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find(open, pos)) != std::string_view::npos) {
        const auto start = pos + open.size();
        // prose mentions look like "(<scene>)"
        if (pos > 0 && text[pos - 1] == '(' && start < text.size() && text[start] == ')') {
            pos = start;
            continue;
        }
        const auto end = text.find(close, start);
        if (end == std::string_view::npos) {
            break;
        }
        out.emplace_back(trim(text.substr(start, end - start)));
        pos = end + close.size();
    }
    return out;
}

std::optional<std::string> first_block(std::string_view text, std::string_view tag) {
    auto all = blocks(text, tag);
    if (all.empty()) {
        return std::nullopt;
    }
    return all.front();
}

std::optional<std::string> last_block(std::string_view text, std::string_view tag) {
    auto all = blocks(text, tag);
    if (all.empty()) {
        return std::nullopt;
    }
    return all.back();
}

std::string_view after(std::string_view text, std::string_view marker) {
    const auto pos = text.find(marker);
    return pos == std::string_view::npos ? text : text.substr(pos + marker.size());
}

std::string clean_scene(std::string scene) {
    std::replace(scene.begin(), scene.end(), ';', ',');
    while (!scene.empty() && scene.back() == '.') {
        scene.pop_back();
    }
    return scene.empty() ? std::string("an unmarked room") : scene;
}

std::size_t user_turns(const ChatRequest& r) {
    return static_cast<std::size_t>(std::count_if(
        r.turns.begin(), r.turns.end(), [](const ChatTurn& t) { return t.role == Role::User; }));
}

std::string storyline(Genre genre, std::size_t target, std::uint64_t h) {
    const std::string a = std::string(kFirstNames[h % kFirstNames.size()]) + " " +
                          std::string(kSurnames[(h >> 8) % kSurnames.size()]);
    const std::string place(kScenes[(h >> 16) % kScenes.size()]);
    const std::string kind(to_string(genre));
    std::vector<std::string> sentences = {
        a + " returns to " + place + " after ten years away, hoping to settle an old debt.",
        "What begins as a quiet visit turns into a " + kind +
            " story when a stranger arrives with a letter that should not exist.",
        "The letter names three people who were present on the night everything fell apart.",
        "Each of them remembers that night differently, and each has a reason to lie.",
        a + " must decide whom to trust before the truth costs more than it is worth.",
        "Old friendships are tested, new alliances form, and a secret buried in " + place +
            " slowly comes to light.",
        "By the final confrontation, nobody is who they seemed to be at the start.",
    };
    std::string out;
    std::size_t i = 0;
    while (word_count(out) < target) {
        if (!out.empty()) {
            out += ' ';
        }
        out += sentences[i % sentences.size()];
        ++i;
    }
    return out;
}

std::vector<std::string> invent_names(std::uint64_t h) {
    const std::size_t count = 3 + h % 2;
    std::vector<std::string> out;
    for (std::size_t i = 0; out.size() < count; ++i) {
        const auto first = kFirstNames[(h + i * 5) % kFirstNames.size()];
        const auto last = kSurnames[((h >> 12) + i * 7) % kSurnames.size()];
        std::string name = std::string(first) + " " + std::string(last);
        if (std::find(out.begin(), out.end(), name) == out.end()) {
            out.push_back(std::move(name));
        }
    }
    return out;
}

std::string characters_reply(const ChatRequest& r, std::uint64_t h) {
    std::vector<std::string> names;
    std::vector<std::string> intros;
    // Revisions keep the cast of the previous reply and deepen each introduction.
    if (r.turns.size() >= 2) {
        const auto& prev = r.turns[r.turns.size() - 2].content;
        names = blocks(prev, "full_name");
        intros = blocks(prev, "character_introduction");
        const auto& advice = r.turns.back().content;
        for (auto& intro : intros) {
            intro += " Revised: " + (advice.find("motivation") != std::string::npos
                                         ? std::string("a clearer personal motivation now drives every choice.")
                                         : std::string("the relationships with the others are sharper."));
        }
    } else {
        names = invent_names(h);
        for (std::size_t i = 0; i < names.size(); ++i) {
            intros.push_back(names[i] + " is " + std::string(kRoles[(h + i) % kRoles.size()]) +
                             ", drawn into the story by a debt that cannot be repaid.");
        }
    }
    std::ostringstream out;
    out << "<characters>\n";
    for (std::size_t i = 0; i < names.size() && i < intros.size(); ++i) {
        out << "<character_" << i + 1 << ">\n<full_name>" << names[i] << "</full_name>\n"
            << "<character_introduction>" << intros[i] << "</character_introduction>\n"
            << "</character_" << i + 1 << ">\n";
    }
    out << "</characters>";
    return out.str();
}

std::string advice_reply(const ChatRequest& r, bool outline) {
    if (user_turns(r) > 1) {
        return "<advice>None</advice>";
    }
    return outline ? "<advice>\nThe middle of the outline needs a clearer turning point, and the "
                     "ending should resolve the central secret.\n</advice>"
                   : "<advice>\nExplore the motivations of each character in more detail and make "
                     "their relationships less simplistic.\n</advice>";
}

std::string outline_reply(const ChatRequest& r, std::uint64_t h) {
    const auto names = blocks(r.turns.front().content, "full_name");
    if (names.empty()) {
        return "I need a list of characters first.";
    }
    const std::size_t round = user_turns(r) - 1;
    const std::string revised = round > 0 ? " The stakes are raised as the truth draws closer." : "";
    const std::size_t tops = 2;
    const std::size_t subs = 2;
    std::ostringstream out;
    out << "<outline>\n";
    std::size_t k = 0;
    for (std::size_t t = 1; t <= tops; ++t) {
        std::vector<std::string> top_cast;
        std::vector<std::string> lines;
        for (std::size_t s = 0; s < subs; ++s, ++k) {
            const auto& a = names[k % names.size()];
            const auto& b = names[(k + 1) % names.size()];
            for (const auto* n : {&a, &b}) {
                if (std::find(top_cast.begin(), top_cast.end(), *n) == top_cast.end()) {
                    top_cast.push_back(*n);
                }
            }
            std::ostringstream sub;
            const char letter = static_cast<char>('a' + s);
            sub << "<plot_" << t << letter << ">\n"
                << fill(kGuides[(h + k) % kGuides.size()], a, b) << revised << "\n"
                << "Scene: " << kScenes[(h + k) % kScenes.size()] << ". Characters: " << a << ", "
                << b << "\n</plot_" << t << letter << ">\n";
            lines.push_back(sub.str());
        }
        out << "<plot_" << t << ">\n"
            << (t == tops ? "Everything converges and the secret is finally resolved."
                          : "Old loyalties are tested as the letter resurfaces.")
            << revised << "\nScene: Characters: ";
        for (std::size_t i = 0; i < top_cast.size(); ++i) {
            out << (i ? ", " : "") << top_cast[i];
        }
        out << "\n</plot_" << t << ">\n";
        for (const auto& l : lines) {
            out << l;
        }
    }
    out << "</outline>";
    return out.str();
}

std::string chapter_reply(const ChatRequest& r) {
    const auto& user = r.turns.back().content;
    const std::string plot = first_block(user, "plot_point").value_or("Something happens.");
    const auto names = blocks(first_block(user, "characters").value_or(""), "full_name");
    std::ostringstream out;
    out << "<chapter>\n" << plot;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << ' ' << names[i]
            << (i % 2 == 0 ? " feels the weight of the moment and speaks first."
                           : " listens, weighing every word before answering.");
    }
    if (user.find(prompts::kLastPlotSentence) != std::string::npos) {
        out << " When the dust settles, the story reaches its end.";
    }
    out << "\n</chapter>";
    return out.str();
}

std::string draft_reply(const ChatRequest& r, std::uint64_t h) {
    const auto& user = r.turns.back().content;
    const auto scene = clean_scene(last_block(user, "scene").value_or(""));
    const auto names = blocks(last_block(user, "involved_characters").value_or(""), "full_name");
    if (names.empty()) {
        return "<script_draft>\n</script_draft>";
    }
    std::ostringstream out;
    out << "<script_draft>\n<scene_heading>\n" << (h % 3 == 0 ? "EXT." : "INT.") << "; " << scene
        << "; " << (h % 2 == 0 ? "DAY." : "NIGHT.") << "\n</scene_heading>\n";
    std::size_t k = 0;
    for (std::size_t round = 0; round < 2; ++round) {
        for (std::size_t i = 0; i < names.size(); ++i, ++k) {
            const auto& a = names[i];
            const auto& b = names[(i + 1) % names.size()];
            out << "<character_performance>\n<character>" << a << "</character>\n<performance>"
                << fill(kGuides[(h + k) % kGuides.size()], a, b)
                << "</performance>\n</character_performance>\n";
        }
    }
    out << "</script_draft>";
    return out.str();
}

std::string performance_block(std::string_view name, std::string_view guide, std::size_t k,
                              std::uint64_t h) {
    std::ostringstream out;
    out << "<detailed_performance>\n<character>" << name << "</character>\n";
    if (k % 3 == 0) {
        out << "<action>" << guide << "</action>\n<parenthetical></parenthetical>\n"
            << "<dialogue></dialogue>\n";
    } else {
        out << "<action>" << (k % 3 == 1 ? std::string(guide) : std::string()) << "</action>\n"
            << "<parenthetical>(" << kTones[(h + k) % kTones.size()] << ")</parenthetical>\n"
            << "<dialogue>" << kLines[(h + k) % kLines.size()] << "</dialogue>\n";
    }
    out << "</detailed_performance>";
    return out.str();
}

std::string act_reply(const ChatRequest& r, std::uint64_t h) {
    const auto role = first_block(r.system, "role_name").value_or("Unknown");
    const auto& user = r.turns.back().content;
    const auto guide =
        first_block(after(user, "Now, the performance guide"), "performance_guide").value_or("");
    const auto history = last_block(user, "act_history").value_or("");
    const std::size_t k = blocks(history, "detailed_performance").size();
    return performance_block(role, guide, k, h);
}

std::string direct_reply(const ChatRequest& r, std::uint64_t h) {
    const auto& user = r.turns.back().content;
    std::ostringstream out;
    out << "<episode>\n";
    std::size_t k = 0;
    for (const auto& event : blocks(user, "character_performance")) {
        const auto name = first_block(event, "character").value_or("");
        const auto guide = first_block(event, "performance").value_or("");
        out << performance_block(name, guide, k++, h) << "\n";
    }
    out << "</episode>";
    return out.str();
}

std::string plan_then_write_reply(const ChatRequest& r, std::uint64_t h) {
    const auto& user = r.turns.back().content;
    const auto real = after(user, "Now write the episode");
    const auto scene = clean_scene(first_block(real, "scene").value_or(""));
    const auto names = blocks(first_block(real, "involved_characters").value_or(""), "full_name");
    std::ostringstream out;
    out << "<episode>\n<scene_heading>INT.; " << scene << "; DAY.</scene_heading>\n";
    std::size_t k = 0;
    for (std::size_t round = 0; round < 2; ++round) {
        for (std::size_t i = 0; i < names.size(); ++i, ++k) {
            const auto guide =
                fill(kGuides[(h + k) % kGuides.size()], names[i], names[(i + 1) % names.size()]);
            out << performance_block(names[i], guide, k, h) << "\n";
        }
    }
    out << "</episode>";
    return out.str();
}

std::string judge_reply(std::uint64_t h) {
    static constexpr std::array<std::string_view, 5> kVerdicts = {"A", "B", "A", "B", "TIE"};
    const auto v = kVerdicts[h % kVerdicts.size()];
    return "<explanation>Both screenplays follow the summary; the deciding factor is the "
           "vividness of the exchanges.</explanation>\n<verdict>" +
           std::string(v) + "</verdict>";
}

std::string synthesis_reply(const ChatRequest& r, std::uint64_t h) {
    const auto& user = r.turns.back().content;
    auto genre_text = after(user, "original ");
    genre_text = genre_text.substr(0, genre_text.find(" movie"));
    const Genre genre = parse_genre(genre_text).value_or(Genre::Drama);
    std::size_t target = 120;
    const auto approx = after(user, "approximately ");
    if (approx.size() != user.size()) {
        target = std::strtoul(std::string(approx.substr(0, approx.find(' '))).c_str(), nullptr, 10);
    }
    return "<storyline>\n" + storyline(genre, target, h) + "\n</storyline>";
}

} // namespace

std::string SyntheticBackend::complete(const ChatRequest& request) {
    request.validate();
    const std::uint64_t h = fnv1a(request.turns.front().content, fnv1a(request.system) ^ seed_);
    const std::string_view sys = request.system;
    if (sys == prompts::kSynthesisSystem) {
        return synthesis_reply(request, h);
    }
    if (sys == prompts::kCharacterWriterSystem) {
        return characters_reply(request, h);
    }
    if (sys == prompts::kCharacterEditorSystem) {
        return advice_reply(request, false);
    }
    if (sys == prompts::kOutlineWriterSystem) {
        return outline_reply(request, h);
    }
    if (sys == prompts::kOutlineEditorSystem) {
        return advice_reply(request, true);
    }
    if (sys == prompts::kExpansionSystem) {
        return chapter_reply(request);
    }
    if (sys == prompts::kDraftSystem) {
        return draft_reply(request, h);
    }
    if (sys == prompts::kDirectEpisodeSystem) {
        return direct_reply(request, h);
    }
    if (sys == prompts::kPlanThenWriteSystem) {
        return plan_then_write_reply(request, h);
    }
    if (sys.starts_with(prompts::kJudgeSystemHead)) {
        return judge_reply(fnv1a(request.last_user(), h));
    }
    if (sys.find(prompts::kActorSystemTail) != std::string_view::npos) {
        return act_reply(request, fnv1a(request.last_user(), h));
    }
    return "I am not sure what you are asking for.";
}

} // namespace screenwright
