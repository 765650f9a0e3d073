#include "screenwright/planning.hpp"
#include "screenwright/codec.hpp"
#include "screenwright/prompts.hpp"

#include <json.hpp>

namespace screenwright {

void PlanningConfig::validate() const {
    if (max_feedback_rounds < 0) {
        throw Error(ErrorCode::ConfigError, "max_feedback_rounds must be >= 0");
    }
    if (min_characters < 1 || min_characters > max_characters) {
        throw Error(ErrorCode::ConfigError, "need 1 <= min_characters <= max_characters");
    }
}

std::string characters_file_text(const CharacterSet& characters) {
    return render(characters_document(characters));
}

std::string outline_file_text(const Outline& outline) {
    return render(outline_document(outline));
}

namespace {

CallContext planning_call(const StageEnv& env) {
    return {Stage::Stage1_Planning, env.story_id};
}

ChatRequest request(std::string system, std::vector<ChatTurn> turns, const GenParams& params) {
    return ChatRequest{std::move(system), std::move(turns), params};
}

std::string cast_document(const CharacterSet& cast) {
    return render(characters_document(cast));
}

std::string_view artifact_name(RevisionTarget target) {
    return target == RevisionTarget::Characters ? "characters" : "outline";
}

void checkpoint_round(const StageEnv& env, const RevisionSession& s) {
    if (!env.store) {
        return;
    }
    const std::string name = std::string(artifact_name(s.target)) + "_r" +
                             std::to_string(s.rounds_completed) + ".tags";
    env.store->write(name, s.target == RevisionTarget::Characters
                               ? characters_file_text(*s.characters)
                               : outline_file_text(*s.outline));
}

// Writer call shared by first drafts and revisions: sends the history plus
// `user`, parses the artifact and appends both turns on success.
void writer_turn(const StageEnv& env, RevisionSession& s, std::string user) {
    auto turns = s.writer_history;
    turns.push_back({Role::User, user});
    const ChatRequest req = request(s.writer_system, turns, env.writer);
    std::string raw;
    if (s.target == RevisionTarget::Characters) {
        const auto min = s.config.min_characters;
        const auto max = s.config.max_characters;
        auto got = env.gateway->complete_as<CharacterSet>(
            req, schema::characters(), planning_call(env),
            [&](const TagDocument& doc) { return extract_characters(doc, min, max); },
            {ErrorCode::CardinalityOutOfRange, ErrorCode::DuplicateName, ErrorCode::InvalidValue});
        s.characters = std::move(got.value);
        raw = std::move(got.raw);
    } else {
        const CharacterSet& cast = *s.characters;
        auto got = env.gateway->complete_as<Outline>(
            req, schema::outline(), planning_call(env),
            [&](const TagDocument& doc) {
                OutlineOptions options;
                options.cast = &cast;
                return extract_outline(doc, options);
            },
            {ErrorCode::LabelGap, ErrorCode::OrphanSubplot, ErrorCode::EmptyTopPlot,
             ErrorCode::UnknownCharacterName, ErrorCode::InvalidLabel, ErrorCode::TooManySubplots,
             ErrorCode::InvalidValue});
        s.outline = std::move(got.value);
        raw = std::move(got.raw);
    }
    s.writer_history.push_back({Role::User, std::move(user)});
    s.writer_history.push_back({Role::Assistant, std::move(raw)});
}

std::string artifact_blocks(const RevisionSession& s) {
    return s.target == RevisionTarget::Characters ? render_character_blocks(s.characters->characters())
                                                  : render_plot_blocks(*s.outline);
}

} // namespace

RevisionSession character_session(const Storyline& storyline, const PlanningConfig& config) {
    config.validate();
    storyline.validate();
    RevisionSession s;
    s.target = RevisionTarget::Characters;
    s.writer_system = std::string(prompts::kCharacterWriterSystem);
    s.editor_system = std::string(prompts::kCharacterEditorSystem);
    s.storyline = storyline.text;
    s.config = config;
    return s;
}

RevisionSession outline_session(const Storyline& storyline, const CharacterSet& cast,
                                const PlanningConfig& config) {
    config.validate();
    storyline.validate();
    RevisionSession s;
    s.target = RevisionTarget::Outline;
    s.writer_system = std::string(prompts::kOutlineWriterSystem);
    s.editor_system = std::string(prompts::kOutlineEditorSystem);
    s.storyline = storyline.text;
    s.characters = cast;
    s.config = config;
    return s;
}

CharacterSet generate_characters(const StageEnv& env, RevisionSession& session) {
    if (session.target != RevisionTarget::Characters || !session.writer_history.empty()) {
        throw Error(ErrorCode::InvalidValue, "generate_characters needs a fresh character session");
    }
    writer_turn(env, session, prompts::character_generation(session.storyline).user);
    checkpoint_round(env, session);
    return *session.characters;
}

Outline generate_outline(const StageEnv& env, RevisionSession& session) {
    if (session.target != RevisionTarget::Outline || !session.writer_history.empty()) {
        throw Error(ErrorCode::InvalidValue, "generate_outline needs a fresh outline session");
    }
    writer_turn(env, session,
                prompts::outline_generation(session.storyline, cast_document(*session.characters)).user);
    checkpoint_round(env, session);
    return *session.outline;
}

Advice editor_feedback(const StageEnv& env, RevisionSession& s) {
    if (s.writer_history.empty()) {
        throw Error(ErrorCode::InvalidValue, "nothing to review yet");
    }
    const bool chars = s.target == RevisionTarget::Characters;
    std::string user;
    if (s.editor_history.empty()) {
        user = chars ? prompts::character_advice(s.storyline, artifact_blocks(s)).user
                     : prompts::outline_advice(s.storyline,
                                               render_character_blocks(s.characters->characters()),
                                               artifact_blocks(s))
                           .user;
    } else {
        user = chars ? prompts::character_advice_again(artifact_blocks(s), s.storyline)
                     : prompts::outline_advice_again(artifact_blocks(s), s.storyline,
                                                     cast_document(*s.characters));
    }
    auto turns = s.editor_history;
    turns.push_back({Role::User, user});
    auto got = env.gateway->complete_as<Advice>(request(s.editor_system, turns, env.editor),
                                                schema::advice(), planning_call(env),
                                                [](const TagDocument& doc) { return extract_advice(doc); });
    s.editor_history.push_back({Role::User, std::move(user)});
    s.editor_history.push_back({Role::Assistant, std::move(got.raw)});
    return got.value;
}

void revise(const StageEnv& env, RevisionSession& s, const Advice& advice) {
    if (advice.is_none()) {
        throw Error(ErrorCode::InvalidValue, "cannot revise on a None advice");
    }
    if (s.rounds_completed >= s.config.max_feedback_rounds) {
        throw Error(ErrorCode::InvalidValue, "feedback round limit reached");
    }
    std::string user = s.target == RevisionTarget::Characters
                           ? prompts::character_revision(advice.content(), s.storyline)
                           : prompts::outline_revision(advice.content(), s.storyline,
                                                       cast_document(*s.characters));
    writer_turn(env, s, std::move(user));
    ++s.rounds_completed;
    checkpoint_round(env, s);
}

void run_feedback_loop(const StageEnv& env, RevisionSession& s) {
    if (s.writer_history.empty()) {
        if (s.target == RevisionTarget::Characters) {
            generate_characters(env, s);
        } else {
            generate_outline(env, s);
        }
    }
    const std::string name(artifact_name(s.target));
    while (s.rounds_completed < s.config.max_feedback_rounds) {
        const Advice advice = editor_feedback(env, s);
        if (env.store) {
            nlohmann::json line = {{"artifact", name},
                                   {"round", s.rounds_completed},
                                   {"advice", advice.body()},
                                   {"stop", advice.is_none()}};
            env.store->append_line("planning.log", line.dump());
        }
        if (advice.is_none()) {
            break;
        }
        revise(env, s, advice);
    }
    if (env.store) {
        env.store->write(name + ".tags", s.target == RevisionTarget::Characters
                                             ? characters_file_text(*s.characters)
                                             : outline_file_text(*s.outline));
        nlohmann::json line = {{"artifact", name}, {"rounds_completed", s.rounds_completed}};
        env.store->append_line("planning.log", line.dump());
    }
}

PlanningResult run_plot_planning(const StageEnv& env, const Storyline& storyline,
                                 const PlanningConfig& config) {
    RevisionSession chars = character_session(storyline, config);
    run_feedback_loop(env, chars);
    RevisionSession plot = outline_session(storyline, *chars.characters, config);
    run_feedback_loop(env, plot);
    return {*chars.characters, *plot.outline, chars.rounds_completed, plot.rounds_completed};
}

} // namespace screenwright
