#include "screenwright/prompts.hpp"

#include <initializer_list>

namespace screenwright::prompts {

namespace {

std::string lines(std::initializer_list<std::string_view> parts) {
    std::string out;
    bool first = true;
    for (auto part : parts) {
        if (!first) {
            out += '\n';
        }
        out += part;
        first = false;
    }
    return out;
}

std::string str(std::string_view s) {
    return std::string(s);
}

} // namespace

const std::string_view kCharacterWriterSystem =
    "You are a skilled Screenplay Writer from Hollywood specializing in the creation of vivid "
    "characters, you excel at developing movie characters for a given preliminary storylines. "
    "Your expertise lies in bringing depth to the narrative, ensuring that each character "
    "resonates with authenticity.\n"
    "In the realm of cinematic storytelling, characters hold a pivotal role. Their intrinsic "
    "motivations and interactions serve as the driving force behind the entire narrative arc.\n"
    "The character you are tasked with designing should feature both the character's full name "
    "and a succinct introduction.\n"
    "The character's full name should be realistic and does not include any special symbols.\n"
    "The character's introduction should be concise yet story-relevant, encompassing aspects "
    "such as gender, age, appearance, background, personality traits, experiences, goals, "
    "motivations, conflicts, developments, relationships with other characters, and other "
    "pertinent details.\n"
    "The number of characters should be around 3 to 6 and well aligned with the needs of story.";

const std::string_view kCharacterEditorSystem =
    "You are an Editor with expertise in providing guidance to enhance the Writer's written "
    "characters within a movie's storyline.\n"
    "Your role is to offer constructive advice on improving the story characters (<characters>) "
    "written by the Writer based on the provided storyline.\n"
    "When providing feedback, please pay close attention to the following aspects of character "
    "design:\n"
    "1. Assess whether the designed character introductions align harmoniously with the given "
    "storyline.\n"
    "2. Evaluate the relationships between characters for their reasonableness, depth, interest, "
    "and complexity rather than being overly simplistic.\n"
    "3. Assess if the designed characters are captivating and able to engage the audience "
    "effectively.\n"
    "4. Assess whether the character introductions adhere to logical consistency.\n"
    "5. Other aspects you consider important.\n"
    "If you identify any issues in these aspects within the content provided by the Writer, "
    "provide precise and concise suggestions for revisions in those problematic areas.\n"
    "\n"
    "Your advice on how to improve the story characters should follow the format below:\n"
    "<advice>\n"
    "Your advice\n"
    "</advice>\n"
    "When you feel that there are no more revisions to be made to the current story characters, "
    "reply with <advice>None</advice>.\n"
    "Strictly obey this format and do not generate redundant content!";

const std::string_view kOutlineWriterSystem =
    "You are a skilled Screenplay Writer from Hollywood specializing in the creation of "
    "compelling outlines, you excel at developing movie outlines for a given preliminary "
    "storylines. Your expertise lies in bringing depth to the narrative, ensuring that each plot "
    "point is engagingly crafted to keep audiences captivated.\n"
    "Your task is to create a two-level hierarchical outline. In this structured outline, each "
    "top-level plot serves as a concise summary of its corresponding subplots, and subplots are "
    "the main events that occur under their corresponding top-level plot.\n"
    "The top-level plot or subplot consists of Plot, Scene (where the plot happens), Characters "
    "(who are involved in that plot). The plot needs to be specific, with dramatic conflict that "
    "captures the audience's attention and resonates with them. Characters must be selected from "
    "the given list of characters and Characters must be full names in the given list of "
    "characters.\n"
    "Maintain coherence and consistency throughout your two-level hierarchical outline.\n"
    "IMPORTANT: Make sure that the story outline has a clear ending, whether good or bad, it "
    "should keep the audience coming back for more.\n"
    "The outline you generate should follow the format below:\n"
    "<outline>\n"
    "<plot_1>\n"
    "The content of the top-level bullet plot 1\n"
    "</plot_1>\n"
    "<plot_1a>\n"
    "The content of the subplot 1a\n"
    "</plot_1a>\n"
    "<plot_1b>\n"
    "The content of the subplot 1b\n"
    "</plot_1b>\n"
    "...\n"
    "<plot_2>\n"
    "The content of the top-level bullet plot 2\n"
    "</plot_2>\n"
    "<plot_2a>\n"
    "The content of the subplot 2a\n"
    "</plot_2a>\n"
    "...\n"
    "</outline>\n"
    "Here is an example for reference:\n"
    "<outline>\n"
    "<plot_1>\n"
    "Ava discovers the magical app and begins to use it to alter reality, but she soon realizes "
    "that the app's magic comes at a terrible price.\n"
    "Scene: Characters: Ava Rose\n"
    "</plot_1>\n"
    "<plot_1a>\n"
    "Ava discovers the app and starts to use it to improve her life and the lives of her "
    "friends.\n"
    "Scene: the town where Ava lives. Characters: Ava Rose\n"
    "</plot_1a>\n"
    "<plot_1b>\n"
    "Ava's friends become suspicious of her sudden changes and start to distance themselves from "
    "her.\n"
    "Scene: the town where Ava lives. Characters: Ava Rose\n"
    "</plot_1b>\n"
    "...\n"
    "<plot_2>\n"
    "Ava confides in her best friend, Tess, about the app's dark side, and the two girls try to "
    "figure out a way to stop the app's power from consuming Ava's life.\n"
    "Scene: Characters: Ava Rose, Tess Sawyer\n"
    "</plot_2>\n"
    "<plot_2a>\n"
    "...\n"
    "</plot_2a>\n"
    "...\n"
    "</outline>\n"
    "Strictly obey the above format and do not generate any redundant content!";

const std::string_view kOutlineEditorSystem =
    "You're an Editor who excels at providing insightful guidance to enhance the movie story "
    "outline crafted by the Writer.\n"
    "Your task is to offer advice on how to improve the existing story outline (<outline>) "
    "created by the Writer, taking into account the provided storyline (<storyline>) and "
    "characters (<characters>) of the story.\n"
    "When providing feedback, please focus on the following aspects of the outline:\n"
    "1. Evaluate whether the development of the story outline aligns harmoniously with the "
    "storyline and character introductions.\n"
    "2. Assess whether the contents of the story outline are coherent, and whether there are any "
    "conflicts or poor transitions between plot points.\n"
    "3. Assess whether the outline adheres to logical consistency.\n"
    "4. Evaluate whether the outline makes up an interesting, engaging, and thought-provoking "
    "story.\n"
    "5. Assess whether the outline has a clear ending.\n"
    "6. Other aspects you consider important.\n"
    "If the content written by the Writer has issues in these aspects, you need to provide "
    "detailed revision suggestions for the problematic areas concisely. Your advice on how to "
    "improve the story outline (<outline>) should follow the format below:\n"
    "<advice>\n"
    "Your advice\n"
    "</advice>\n"
    "When you feel that there are no more revisions to be made to the current story outline, "
    "please reply only with <advice>None</advice>.\n"
    "Strictly obey this format and do not generate redundant content!";

const std::string_view kExpansionSystem =
    "You are a writer, your task is to expand upon one of the story plot points in an existing "
    "story outline, transforming it into a complete story chapter while maintaining coherence "
    "and consistency with the previous happened story content. The story needs to be specific, "
    "with dramatic conflict that captures the audience's attention and resonates with them.";

const std::string_view kDraftSystem =
    "You are a scriptwriter, and you need to adapt a given chapter (<chapter>) of a story into a "
    "script draft composed of the smallest events that happen sequentially. The adapted script "
    "draft consists of two kinds of elements: Scene Heading (<scene_heading>) and Character "
    "Performance (<character_performance>) events. The content of Scene Heading "
    "(<scene_heading>) describes the location and time of day for a particular scene. It "
    "includes three components: INT. (Interior) or EXT. (Exterior), the specific location, and "
    "the time of day (DAY or NIGHT or ...). Character Performance (<character_performance>) is a "
    "smallest event describing the performance and interactions of individual characters using "
    "simple declarative sentences. The content of Character Performance "
    "(<character_performance>) includes the character's name (<character>) and the character's "
    "performance (<performance>). The character's name (<character>) must be the full name of "
    "the provided involved character! The character's performance (<performance>) should align "
    "with the character's introduction. The first thing in each script draft must be a Scene "
    "Heading (<scene_heading>), indicating the opening scene of the movie chapter. Each script "
    "draft has one and only one Scene Heading at the beginning. Following the Scene Heading, "
    "there are numerous Character Performance (<character_performance>) events that "
    "sequentially take place in that scene. You need to plan the script carefully, generating "
    "Scene Heading (<scene_heading>) and then Character Performance (<character_performance>) "
    "events step by step and make them sequential narratives. The contents of the script draft "
    "should be coherent.";

const std::string_view kActorSystemTail =
    "You have to interactively act out a script with other characters or act out a script on "
    "your own.\n"
    "Each time you will be given a rough performance guide (<performance_guide>) of what you "
    "should perform. Your task is to execute this rough performance guide (<performance_guide>) "
    "as a real actor in the movie. Your performance (<detailed_performance>) should consist of "
    "four components: Character (<character>), Action (<action>), Parenthetical "
    "(<parenthetical>), and Dialogue (<dialogue>). The Character (<character>) specifies your "
    "character name (<role_name>). The Action (<action>) describes the action and event taking "
    "place in the current scene. It is written in present tense and provides a visual "
    "description of what the audience will see on the screen. The Dialogue (<dialogue>) "
    "describes your lines, which the audience will hear. Note that lines need to be as concise "
    "and powerful as they are in real movies. The Parenthetical (<parenthetical>) is sometimes "
    "used to provide additional direction or information about how a line of dialogue should "
    "be delivered. It can be tone of voice, expression, talking to whom, and so on. Some "
    "examples of Parenthetical are (cautiously), (to someone), and so on. Depending on the "
    "requirements of the performance, some of these three components (Action, Parenthetical, "
    "and Dialogue) can be empty in some cases. If some component is empty, you should generate "
    "<component></component>. If the content of Dialogue is empty, the content of Parenthetical "
    "must also be empty. Your detailed performance (<detailed_performance>) must align with the "
    "performance guide, be concise, maintain coherence with the past performance history and "
    "reflect your character introduction (<role_intro>).";

const std::string_view kDirectEpisodeSystem =
    "You are a scriptwriter. You are given a script draft made of one Scene Heading "
    "(<scene_heading>) and a sequence of Character Performance (<character_performance>) "
    "events. Write the final screenplay of this episode from a third-person perspective. For "
    "every Character Performance event, in order, write exactly one detailed performance "
    "(<detailed_performance>) with four components: Character (<character>), Action (<action>), "
    "Parenthetical (<parenthetical>) and Dialogue (<dialogue>). If some component is empty, "
    "generate <component></component>. If the content of Dialogue is empty, the content of "
    "Parenthetical must also be empty.";

const std::string_view kPlanThenWriteSystem =
    "You are a skilled Screenplay Writer from Hollywood. Given a preliminary storyline, its "
    "characters and a two-level story outline, you write the script of the movie one episode at "
    "a time. Each episode corresponds to one subplot of the outline and consists of one Scene "
    "Heading (<scene_heading>) followed by detailed performances (<detailed_performance>), each "
    "made of Character (<character>), Action (<action>), Parenthetical (<parenthetical>) and "
    "Dialogue (<dialogue>). If some component is empty, generate <component></component>. If "
    "the content of Dialogue is empty, the content of Parenthetical must also be empty.";

const std::string_view kSynthesisSystem =
    "You are a creative film development assistant who writes short preliminary storylines for "
    "new movies.";

const std::string_view kJudgeSystemHead =
    "Please act as an impartial judge and evaluate the quality of the screenplays generated by "
    "two different methods. The two screenplays have the same preliminary storyline:";

const std::string_view kLastPlotSentence =
    "The current story plot point you need to expand is the last plot point of the story. So, "
    "make sure that your expanded story chapter has a clear end to the story.";

const std::string_view kFirstAppearanceRemark =
    "Special remark: this character makes the first appearance in the story.";

// Stage 1 ------------------------------------------------------------------

Prompt character_generation(std::string_view storyline) {
    return {str(kCharacterWriterSystem),
            lines({"Design characters that seamlessly integrate with the provided storyline:",
                   "Storyline:",
                   storyline,
                   "",
                   "The characters you design should adhere to the following format:",
                   "<characters>",
                   "<character_1>",
                   "<full_name>character_1's full name</full_name>",
                   "<character_introduction>character_1's introduction</character_introduction>",
                   "</character_1>",
                   "<character_2>",
                   "...",
                   "</character_2>",
                   "...",
                   "</characters>",
                   "",
                   "Ensure strictly adherence to the above format and avoid generating "
                   "superfluous content."})};
}

Prompt character_advice(std::string_view storyline, std::string_view character_blocks) {
    return {str(kCharacterEditorSystem),
            lines({"Give advice on how to enhance the initial version of the movie story "
                   "characters written by the Writer based on the following storyline:",
                   "Storyline:",
                   storyline,
                   "",
                   "The initial version of the movie story characters written by the Writer:",
                   "<characters>",
                   character_blocks,
                   "</characters>"})};
}

std::string character_advice_again(std::string_view revised_blocks, std::string_view storyline) {
    return lines({"Here is the Writer's revised story characters based on your recent feedback:",
                  "<characters>",
                  revised_blocks,
                  "</characters>",
                  "Please give your advice on the revised story characters.",
                  "The original input storyline was:",
                  storyline,
                  "Your advice should follow the format below:",
                  "<advice>",
                  "Your advice",
                  "</advice>",
                  "When you feel that there are no more revisions to be made to the current story "
                  "characters, please reply only with <advice>None</advice>."});
}

std::string character_revision(std::string_view advice, std::string_view storyline) {
    return lines({"Here is the Editor's feedback on the story characters you recently generated:",
                  "<advice>",
                  advice,
                  "</advice>",
                  "Please revise your generated story characters based on the advice.",
                  "The storyline originally given to you was:",
                  "Storyline:",
                  storyline,
                  "Keep the format of the story characters same as the one before your revision."});
}

Prompt outline_generation(std::string_view storyline, std::string_view characters) {
    return {str(kOutlineWriterSystem),
            lines({"Generate the outline based on the provided storyline and characters:",
                   "Storyline:",
                   storyline,
                   "Characters:",
                   characters,
                   "Strictly obey the given output format and do not generate redundant content!"})};
}

Prompt outline_advice(std::string_view storyline, std::string_view character_blocks,
                      std::string_view plot_blocks) {
    return {str(kOutlineEditorSystem),
            lines({"Give advice on how to improve the initial version of the story outline "
                   "(<outline>) written by the Writer based on the following storyline "
                   "(<storyline>) and characters (<characters>):",
                   "Storyline:",
                   storyline,
                   "The based characters:",
                   "<characters>",
                   character_blocks,
                   "</characters>",
                   "",
                   "The initial version of the story outline written by the Writer:",
                   "<outline>",
                   plot_blocks,
                   "</outline>"})};
}

std::string outline_advice_again(std::string_view revised_plot_blocks, std::string_view storyline,
                                 std::string_view characters) {
    return lines({"Here is the Writer's revised story outline based on your recent feedback:",
                  "<outline>",
                  revised_plot_blocks,
                  "</outline>",
                  "Please give your advice on the revised story outline.",
                  "The original input storyline and characters were:",
                  "Storyline:",
                  storyline,
                  "Characters:",
                  characters,
                  "Your advice should follow the format below:",
                  "<advice>",
                  "Your advice",
                  "</advice>",
                  "When you feel that there are no more revisions to be made to the current story "
                  "outline, please reply only with <advice>None</advice>."});
}

std::string outline_revision(std::string_view advice, std::string_view storyline,
                             std::string_view characters) {
    return lines({"Here is the Editor's feedback on the story outline you recently wrote:",
                  "<advice>",
                  advice,
                  "</advice>",
                  "Please revise your written story outline based on the advice.",
                  "The storyline and characters originally given to you were:",
                  "Storyline:",
                  storyline,
                  "Characters:",
                  characters,
                  "Keep the format of the story outline same as the one before your revision."});
}

// Stage 2 ------------------------------------------------------------------

Prompt expansion(const ExpansionInput& in) {
    const std::string scene = "<scene>" + in.scene + "</scene>";
    return {str(kExpansionSystem),
            lines({"The current story plot point you need to expand is:",
                   "<plot_point>",
                   in.plot_point,
                   "</plot_point>",
                   "The input storyline is:",
                   "<storyline>",
                   in.storyline,
                   "</storyline>",
                   "The scene where the current story plot point happens is:",
                   scene,
                   "The current story plot point involves the following characters:",
                   "<characters>",
                   in.involved_characters,
                   "</characters>",
                   "The previous story contents that have taken place are as follows:",
                   in.earlier_plot_points,
                   in.recent_chapters,
                   in.is_last ? kLastPlotSentence : std::string_view{},
                   "Now, please expand the current given story plot point (<plot_point>) in a "
                   "story outline into a chapter of complete story content which keeps coherent "
                   "with the previous happened story content. Feel free to add details around the "
                   "plot point but avoid deviating too far from it. While you have the "
                   "flexibility to introduce additional details surrounding the plot point, it is "
                   "essential to stay aligned with the original plot point's core content. To "
                   "maintain conciseness, the expanded word count should be as minimal as "
                   "possible, effectively unfolding the plot point while creating a complete "
                   "story chapter.",
                   "Your output format for the expanded story content should strictly follow:",
                   "<chapter>",
                   "The story chapter you have expanded",
                   "</chapter>",
                   "Please adhere strictly to this format and refrain from including any "
                   "unnecessary content!"})};
}

// Stage 3 ------------------------------------------------------------------

Prompt script_draft(std::string_view chapter, std::string_view scene,
                    std::string_view involved_characters) {
    const std::string scene_line = "<scene>" + std::string(scene) + "</scene>";
    return {str(kDraftSystem),
            lines({"An example of adapting a chapter of story into a script draft is as follows:",
                   "<example>",
                   "",
                   "<chapter>",
                   "At first light, in Emma Taylor's room, Dorothy Smith serves porridge to "
                   "persuade Emma Taylor to eat, and Emma Taylor smashes the bowl to show her "
                   "refusal...",
                   "</chapter>",
                   "",
                   "<scene>",
                   "Inside Emma Taylor's room.",
                   "</scene>",
                   "",
                   "<involved_characters>",
                   "Dorothy Smith, Emma Taylor",
                   "</involved_characters>",
                   "",
                   "<script_draft>",
                   "",
                   "<scene_heading>",
                   "INT.; Inside Emma Taylor's room; DAY.",
                   "</scene_heading>",
                   "",
                   "<character_performance>",
                   "<character>Dorothy Smith</character>",
                   "<performance>Dorothy Smith enters the room and walks over to Emma with "
                   "porridge to persuade Emma to eat.</performance>",
                   "</character_performance>",
                   "",
                   "<character_performance>",
                   "<character>Emma Taylor</character>",
                   "<performance>Emma smashes the bowl, saying she won't eat.</performance>",
                   "</character_performance>",
                   "",
                   "<character_performance>",
                   "<character>Dorothy Smith</character>",
                   "<performance>...</performance>",
                   "</character_performance>",
                   "",
                   "...",
                   "",
                   "</script_draft>",
                   "",
                   "</example>",
                   "The story chapter (<chapter>) that is now to be adapted into a script draft "
                   "is:",
                   "<chapter>",
                   chapter,
                   "</chapter>",
                   "The scene (<scene>) in which this chapter of story takes place is:",
                   scene_line,
                   "This story chapter involves the following characters:",
                   "<involved_characters>",
                   involved_characters,
                   "</involved_characters>",
                   "So, Character Performance (<character_performance>) events in your written "
                   "script draft should only involve these characters (<involved_characters>).",
                   "Now, please adapt the current given story chapter (<chapter>) into a script "
                   "draft composed of the smallest events that happen sequentially. The output "
                   "format for the script draft should strictly follow:",
                   "<script_draft>",
                   "Your script draft",
                   "</script_draft>",
                   "Please adhere strictly to this format and refrain from including any "
                   "irrelevant content!"})};
}

Prompt act(const ActInput& in) {
    const std::string role_line = "<role_name>" + in.role_name + "</role_name>.";
    const std::string intro_line = "<role_intro>" + in.role_intro + "</role_intro>";
    const std::string scene_line = "<scene>" + in.scene + "</scene>";
    return {lines({"You are an actor, and the character you will play is:", role_line,
                   "Your character introduction is:", intro_line, kActorSystemTail}),
            lines({"Some examples of transforming a rough performance guide into a detailed "
                   "performance are as follows:",
                   "<examples>",
                   "",
                   "<example>",
                   "<performance_guide>",
                   "Dorothy Smith enters the room with the porridge and walks over to Emma "
                   "Taylor.",
                   "</performance_guide>",
                   "<scene>",
                   "INT.; Inside Emma Taylor's room; DAY.",
                   "</scene>",
                   "",
                   "<detailed_performance>",
                   "<character>Dorothy Smith</character>",
                   "<action>Dorothy Smith enters the room, sets down various dishes, carries a "
                   "bowl of hot porridge, and walks over to Emma Taylor.</action>",
                   "<parenthetical></parenthetical>",
                   "<dialogue></dialogue>",
                   "</detailed_performance>",
                   "</example>",
                   "",
                   "<example>",
                   "<performance_guide>",
                   "Dorothy Smith cautiously persuades Emma Taylor to eat.",
                   "</performance_guide>",
                   "<scene>",
                   "INT.; Inside Emma Taylor's room; DAY.",
                   "</scene>",
                   "",
                   "<detailed_performance>",
                   "<character>Dorothy Smith</character>",
                   "<action></action>",
                   "<parenthetical>(cautiously, to Emma Taylor)</parenthetical>",
                   "<dialogue>My miss, you still have to take care of your body, so just eat "
                   "something.</dialogue>",
                   "</detailed_performance>",
                   "</example>",
                   "",
                   "<example>",
                   "<performance_guide>",
                   "Emma Taylor drops her bowl and capriciously says she won't eat.",
                   "</performance_guide>",
                   "<scene>",
                   "INT.; Inside Emma Taylor's room; DAY.",
                   "</scene>",
                   "",
                   "<detailed_performance>",
                   "<character>Emma Taylor</character>",
                   "<action>Emma Taylor slams her bowl on the floor.</action>",
                   "<parenthetical>(capriciously, to Dorothy Smith)</parenthetical>",
                   "<dialogue>No no no, I just won't eat!</dialogue>",
                   "</detailed_performance>",
                   "</example>",
                   "",
                   "</examples>",
                   "Now, the performance guide (<performance_guide>) given to you is:",
                   "<performance_guide>",
                   in.performance_guide,
                   "</performance_guide>",
                   "The scene (<scene>) in which this performance takes place is:",
                   scene_line,
                   "The entire script involves the following character(s):",
                   "<involved_characters>",
                   in.involved_characters,
                   "</involved_characters>",
                   "The history (if any) of the actors' performances regarding the preceding "
                   "events in the current episode's script draft:",
                   "<act_history>",
                   in.act_history,
                   "</act_history>",
                   "Your detailed performance should only involve your own performance on the "
                   "performance guide (<performance_guide>) in detail.",
                   "Now, please transform the current given performance guide "
                   "(<performance_guide>) into a detailed performance (<detailed_performance>). "
                   "The output format for your detailed performance should strictly follow:",
                   "<detailed_performance>",
                   "Your detailed performance",
                   "</detailed_performance>",
                   "Please adhere strictly to this format and refrain from including any "
                   "unnecessary content!"})};
}

std::string role_correction(std::string_view role_name) {
    return "Note: you play " + std::string(role_name) + ". The <character> of your detailed "
           "performance must be exactly " + std::string(role_name) + ".";
}

Prompt direct_episode(std::string_view draft, std::string_view involved_characters) {
    return {str(kDirectEpisodeSystem),
            lines({"The script draft to be turned into a screenplay episode is:",
                   draft,
                   "The episode involves the following characters:",
                   "<involved_characters>",
                   involved_characters,
                   "</involved_characters>",
                   "The output format for the episode should strictly follow:",
                   "<episode>",
                   "<detailed_performance>",
                   "<character>Character name</character>",
                   "<action>Action</action>",
                   "<parenthetical>Parenthetical</parenthetical>",
                   "<dialogue>Dialogue</dialogue>",
                   "</detailed_performance>",
                   "...",
                   "</episode>",
                   "Please adhere strictly to this format and refrain from including any "
                   "unnecessary content!"})};
}

std::string_view plan_then_write_example() {
    return "<episode>\n"
           "<scene_heading>INT.; Inside Emma Taylor's room; DAY.</scene_heading>\n"
           "<detailed_performance>\n"
           "<character>Dorothy Smith</character>\n"
           "<action>Dorothy Smith enters the room with a bowl of hot porridge and walks over to "
           "Emma Taylor.</action>\n"
           "<parenthetical></parenthetical>\n"
           "<dialogue></dialogue>\n"
           "</detailed_performance>\n"
           "<detailed_performance>\n"
           "<character>Dorothy Smith</character>\n"
           "<action></action>\n"
           "<parenthetical>(cautiously, to Emma Taylor)</parenthetical>\n"
           "<dialogue>My miss, you still have to take care of your body, so just eat "
           "something.</dialogue>\n"
           "</detailed_performance>\n"
           "<detailed_performance>\n"
           "<character>Emma Taylor</character>\n"
           "<action>Emma Taylor slams her bowl on the floor.</action>\n"
           "<parenthetical>(capriciously, to Dorothy Smith)</parenthetical>\n"
           "<dialogue>No no no, I just won't eat!</dialogue>\n"
           "</detailed_performance>\n"
           "</episode>";
}

Prompt plan_then_write_episode(const PlanThenWriteInput& in) {
    const std::string scene_line = "<scene>" + in.scene + "</scene>";
    return {str(kPlanThenWriteSystem),
            lines({"Here is an example of a single-episode script:",
                   "<example>",
                   plan_then_write_example(),
                   "</example>",
                   "The preliminary storyline is:",
                   "<storyline>",
                   in.storyline,
                   "</storyline>",
                   "The characters are:",
                   in.characters,
                   "The story outline is:",
                   in.outline,
                   "The script of the previous episode (if any) is:",
                   "<previous_episode>",
                   in.previous_episode,
                   "</previous_episode>",
                   "Now write the episode for the following plot point:",
                   "<plot_point>",
                   in.plot_point,
                   "</plot_point>",
                   "The scene of this episode is:",
                   scene_line,
                   "This episode involves the following characters:",
                   "<involved_characters>",
                   in.involved_characters,
                   "</involved_characters>",
                   "The output format for the episode should strictly follow the example, "
                   "wrapped in <episode></episode>.",
                   "Please adhere strictly to this format and refrain from including any "
                   "unnecessary content!"})};
}

// Evaluation -----------------------------------------------------------------

Prompt judge(const JudgeInput& in) {
    return {lines({kJudgeSystemHead,
                   "<preliminary_storyline>",
                   in.storyline,
                   "</preliminary_storyline>",
                   "The two screenplays are also based on the same characters:",
                   "<characters>",
                   in.characters,
                   "</characters>",
                   "The two screenplays are also based on the same story summary:",
                   "<story_summary>",
                   in.story_summary,
                   "</story_summary>",
                   "You should choose the screenplay that have better qualities. Your evaluation "
                   "should focus on:",
                   "<focus_on>",
                   in.focus,
                   "</focus_on>",
                   "Begin your evaluation by comparing the two screenplays and provide a short "
                   "explanation. Avoid any position biases and ensure that the order in which the "
                   "screenplays are presented does not influence your decision. Do not allow the "
                   "length of the screenplays to influence your evaluation. Be as objective as "
                   "possible. After providing your explanation (<explanation>Your "
                   "explanation</explanation>), output your final verdict by strictly following "
                   "this format:",
                   "<verdict>A</verdict> if story plot A is better, <verdict>B</verdict> if story "
                   "plot B is better, and <verdict>TIE</verdict> for a tie.",
                   "So your output should follow the following format:",
                   "<explanation>Your explanation</explanation>",
                   "<verdict>A or B or TIE</verdict>",
                   "Strictly obey this format and do not generate redundant content!"}),
            lines({"The screenplay A and B are as follows:",
                   "<screenplay_A>",
                   in.screenplay_a,
                   "</screenplay_A>",
                   "<screenplay_B>",
                   in.screenplay_b,
                   "</screenplay_B>",
                   "Now give your explanation and verdict!"})};
}

// Dataset ----------------------------------------------------------------------

Prompt storyline_synthesis(Genre genre, std::size_t target_words) {
    const std::string ask = "Write a preliminary storyline for an original " +
                            std::string(to_string(genre)) + " movie in approximately " +
                            std::to_string(target_words) + " words.";
    return {str(kSynthesisSystem),
            lines({ask,
                   "Introduce the protagonist, the central conflict and the stakes in a single "
                   "paragraph of prose.",
                   "Your output should follow the format below:",
                   "<storyline>",
                   "The storyline",
                   "</storyline>",
                   "Strictly obey this format and do not generate redundant content!"})};
}

} // namespace screenwright::prompts
