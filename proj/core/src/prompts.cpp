#include "prompts.hpp"

#include "boxart/error.hpp"

namespace boxart::prompts {
namespace {

constexpr const char* kRecogInstructionsNamesOn =
    "Instructions: I am about to show you a reference ASCII-art image, and then ask you a "
    "question about it in relation to three choices -labeled choice A, choice B , and choice C. "
    "Note that in each illustration, the objects depicted are labeled with a unique name, which "
    "consists of an alphanumeric character and which appears inside the object they label next "
    "to one of the object's boundaries. Your job is to do the following, in order:";

constexpr const char* kRecogInstructionsNamesOff =
    "Instructions: I am about to show you a reference ASCII-art image, and then ask you a "
    "question about it in relation to three choices -labeled choice A, choice B , and choice C. "
    " Your job is to do the following, in order:";

constexpr const char* kRecogSubQuestions =
    "(1) Describe the reference ASCII-art image.\n"
    "(2) Describe each of the ASCII-art choices, A, B, and C.\n"
    "(3) Describe how you would go about answering the question posed about the ASCII-art images "
    "to determine which choice is correct.\n"
    "(4) Name which choice you believe is correct, only stating the name of the choice and "
    "nothing else.";

constexpr const char* kQuestionVerbatim =
    "Which choice has ASCII-art that matches the reference ASCII-art exactly?";

constexpr const char* kQuestionTranslation =
    "Which choice has ASCII-art that matches what the reference ASCII-art would look like after "
    "it has been moved left, right, up, or down? That is, which choice has ASCII-art that looks "
    "like the reference ASCII-art after a translation?";

constexpr const char* kQuestionRotation =
    "Which choice has ASCII-art that matches what the reference ASCII-art would look like if we "
    "rotate the reference image 90 degrees clockwise? In other words, which choice shows what "
    "the ASCII-art would look like if it underwent a quarter-turn clockwise?";

constexpr const char* kQuestionNoise =
    "Ignoring the noisy characters injected into the depictions, which choice has ASCII-art "
    "which contains boxes that match the reference ASCII-art? That is, if we ignore characters "
    "that look like they are in the ASCII-artworks accidentally, which choice looks most like "
    "the reference ASCII-art?";

constexpr const char* kQuestionScaleDouble =
    "Which choice has ASCII-art that matches what the reference ASCII-art would look like if we "
    "scaled the reference ASCII-art to double its size?";

constexpr const char* kQuestionScaleHalf =
    "Which choice has ASCII-art that matches what the reference ASCII-art would look like if we "
    "scaled the reference ASCII-art to half its size?";

constexpr const char* kGenVerbatimInstructions =
    "Instructions: I am about to show you a reference ASCII-art image. You are to return the "
    "ASCII-art image to me verbatim. Reference ASCII-art Image:";

constexpr const char* kGenPreambleHead =
    "Instructions: I am about to show you a reference ASCII-art image, and then ask you "
    "questions about it and a task you must complete. The questions are numbered 1, 2, ";

constexpr const char* kGenPreambleTail =
    " and the task is indicated separately. The ASCII-art depicts a collection of boxes, some of "
    "which may be nested inside of other boxes. Note that in the ASCII-art, each box depicted is "
    "labeled with a unique name, which consists of an alphanumeric character and which appears "
    "in one of the box's corners.";

constexpr const char* kJobHeader = "     Your job is to do the following, in order:";

constexpr const char* kGenTranslationBody =
    "(1) Describe the reference ASCII-art image.\n"
    "(2) What would you do in order to form a piece of ASCII-art that matches what the reference "
    "ASCII-art would look like if it had no blank areas at the top of it and no empty left "
    "margin? That is, how would you change the reference ASCII-art to look like it was "
    "translated so that there was not unneeded empty space around it (while preserving all "
    "internal spacing and structured)?\n"
    "(3) What would the reference ASCII-art look like if it had no blank areas at the top of it "
    "and no empty left margin? That is, what would the reference ASCII-art look like after it "
    "has been translated so that there was not unneeded empty space around it?\n"
    "\n"
    "Task: Provide ASCII-art that matches what the reference ASCII-art would look like if it was "
    "translated to have no blank areas at the top of it and no empty left margin. That is, show "
    "a modified version of the reference ASCII-art that has been translated so that there is no "
    "unneeded empty space around it (while preserving internal spacing and structure).";

constexpr const char* kGenNoiseBody =
    "(1) Describe the reference ASCII-art image.\n"
    "(2) In the reference ASCII-art, the only characters that should be present are \"|\", "
    "\"-\", alphanumeric characters, or whitespace. All other characters are noise that should "
    "not be present. List what characters are present in the reference ASCII-art that are "
    "noise.\n"
    "(3) How would you remove noise from the reference ASCII-art so that only the characters "
    "that should be there are present?\n"
    "(4) What would the ASCII-art look like if each character that is noise was replaced with a "
    "single space character?\n"
    "\n"
    "Task: Provide what the reference ASCII-art would look like if you remove the noise and only "
    "leave the characters that should be present. Any single character you remove should be "
    "replace by a single space character.";

constexpr const char* kGenScaleBody =
    "(1) Describe the reference ASCII-art image.\n"
    "(2) What would you do in order to form a piece of ASCII-art that matches what the reference "
    "ASCII-art would look like if it was scaled up to double the size?\n"
    "(3) What would the reference ASCII-art look like if it was enlarge by a factor of two? That "
    "is, what would the reference ASCII-art look like if it was made twice as large?\n"
    "\n"
    "Task you must complete after answering the questions: Provide ASCII-art that matches what "
    "the reference ASCII-art would look like if we scaled the reference ASCII-art to double its "
    "size. That is, produce ASCII-art that has axis which are double the length of the "
    "reference, and which the images shown are enlarged respectively.";

constexpr const char* kGenRotationBody =
    "(1) Describe the reference ASCII-art image.\n"
    "(2) What would you do in order to form a piece of ASCII-art that matches what the reference "
    "ASCII-art would look like if it was rotated 90 degrees clockwise? That is, what you you do "
    "in order to depict the reference image after a quarter-turn clockwise?\n"
    "(3) What would the reference ASCII-art look like if it was rotated 90 degrees clockwise? "
    "That is, what would the reference image look like after a quarter-turn clockwise?\n"
    "\n"
    "Task: Provide ASCII-art that matches what the reference ASCII-art would look like if it was "
    "rotated 90 degrees clockwise. That is, show the reference ASCII-art after it has been "
    "rotated a quarter-turn clockwise.";

constexpr const char* kPartPromptHead =
    "I am about to show you two pieces of ASCII-art then ask you as series of questions about "
    "them.\n"
    "\n"
    "The first piece of ASCII-art is a full image, and the second is part of that image which "
    "has only some of its non-whitespace characters retained while the rest have been blanked "
    "out. The full image will be labeled FULL_IMAGE above it, and the mostly blanked-out image "
    "will be labeled IMAGE_PART. The ASCII-art will be labeled to indicate which is which. In "
    "addition to these pictures, we will provide the name of the object that the ASCII-art in "
    "FULL_IMAGE is meant to depict, providing it immediately following the tag "
    "OBJECT_IN_FULL_IMAGE.  The tag OBJECT_IN_FULL_IMAGE and the name of the object follows the "
    "full image but preceeds the other ASCII-art.";

constexpr const char* kPartExamplesHeader =
    "EXAMPLES:\n"
    "The remainder of this prompt has examples of full images (labeled EX_FULL_IMG), parts "
    "(labeled EX_PART_IMG) and names of objects shown in EX_FULL_IMG (labeled "
    "OBJECT_IN_EX_FULL_IMG), followed by the tag EX_CHOICE_FOR_6 listing choices provided to "
    "choose a name for the image in EX_PART_IMG and then the tag EX_EXPECTED_ANSWER_TO_6 "
    "indicating the letter of the correct choice shown among those in EX_CHOICE_FOR_6.";

std::string fenced(const std::string& art) { return "```\n" + art + "\n```"; }

std::string generation_preamble(bool four_questions, const std::string& reference_text) {
  std::string out = kGenPreambleHead;
  out += four_questions ? "3 and 4," : "and 3,";
  out += kGenPreambleTail;
  out += "\n\nReference ASCII-art Image:\n";
  out += fenced(reference_text);
  return out;
}

std::string generation_with_body(bool four_questions, const std::string& reference_text,
                                 const char* body) {
  std::string out = generation_preamble(four_questions, reference_text);
  out += "\n\n";
  out += kJobHeader;
  out += "\n";
  out += body;
  return out;
}

}  // namespace

std::string recognition_prompt(bool names_shown, const std::string& reference_text,
                               const std::string& question,
                               const std::array<std::string, 3>& choice_texts) {
  std::string out = names_shown ? kRecogInstructionsNamesOn : kRecogInstructionsNamesOff;
  out += "\n";
  out += kRecogSubQuestions;
  out += names_shown ? "\n" : "\n\n";
  out += "Reference ASCII-art Image:\n";
  out += fenced(reference_text);
  out += "\nQuestion: " + question;
  out += names_shown ? "\n" : "\n\n";
  const char labels[3] = {'A', 'B', 'C'};
  for (int i = 0; i < 3; ++i) {
    if (i > 0) out += "\n\n";
    out += std::string("Choice ") + labels[i] + ":\n";
    out += fenced(choice_texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

const char* recognition_question(TaskKind kind, bool reference_enlarged) {
  switch (kind) {
    case TaskKind::RecogVerbatim: return kQuestionVerbatim;
    case TaskKind::RecogTranslation: return kQuestionTranslation;
    case TaskKind::RecogRotation: return kQuestionRotation;
    case TaskKind::RecogNoise: return kQuestionNoise;
    case TaskKind::RecogScale:
      // When the reference is the enlarged rendering the choices sit at half
      // its size, and vice versa.
      return reference_enlarged ? kQuestionScaleHalf : kQuestionScaleDouble;
    default:
      throw Error(ErrorCode::InvalidArgs, "not a recognition kind");
  }
}

std::string generation_prompt(TaskKind kind, const std::string& reference_text) {
  switch (kind) {
    case TaskKind::GenVerbatim:
      return std::string(kGenVerbatimInstructions) + "\n" + fenced(reference_text);
    case TaskKind::GenTranslation:
      return generation_with_body(false, reference_text, kGenTranslationBody);
    case TaskKind::GenNoise:
      return generation_with_body(true, reference_text, kGenNoiseBody);
    case TaskKind::GenScale:
      return generation_with_body(false, reference_text, kGenScaleBody);
    case TaskKind::GenRotation:
      return generation_with_body(false, reference_text, kGenRotationBody);
    default:
      throw Error(ErrorCode::InvalidArgs, "not a generation kind");
  }
}

std::string part_recognition_prompt(const std::string& full_art, const std::string& object_name,
                                    const std::string& part_art,
                                    const std::array<std::string, 3>& choice_names,
                                    const std::vector<ExemplarView>& exemplars) {
  std::string out = kPartPromptHead;
  out += "\n\nFULL_IMAGE\n" + fenced(full_art);
  out += "\nOBJECT_IN_FULL_IMAGE " + object_name;
  out += "\n\nIMAGE_PART\n" + fenced(part_art);
  out += "\n\n\nPlease answer the following questions, numbered one through six, in order:\n\n";
  out +=
      "(1) Describe the ASCII-art shown in FULL_IMAGE, indicating the shape of its parts and "
      "what they are comprised of.\n\n";
  out +=
      "(2) Describe how you would expect an ASCII-art depiction of the type of thing indicated "
      "by OBJECT_IN_FULL_IMAGE to look like. Indicate its shape and what parts you expect to be "
      "present.\n\n";
  out +=
      "(3) Describe the ASCII-art shown in IMAGE_PART, indicating the shape of its parts and "
      "what they are comprised of.\n\n";
  out +=
      "(4) For each of the following sub-parts --- 4.1, 4.2, and 4.3 respectively --- describe "
      "what characters in FULL_IMAGE you believe represent them, if any:\n";
  for (int i = 0; i < 3; ++i) {
    out += "    (4." + std::to_string(i + 1) + ") " + choice_names[static_cast<std::size_t>(i)] +
           "\n";
  }
  out +=
      "\n(5) Describe how you would determine which part of FULL_IMAGE the art in IMAGE_PART "
      "corresponds to.\n\n";
  out +=
      "(6) Of the following three choices --- Choice A, Choice B, or Choice C --- which provides "
      "the best name for the part of FULL_IMAGE that is shown in IMAGE_PART ?\n";
  const char labels[3] = {'A', 'B', 'C'};
  for (int i = 0; i < 3; ++i) {
    out += std::string("    Choice ") + labels[i] + ": " +
           choice_names[static_cast<std::size_t>(i)] + "\n";
  }
  out += "\n";
  out += kPartExamplesHeader;
  int index = 1;
  for (const ExemplarView& ex : exemplars) {
    out += "\n\nExample " + std::to_string(index++) + ":\n\n";
    out += "EX_FULL_IMG:\n" + fenced(ex.full_art);
    out += "\nOBJECT_IN_EX_FULL_IMG: " + ex.object_name;
    out += "\n\nEX_PART_IMG:\n" + fenced(ex.part_art);
    out += "\nEX_CHOICE_FOR_6:\n";
    for (std::size_t i = 0; i < ex.choices.size(); ++i) {
      out += std::string("    Choice ") + static_cast<char>('A' + i) + ": " + ex.choices[i] + "\n";
    }
    out += "EXPECTED_ANSWER_TO_6_FOR_EX: Choice ";
    out += ex.expected_answer;
  }
  return out;
}

}  // namespace boxart::prompts
