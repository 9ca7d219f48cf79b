#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "boxart/rng.hpp"
#include "boxart/trials.hpp"

namespace boxart {

/// One human-drawn ASCII-art image plus per-part character masks. A part mask
/// has the same line count as the full art and retains only the part's
/// characters, everything else blanked out. All lines are padded to the
/// record's uniform width.
struct ArtRecord {
  std::string id;
  std::string object_class;  // dog, cat, bird, car, airplane
  std::string full_art;
  std::map<std::string, std::string> parts;
};

/// Part labels usable for a class. Cars and airplanes include "other", which
/// is offered as a choice but never the correct answer.
struct ClassVocabulary {
  std::string object_class;
  std::vector<std::string> parts;
  bool includes_other = false;
};

/// Built-in vocabulary for the five supported classes. Throws InvalidArgs on
/// an unknown class.
const ClassVocabulary& vocabulary_for(const std::string& object_class);

/// Display name with its article, as written into prompts ("a dog",
/// "an airplane").
std::string object_display_name(const std::string& object_class);

/// One few-shot example embedded in every part-recognition prompt.
struct Exemplar {
  std::string full_art;
  std::string object_name;  // with article, e.g. "a dog"
  std::string part_art;
  std::vector<std::string> choices;
  char expected_answer = 'A';
};

/// Exactly six exemplars in fixed order; slot 5 is the dog/back-leg example
/// with four choices.
struct ExemplarSet {
  std::array<Exemplar, 6> exemplars;

  static ExemplarSet from_json_file(const std::string& path);
};

/// Loads every *.json record in the directory (sorted by filename), pads each
/// record to uniform width, and validates masks. Throws MaskMismatch citing
/// (id, part, row, col) for any part character that disagrees with the full
/// art, and UnknownPart for labels outside the class vocabulary.
std::vector<ArtRecord> load_corpus(const std::string& dir);

/// One part-recognition trial: full image, highlighted part, three shuffled
/// part-name choices of which one is correct, and the six-exemplar prompt.
struct PartTrial {
  std::string record_id;
  std::string object_class;
  std::string part_label;  // the correct answer
  std::string full_art;
  std::string part_art;
  std::array<TrialChoice, 3> choices;  // choice text is a part name
  char correct_label = 'A';
  std::string prompt_text;
};

/// Builds the trial for (record, part): the correct label plus two distinct
/// distractors sampled uniformly from the vocabulary, shuffled uniformly.
/// Throws VocabularyTooSmall with fewer than three feasible labels and
/// InvalidArgs when an exemplar's art equals the queried art.
PartTrial build_part_trial(const ArtRecord& record, const std::string& part,
                           const ClassVocabulary& vocab, const ExemplarSet& exemplars,
                           RandomStream& rng);

/// Answer extraction keyed on sub-question (6).
ChoiceAnswer extract_part_answer(const std::string& response);

}  // namespace boxart
