#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxart/diagram.hpp"
#include "boxart/grid.hpp"
#include "boxart/rng.hpp"

namespace boxart {

enum class TaskKind {
  RecogVerbatim,
  RecogTranslation,
  RecogRotation,
  RecogNoise,
  RecogScale,
  GenVerbatim,
  GenTranslation,
  GenNoise,
  GenScale,
  GenRotation,
};

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& name);
bool is_generation_kind(TaskKind kind);

enum class EnlargedSide { Reference, Choices };

/// Everything needed to build one trial deterministically.
struct TrialSettings {
  TaskKind kind = TaskKind::RecogVerbatim;
  GenParams gen_params;
  std::optional<NoiseSpec> noise;
  bool padding_kept = true;
  std::optional<EnlargedSide> enlarged_side;
  std::uint64_t seed = 0;

  bool names_shown() const { return gen_params.names_shown; }
};

/// Canonical settings for a task kind, matching the experiment parameters:
/// rotation takes a size factor in {1.0, 0.6, 0.3} selecting (24,14,8),
/// (15,9,5) or (8,5,3); noise takes a level and the padded/ragged switch
/// (ragged lowers the box cap to 6); scale runs at (12,7,4).
TrialSettings make_settings(TaskKind kind, bool names_shown = false, double size_factor = 1.0,
                            double noise_level = 0.04, bool padding_kept = true,
                            EnlargedSide enlarged = EnlargedSide::Reference);

/// Throws InvalidArgs when a field combination is inconsistent with the kind.
void validate_settings(const TrialSettings& settings);

struct TrialChoice {
  char label = 'A';
  std::string text;
};

/// One multiple-choice recognition trial: a reference image, three choices of
/// which exactly one derives from the reference, and the fully rendered
/// prompt.
struct RecognitionTrial {
  TrialSettings settings;
  std::string reference_text;
  std::array<TrialChoice, 3> choices;
  char correct_label = 'A';
  std::string question_text;
  std::string prompt_text;
  Diagram reference_diagram;
  std::array<Diagram, 3> choice_diagrams;  // ground truth per displayed choice

  const TrialChoice& choice(char label) const;
};

/// One generation trial: a reference image and the instruction to output its
/// transform. All generation trials carry name labels.
struct GenerationTrial {
  TrialSettings settings;
  Diagram reference_diagram;
  std::string reference_text;
  std::string prompt_text;
  int max_reissues = 14;
};

RecognitionTrial build_recognition_trial(const TrialSettings& settings, RandomStream& rng);
GenerationTrial build_generation_trial(const TrialSettings& settings, RandomStream& rng);

/// Byte-exact prompt assembly for a recognition trial.
std::string render_recognition_prompt(const RecognitionTrial& trial);

struct ChoiceAnswer {
  std::optional<char> label;  // 'A'/'B'/'C'; absent means flagged for review
  bool flagged() const { return !label.has_value(); }
};

/// Finds the answer to sub-question (4): the first "Choice X" after the last
/// "(4)" / "4)" / "4." line marker, falling back to the last "Choice X"
/// anywhere, case-insensitive. Flagged when neither matches.
ChoiceAnswer extract_choice_answer(const std::string& response);

/// True when a generation response must be re-asked: fewer than three lines,
/// or no box-vertex signature anywhere in the text.
bool needs_reissue(const std::string& response);

}  // namespace boxart
