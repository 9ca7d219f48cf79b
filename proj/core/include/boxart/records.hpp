#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxart/diagram.hpp"
#include "boxart/humanart.hpp"
#include "boxart/structure.hpp"
#include "boxart/trials.hpp"

namespace boxart {

/// Ground-truth diagrams behind a trial's images.
struct GroundTruth {
  Diagram reference;
  std::vector<Diagram> choices;  // per displayed choice, empty for generation
};

/// One line of the trials JSONL file. Diagram trials carry settings and
/// ground truth; generation trials omit choices and add max_reissues;
/// part-recognition trials carry the class/part fields instead.
struct TrialRecord {
  std::string trial_id;
  std::string kind;
  std::uint64_t seed = 0;
  std::string reference;
  std::vector<TrialChoice> choices;
  std::optional<char> correct_label;
  std::string prompt;
  std::optional<TrialSettings> settings;
  std::optional<GroundTruth> ground_truth;
  std::optional<int> max_reissues;
  std::optional<std::string> object_class;
  std::optional<std::string> record_id;
  std::optional<std::string> part_label;
  std::optional<std::string> part_art;

  static TrialRecord from_recognition(const RecognitionTrial& trial, std::string trial_id);
  static TrialRecord from_generation(const GenerationTrial& trial, std::string trial_id);
  static TrialRecord from_part(const PartTrial& trial, std::string trial_id, std::uint64_t seed);

  bool is_generation() const { return max_reissues.has_value(); }

  std::string to_json_line() const;
  static TrialRecord from_json_line(const std::string& line);
};

/// One model interaction per trial: the final raw response plus how many
/// reissues it took. gave_up means the 14-reissue budget ran out.
struct ResponseRecord {
  std::string trial_id;
  int attempt_index = 0;
  std::string raw_response;
  int reissue_count = 0;
  bool gave_up = false;
  std::string started_at;
  std::string finished_at;
  std::string model;
  std::optional<std::string> error;

  std::string to_json_line() const;
  static ResponseRecord from_json_line(const std::string& line);
};

/// One grading outcome. Recognition grades carry extracted_answer and
/// correct; generation grades carry metrics; edit-distance grades carry the
/// distances and both scores.
struct GradeRecord {
  std::string trial_id;
  std::string grader;  // "model" or "edit-distance"
  std::optional<std::string> extracted_answer;
  std::optional<GenerationMetrics> metrics;
  std::optional<bool> correct;
  bool flagged = false;
  std::optional<int> unweighted;
  std::optional<double> weighted;
  std::optional<std::array<long, 3>> distances;

  std::string to_json_line() const;
  static GradeRecord from_json_line(const std::string& line);
};

std::string diagram_to_json(const Diagram& diagram);
Diagram diagram_from_json(const std::string& text);

std::vector<TrialRecord> read_trials(const std::string& path);
std::vector<ResponseRecord> read_responses(const std::string& path);
std::vector<GradeRecord> read_grades(const std::string& path);

/// Appends lines to a JSONL file, flushing after each line so interrupted
/// runs keep every completed record.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::string& path);
  ~JsonlWriter();
  JsonlWriter(const JsonlWriter&) = delete;
  JsonlWriter& operator=(const JsonlWriter&) = delete;

  void append(const std::string& line);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace boxart
