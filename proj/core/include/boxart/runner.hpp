#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boxart/client.hpp"
#include "boxart/records.hpp"

namespace boxart {

struct RunOptions {
  int max_parallel = 4;
  std::string model_name = "model";
};

struct RunSummary {
  int completed = 0;
  int skipped = 0;  // already answered in the responses file
  int failed = 0;   // per-trial client errors, recorded and skipped
};

/// Pure grading of one stored response against its trial. Returns nullopt for
/// response records that carry a transport error instead of text.
std::optional<GradeRecord> grade_response(const TrialRecord& trial,
                                          const ResponseRecord& response);

/// Grades every stored response; output order follows the responses file.
std::vector<GradeRecord> grade_stored(const std::vector<TrialRecord>& trials,
                                      const std::vector<ResponseRecord>& responses);

/// Edit-distance baseline grade for one recognition trial record.
GradeRecord baseline_grade(const TrialRecord& trial);

/// One completion per trial, answers extracted and graded, both record
/// streams appended to the JSONL paths. Trials whose ids already appear in
/// the responses file are skipped, so interrupted runs resume cleanly.
/// Up to options.max_parallel completions run concurrently; a single writer
/// keeps the files append-consistent.
RunSummary run_recognition(const std::vector<TrialRecord>& trials, ModelClient& client,
                           const RunOptions& options, const std::string& responses_path,
                           const std::string& grades_path);

/// Generation loop per trial: responses failing the reissue heuristic are
/// re-asked up to max_reissues times, then the attempt is marked gave_up.
RunSummary run_generation(const std::vector<TrialRecord>& trials, ModelClient& client,
                          const RunOptions& options, const std::string& responses_path,
                          const std::string& grades_path);

}  // namespace boxart
