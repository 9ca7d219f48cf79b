#include "boxart/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "boxart/baseline.hpp"
#include "boxart/error.hpp"
#include "boxart/humanart.hpp"
#include "boxart/structure.hpp"
#include "boxart/trials.hpp"

namespace boxart {
namespace {

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&secs, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::set<std::string> answered_ids(const std::string& responses_path) {
  std::set<std::string> ids;
  if (!std::filesystem::exists(responses_path)) return ids;
  for (const ResponseRecord& record : read_responses(responses_path)) {
    // Error records are not answers; a resumed run retries those trials.
    if (!record.error) ids.insert(record.trial_id);
  }
  return ids;
}

GradeRecord grade_recognition_text(const TrialRecord& trial, const std::string& raw) {
  GradeRecord grade;
  grade.trial_id = trial.trial_id;
  grade.grader = "model";
  const ChoiceAnswer answer = trial.kind == "part-recognition" ? extract_part_answer(raw)
                                                               : extract_choice_answer(raw);
  if (answer.flagged()) {
    grade.flagged = true;
    return grade;
  }
  grade.extracted_answer = std::string(1, *answer.label);
  grade.correct = trial.correct_label && *answer.label == *trial.correct_label;
  return grade;
}

GradeRecord grade_generation_record(const TrialRecord& trial, const ResponseRecord& response) {
  GradeRecord grade;
  grade.trial_id = trial.trial_id;
  grade.grader = "model";
  if (response.gave_up) {
    grade.flagged = true;
    return grade;
  }
  const std::optional<std::string> art = extract_art(response.raw_response);
  if (!art) {
    grade.flagged = true;
    return grade;
  }
  if (!trial.ground_truth || !trial.settings) {
    throw Error(ErrorCode::InvalidArgs, trial.trial_id + ": generation trial lacks ground truth");
  }
  const GenerationReference reference{trial.ground_truth->reference, trial.reference};
  const NoiseSpec noise = trial.settings->noise.value_or(NoiseSpec{});
  grade.metrics = grade_generation(trial.settings->kind, reference, *art, noise);
  return grade;
}

/// Shared run loop: worker threads pull trial indices, `one_trial` produces
/// the records, a single writer appends them.
template <typename OneTrial>
RunSummary run_pool(const std::vector<TrialRecord>& trials, const RunOptions& options,
                    const std::string& responses_path, const std::string& grades_path,
                    OneTrial&& one_trial) {
  const std::set<std::string> done = answered_ids(responses_path);
  std::vector<const TrialRecord*> pending;
  for (const TrialRecord& trial : trials) {
    if (!done.count(trial.trial_id)) pending.push_back(&trial);
  }

  RunSummary summary;
  summary.skipped = static_cast<int>(trials.size() - pending.size());

  JsonlWriter responses_out(responses_path);
  JsonlWriter grades_out(grades_path);
  std::mutex write_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<int> completed{0};
  std::atomic<int> failed{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= pending.size()) return;
      const TrialRecord& trial = *pending[index];
      ResponseRecord response;
      std::optional<GradeRecord> grade;
      try {
        response = one_trial(trial);
        grade = grade_response(trial, response);
        ++completed;
      } catch (const Error& error) {
        response.trial_id = trial.trial_id;
        response.model = options.model_name;
        response.error = error.what();
        response.started_at = response.finished_at = iso8601_now();
        ++failed;
      }
      std::lock_guard<std::mutex> lock(write_mutex);
      responses_out.append(response.to_json_line());
      if (grade) grades_out.append(grade->to_json_line());
    }
  };

  const int threads = std::max(1, std::min(options.max_parallel,
                                           static_cast<int>(pending.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  summary.completed = completed.load();
  summary.failed = failed.load();
  return summary;
}

}  // namespace

std::optional<GradeRecord> grade_response(const TrialRecord& trial,
                                          const ResponseRecord& response) {
  if (response.error) return std::nullopt;
  if (trial.is_generation()) return grade_generation_record(trial, response);
  return grade_recognition_text(trial, response.raw_response);
}

std::vector<GradeRecord> grade_stored(const std::vector<TrialRecord>& trials,
                                      const std::vector<ResponseRecord>& responses) {
  std::map<std::string, const TrialRecord*> by_id;
  for (const TrialRecord& trial : trials) by_id[trial.trial_id] = &trial;
  std::vector<GradeRecord> grades;
  for (const ResponseRecord& response : responses) {
    const auto it = by_id.find(response.trial_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::InvalidArgs, "response for unknown trial " + response.trial_id);
    }
    if (auto grade = grade_response(*it->second, response)) grades.push_back(std::move(*grade));
  }
  return grades;
}

GradeRecord baseline_grade(const TrialRecord& trial) {
  if (trial.is_generation() || trial.choices.size() != 3 || !trial.correct_label) {
    throw Error(ErrorCode::InvalidArgs, trial.trial_id + ": baseline needs a recognition trial");
  }
  std::array<std::string, 3> texts;
  int correct_index = 0;
  for (int i = 0; i < 3; ++i) {
    texts[static_cast<std::size_t>(i)] = trial.choices[static_cast<std::size_t>(i)].text;
    if (trial.choices[static_cast<std::size_t>(i)].label == *trial.correct_label) {
      correct_index = i;
    }
  }
  const BaselineScore score = score_choice_texts(trial.reference, texts, correct_index);
  GradeRecord grade;
  grade.trial_id = trial.trial_id;
  grade.grader = "edit-distance";
  grade.correct = score.unweighted == 1;
  grade.unweighted = score.unweighted;
  grade.weighted = score.weighted;
  grade.distances = score.distances;
  return grade;
}

RunSummary run_recognition(const std::vector<TrialRecord>& trials, ModelClient& client,
                           const RunOptions& options, const std::string& responses_path,
                           const std::string& grades_path) {
  return run_pool(trials, options, responses_path, grades_path,
                  [&](const TrialRecord& trial) {
                    ResponseRecord response;
                    response.trial_id = trial.trial_id;
                    response.model = options.model_name;
                    response.started_at = iso8601_now();
                    response.raw_response = client.complete(trial.prompt);
                    response.finished_at = iso8601_now();
                    return response;
                  });
}

RunSummary run_generation(const std::vector<TrialRecord>& trials, ModelClient& client,
                          const RunOptions& options, const std::string& responses_path,
                          const std::string& grades_path) {
  return run_pool(trials, options, responses_path, grades_path,
                  [&](const TrialRecord& trial) {
                    const int cap = trial.max_reissues.value_or(14);
                    ResponseRecord response;
                    response.trial_id = trial.trial_id;
                    response.model = options.model_name;
                    response.started_at = iso8601_now();
                    int reissues = 0;
                    std::string raw = client.complete(trial.prompt);
                    while (needs_reissue(raw) && reissues < cap) {
                      ++reissues;
                      raw = client.complete(trial.prompt);
                    }
                    response.raw_response = raw;
                    response.reissue_count = reissues;
                    response.attempt_index = reissues;
                    response.gave_up = reissues >= cap && needs_reissue(raw);
                    response.finished_at = iso8601_now();
                    return response;
                  });
}

}  // namespace boxart
