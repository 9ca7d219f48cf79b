#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boxart/records.hpp"

namespace boxart {

/// One aggregated row: observed accuracy with its exact binomial interval,
/// all in percent rounded half-up to one decimal. Weighted edit-distance rows
/// carry no interval (the score is not a binomial count).
struct ReportRow {
  std::string setting;
  double acc = 0.0;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
  long n = 0;
  std::string grader;
};

/// Human-readable label of the trial's experimental setting, used to group
/// report rows.
std::string setting_label(const TrialRecord& trial);

/// Groups non-flagged grades by (setting, grader). Sample sizes come from
/// the records actually graded, never from a target constant.
std::vector<ReportRow> build_report(const std::vector<TrialRecord>& trials,
                                    const std::vector<GradeRecord>& grades, double alpha = 0.05);

std::string to_markdown(const std::vector<ReportRow>& rows);

/// CSV with header `setting,acc,ci_lo,ci_hi,n,grader`.
std::string to_csv(const std::vector<ReportRow>& rows);

}  // namespace boxart
