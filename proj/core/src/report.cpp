#include "boxart/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "boxart/error.hpp"
#include "boxart/stats.hpp"
#include "boxart/trials.hpp"

namespace boxart {
namespace {

std::string format_one_decimal(double value) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << value;
  return out.str();
}

double size_factor_of(int side) {
  if (side == 24) return 1.0;
  if (side == 15) return 0.6;
  if (side == 8) return 0.3;
  return 0.0;
}

}  // namespace

std::string setting_label(const TrialRecord& trial) {
  if (trial.kind == "part-recognition") {
    // One row per (class, image, part), the granularity of the part tables.
    return "part " + trial.object_class.value_or("?") + " " +
           trial.record_id.value_or("?") + " " + trial.part_label.value_or("?");
  }
  if (!trial.settings) return trial.kind;
  const TrialSettings& s = *trial.settings;
  std::ostringstream label;
  label << trial.kind;
  switch (s.kind) {
    case TaskKind::RecogRotation: {
      const double factor = size_factor_of(s.gen_params.side);
      label << " size=" << format_one_decimal(factor)
            << " names=" << (s.names_shown() ? "on" : "off");
      break;
    }
    case TaskKind::RecogNoise:
      label << " lvl=" << (s.noise ? s.noise->level : 0.0)
            << " padding=" << (s.padding_kept ? "kept" : "removed");
      break;
    case TaskKind::RecogScale:
      label << " enlarged="
            << (s.enlarged_side == EnlargedSide::Reference ? "ref" : "choices")
            << " names=" << (s.names_shown() ? "on" : "off");
      break;
    default:
      break;
  }
  return label.str();
}

std::vector<ReportRow> build_report(const std::vector<TrialRecord>& trials,
                                    const std::vector<GradeRecord>& grades, double alpha) {
  std::map<std::string, std::string> label_by_id;
  for (const TrialRecord& trial : trials) label_by_id[trial.trial_id] = setting_label(trial);

  struct Bucket {
    long n = 0;
    long correct = 0;
    double weighted_sum = 0.0;
    bool has_weighted = false;
  };
  std::map<std::pair<std::string, std::string>, Bucket> buckets;

  for (const GradeRecord& grade : grades) {
    if (grade.flagged || !grade.correct.has_value()) continue;
    const auto it = label_by_id.find(grade.trial_id);
    if (it == label_by_id.end()) {
      throw Error(ErrorCode::InvalidArgs, "grade for unknown trial " + grade.trial_id);
    }
    Bucket& bucket = buckets[{it->second, grade.grader}];
    ++bucket.n;
    if (*grade.correct) ++bucket.correct;
    if (grade.weighted) {
      bucket.weighted_sum += *grade.weighted;
      bucket.has_weighted = true;
    }
  }

  std::vector<ReportRow> rows;
  for (const auto& [key, bucket] : buckets) {
    ReportRow row;
    row.setting = key.first;
    row.grader = key.second;
    row.n = bucket.n;
    row.acc = round_percent(static_cast<double>(bucket.correct) /
                            static_cast<double>(bucket.n));
    const auto [lo, hi] = clopper_pearson(bucket.correct, bucket.n, alpha);
    row.ci_lo = round_percent(lo);
    row.ci_hi = round_percent(hi);
    rows.push_back(row);
    if (bucket.has_weighted) {
      ReportRow weighted;
      weighted.setting = key.first;
      weighted.grader = key.second + "-weighted";
      weighted.n = bucket.n;
      weighted.acc = round_percent(bucket.weighted_sum / static_cast<double>(bucket.n));
      rows.push_back(weighted);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.setting != b.setting) return a.setting < b.setting;
    return a.grader < b.grader;
  });
  return rows;
}

std::string to_markdown(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "| setting | acc | ci_lo | ci_hi | n | grader |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const ReportRow& row : rows) {
    out << "| " << row.setting << " | " << format_one_decimal(row.acc) << " | "
        << (row.ci_lo ? format_one_decimal(*row.ci_lo) : std::string()) << " | "
        << (row.ci_hi ? format_one_decimal(*row.ci_hi) : std::string()) << " | " << row.n
        << " | " << row.grader << " |\n";
  }
  return out.str();
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "setting,acc,ci_lo,ci_hi,n,grader\n";
  for (const ReportRow& row : rows) {
    out << row.setting << ',' << format_one_decimal(row.acc) << ','
        << (row.ci_lo ? format_one_decimal(*row.ci_lo) : std::string()) << ','
        << (row.ci_hi ? format_one_decimal(*row.ci_hi) : std::string()) << ',' << row.n << ','
        << row.grader << '\n';
  }
  return out.str();
}

}  // namespace boxart
