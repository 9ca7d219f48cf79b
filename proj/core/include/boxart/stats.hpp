#pragma once

#include <string>
#include <utility>
#include <vector>

namespace boxart {

/// Per-part success counts for one image, for stratified accuracy.
struct PartAccuracyGroup {
  std::string image_id;
  struct PartCount {
    std::string part;
    long successes = 0;
    long samples = 0;
  };
  std::vector<PartCount> parts;
};

/// Exact (Clopper-Pearson) equal-tailed binomial confidence interval,
/// solved by bisection on the binomial CDF to within 1e-9.
std::pair<double, double> clopper_pearson(long k, long n, double alpha);

/// Uniform average over per-part accuracies k/n. Throws EmptyGroup.
double stratified_accuracy(const PartAccuracyGroup& group);

/// P(X >= k) for X ~ Binomial(n, p), by exact summation.
double binomial_tail_ge(long n, double p, long k);

/// Exact binomial CDF P(X <= k).
double binomial_cdf(long n, double p, long k);

/// Percentage rounded half-up to one decimal, the convention used in every
/// reported table.
double round_percent(double fraction);

}  // namespace boxart
