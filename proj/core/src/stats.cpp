#include "boxart/stats.hpp"

#include <cmath>

#include "boxart/error.hpp"

namespace boxart {
namespace {

double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_pmf(long n, double p, long k) {
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double log_pmf = log_choose(n, k) + static_cast<double>(k) * std::log(p) +
                         static_cast<double>(n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

}  // namespace

double binomial_cdf(long n, double p, long k) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) sum += binomial_pmf(n, p, i);
  return sum < 1.0 ? sum : 1.0;
}

double binomial_tail_ge(long n, double p, long k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double sum = 0.0;
  for (long i = k; i <= n; ++i) sum += binomial_pmf(n, p, i);
  return sum < 1.0 ? sum : 1.0;
}

std::pair<double, double> clopper_pearson(long k, long n, double alpha) {
  if (n < 1 || k < 0 || k > n || alpha <= 0.0 || alpha >= 1.0) {
    throw Error(ErrorCode::InvalidArgs, "clopper_pearson: need 0 <= k <= n, n >= 1, alpha in (0,1)");
  }
  const double half = alpha / 2.0;
  constexpr double kTol = 1e-9;

  double lo = 0.0;
  if (k > 0) {
    // Largest p with P(Bin(n,p) >= k) = alpha/2, i.e. P(X <= k-1) = 1 - alpha/2.
    double a = 0.0, b = 1.0;
    while (b - a > kTol) {
      const double mid = 0.5 * (a + b);
      if (binomial_cdf(n, mid, k - 1) > 1.0 - half) {
        a = mid;
      } else {
        b = mid;
      }
    }
    lo = 0.5 * (a + b);
  }

  double hi = 1.0;
  if (k < n) {
    // Smallest p with P(Bin(n,p) <= k) = alpha/2.
    double a = 0.0, b = 1.0;
    while (b - a > kTol) {
      const double mid = 0.5 * (a + b);
      if (binomial_cdf(n, mid, k) > half) {
        a = mid;
      } else {
        b = mid;
      }
    }
    hi = 0.5 * (a + b);
  }
  return {lo, hi};
}

double stratified_accuracy(const PartAccuracyGroup& group) {
  if (group.parts.empty()) throw Error(ErrorCode::EmptyGroup, "image " + group.image_id);
  double sum = 0.0;
  for (const auto& part : group.parts) {
    if (part.samples < 1 || part.successes < 0 || part.successes > part.samples) {
      throw Error(ErrorCode::InvalidArgs, "bad counts for part " + part.part);
    }
    sum += static_cast<double>(part.successes) / static_cast<double>(part.samples);
  }
  return sum / static_cast<double>(group.parts.size());
}

double round_percent(double fraction) {
  return std::floor(fraction * 1000.0 + 0.5) / 10.0;
}

}  // namespace boxart
