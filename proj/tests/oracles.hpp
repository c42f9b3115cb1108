// Test-only reference implementations, kept independent of the library's
// computation paths on purpose.
#ifndef OCO_TESTS_ORACLES_HPP
#define OCO_TESTS_ORACLES_HPP

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <vector>

#include "priors.hpp"

namespace oracles {

// Conditional observation probability at gap term e (= gap - 1) by direct
// numerical integration of the prior-weighted geometric likelihood:
//   p = Int P(x) (1-x)^e x dx / Int P(x) (1-x)^e dx
// Beta components are integrated with a tanh-sinh rule (handles the
// endpoint singularities of alpha < 1 or beta < 1); mass components
// contribute their terms exactly.
inline double posterior_p_by_quadrature(const oco::MixturePrior& prior, long gap_term) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double e = static_cast<double>(gap_term);
  double numer = 0.0, denom = 0.0;

  for (const auto& b : prior.betas()) {
    double log_norm = std::lgamma(b.alpha) + std::lgamma(b.beta) - std::lgamma(b.alpha + b.beta);
    auto density = [&](double x) {
      return std::exp((b.alpha - 1.0) * std::log(x) + (b.beta - 1.0 + e) * std::log1p(-x) - log_norm);
    };
    denom += b.weight * integrator.integrate(density, 0.0, 1.0);
    numer += b.weight * integrator.integrate([&](double x) { return x * density(x); }, 0.0, 1.0);
  }
  for (const auto& m : prior.masses()) {
    double survive = m.weight * std::pow(1.0 - m.p, e);
    denom += survive;
    numer += survive * m.p;
  }
  return numer / denom;
}

// Naive recount of the empirical gap estimate: append the current gap to
// the full history, then scan it. The scan is written branchlessly so the
// O(k)-per-observation brute force stays within the acceptance budget.
class RecountingGapOracle {
 public:
  double record(long gap) {
    history_.push_back(gap);
    long eq = 0, geq = 0;
    for (long g : history_) {
      eq += (g == gap);
      geq += (g >= gap);
    }
    return static_cast<double>(eq) / static_cast<double>(geq);
  }

  double cdf(long d) const {
    if (history_.empty()) return 0.0;
    long c = 0;
    for (long g : history_) {
      if (g <= d) ++c;
    }
    return static_cast<double>(c) / static_cast<double>(history_.size());
  }

 private:
  std::vector<long> history_;
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
};

// Welford one-pass moments; doubles as the second algorithm for the
// aggregation agreement check.
inline MeanSd welford(const std::vector<double>& xs) {
  double mean = 0.0, m2 = 0.0;
  long n = 0;
  for (double x : xs) {
    ++n;
    double d1 = x - mean;
    mean += d1 / static_cast<double>(n);
    m2 += d1 * (x - mean);
  }
  MeanSd out;
  out.mean = mean;
  out.sd = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
  out.se = n > 0 ? out.sd / std::sqrt(static_cast<double>(n)) : 0.0;
  return out;
}

}  // namespace oracles

#endif
