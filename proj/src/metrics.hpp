#ifndef OCO_METRICS_HPP
#define OCO_METRICS_HPP

#include <optional>
#include <vector>

#include "geometry.hpp"

namespace oco {

// Value of min_{w in set} <s, w>; the hindsight comparator for linear
// losses. Closed form for both set shapes.
double min_linear_over(const FeasibleSet& set, const Vec& s);
Vec argmin_linear_over(const FeasibleSet& set, const Vec& s);

// Incremental realized regret for linear losses: sum_t <g_t, w_t> minus the
// best fixed decision's cumulative loss, recomputed against the hindsight
// comparator for the rounds seen so far.
class HindsightLinearRegret {
 public:
  explicit HindsightLinearRegret(FeasibleSet set);
  void add(const Vec& g, const Vec& w);
  double regret() const;
  const Vec& gradient_sum() const { return sum_g_; }

 private:
  FeasibleSet set_;
  Vec sum_g_;
  double learner_loss_ = 0.0;
};

// One-shot form used by tests.
double regret_linear(const FeasibleSet& set, const std::vector<Vec>& gradients,
                     const std::vector<Vec>& decisions);

// Diagnostic regret estimate from the observation log:
// sqrt(2) * D * sqrt(sum ||g_k||^2 / p_k^2).
double regret_estimate_hat(const std::vector<double>& observed_norms,
                           const std::vector<double>& probs, double diameter);

struct TrialSummary {
  double mean = 0.0;
  double sd = 0.0;  // unbiased (n-1)
  long trials = 0;
};

// Mean and unbiased SD of the per-trial final values. Requires n >= 2.
TrialSummary aggregate(const std::vector<double>& finals);

}  // namespace oco

#endif
