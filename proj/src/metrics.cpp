#include "metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace oco {

double min_linear_over(const FeasibleSet& set, const Vec& s) {
  if (const Ball* b = set.as_ball()) {
    return inner(s, b->center) - b->radius * norm(s);
  }
  const Box& bx = *set.as_box();
  if (s.size() != bx.lower.size()) throw std::invalid_argument("min_linear_over: dimension mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) v += s[i] > 0.0 ? s[i] * bx.lower[i] : s[i] * bx.upper[i];
  return v;
}

Vec argmin_linear_over(const FeasibleSet& set, const Vec& s) {
  if (const Ball* b = set.as_ball()) {
    double n = norm(s);
    if (n == 0.0) return b->center;
    return axpy(b->center, -b->radius / n, s);
  }
  const Box& bx = *set.as_box();
  Vec out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] > 0.0 ? bx.lower[i] : bx.upper[i];
  return out;
}

HindsightLinearRegret::HindsightLinearRegret(FeasibleSet set)
    : set_(std::move(set)), sum_g_(set_.dim(), 0.0) {}

void HindsightLinearRegret::add(const Vec& g, const Vec& w) {
  learner_loss_ += inner(g, w);
  for (std::size_t i = 0; i < sum_g_.size(); ++i) sum_g_[i] += g[i];
}

double HindsightLinearRegret::regret() const {
  return learner_loss_ - min_linear_over(set_, sum_g_);
}

double regret_linear(const FeasibleSet& set, const std::vector<Vec>& gradients,
                     const std::vector<Vec>& decisions) {
  if (gradients.size() != decisions.size()) {
    throw std::invalid_argument("regret_linear: gradient/decision length mismatch");
  }
  HindsightLinearRegret r(set);
  for (std::size_t t = 0; t < gradients.size(); ++t) r.add(gradients[t], decisions[t]);
  return r.regret();
}

double regret_estimate_hat(const std::vector<double>& observed_norms,
                           const std::vector<double>& probs, double diameter) {
  if (observed_norms.size() != probs.size()) {
    throw std::invalid_argument("regret_estimate_hat: norm/prob length mismatch");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    double term = observed_norms[k] / probs[k];
    s += term * term;
  }
  return std::sqrt(2.0) * diameter * std::sqrt(s);
}

TrialSummary aggregate(const std::vector<double>& finals) {
  const std::size_t n = finals.size();
  if (n < 2) throw std::invalid_argument("aggregate: need at least 2 trials for a standard deviation");
  double mean = 0.0;
  for (double v : finals) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : finals) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1)), static_cast<long>(n)};
}

}  // namespace oco
