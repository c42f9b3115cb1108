#include "descent.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace oco {

Optimizer::Optimizer(FeasibleSet set, std::optional<Vec> w1)
    : set_(std::move(set)), diameter_(set_.diameter()) {
  if (w1) {
    if (w1->size() != set_.dim()) throw std::invalid_argument("optimizer: w1 dimension mismatch");
    if (!set_.contains(*w1)) throw std::invalid_argument("optimizer: w1 outside the feasible set");
    w_ = std::move(*w1);
  } else {
    w_ = set_.center();
  }
}

void Optimizer::check_substitute(const Vec& g_tilde) const {
  if (g_tilde.size() != w_.size()) throw std::invalid_argument("step: gradient dimension mismatch");
  if (!all_finite(g_tilde)) throw std::invalid_argument("step: non-finite gradient substitute");
}

void Optimizer::step(const Vec& g_tilde) {
  check_substitute(g_tilde);
  double gsq = norm_sq(g_tilde);
  if (gsq == 0.0) return;  // missed-observation convention: no step, G unchanged
  g_sq_ += gsq;
  double eta = diameter_ / (std::sqrt(2.0) * std::sqrt(g_sq_));
  w_ = set_.project(axpy(w_, -eta, g_tilde));
}

void Optimizer::step_with_fixed_eta(const Vec& g_tilde, double eta) {
  check_substitute(g_tilde);
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("step: eta must be positive");
  assert(eta <= last_fixed_eta_ && "fixed eta sequence must be nonincreasing");
  last_fixed_eta_ = eta;
  w_ = set_.project(axpy(w_, -eta, g_tilde));
}

}  // namespace oco
