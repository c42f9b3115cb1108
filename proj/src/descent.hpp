#ifndef OCO_DESCENT_HPP
#define OCO_DESCENT_HPP

#include <limits>
#include <optional>

#include "geometry.hpp"

namespace oco {

// Projected sub-gradient descent over a FeasibleSet.
//
// The adaptive step rule is eta = D / (sqrt(2) * G) where G^2 accumulates the
// squared norms of every substitute fed so far and D is the set diameter.
// Rounds with a zero substitute (missed observations) neither move the
// decision nor advance G; until the first nonzero substitute arrives the
// state simply holds the initial decision.
class Optimizer {
 public:
  // w1 defaults to the ball center / box midpoint. A supplied w1 must lie in
  // the set.
  explicit Optimizer(FeasibleSet set, std::optional<Vec> w1 = std::nullopt);

  const Vec& decision() const { return w_; }
  double normalizer_sq() const { return g_sq_; }  // G_t^2
  double diameter() const { return diameter_; }
  const FeasibleSet& set() const { return set_; }

  // Adaptive-step update with the substitute gradient.
  void step(const Vec& g_tilde);

  // Update with a caller-chosen step size; callers must supply a
  // nonincreasing eta sequence (checked when assertions are enabled).
  void step_with_fixed_eta(const Vec& g_tilde, double eta);

 private:
  void check_substitute(const Vec& g_tilde) const;

  FeasibleSet set_;
  Vec w_;
  double g_sq_ = 0.0;
  double diameter_;
  double last_fixed_eta_ = std::numeric_limits<double>::infinity();
};

}  // namespace oco

#endif
