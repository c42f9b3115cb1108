#ifndef OCO_ESTIMATORS_HPP
#define OCO_ESTIMATORS_HPP

#include <memory>
#include <optional>
#include <string>

#include "empirical.hpp"
#include "geometry.hpp"
#include "priors.hpp"

namespace oco {

// The six substitute strategies compared by the harness.
enum class Variant { ignore, with_known, with_prior, uniform, gml, empirical_ep };

const char* to_string(Variant v);
std::optional<Variant> variant_from_string(const std::string& name);

// One round of feedback. On a miss the learner sees nothing; on an
// observation it sees the (possibly noise-corrupted) sub-gradient and, when
// the disclosure mode allows, the probability that produced it.
struct ObservationEvent {
  long round = 0;
  bool observed = false;
  Vec grad;  // empty when missed
  std::optional<double> p_disclosed;

  static ObservationEvent missed(long t) { return {t, false, {}, std::nullopt}; }
  static ObservationEvent seen(long t, Vec g, std::optional<double> p = std::nullopt) {
    return {t, true, std::move(g), p};
  }
};

// Maps observation events to the substitute fed to the optimizer. Every
// strategy emits the zero vector on a miss; they differ only in how an
// observed gradient is scaled. Estimators see (round, observation) and
// nothing else; one instance serves one run.
class GradientEstimator {
 public:
  virtual ~GradientEstimator() = default;

  Vec estimate(const ObservationEvent& ev);

  long last_observation_round() const { return last_obs_round_; }
  // Effective observation probability used at the most recent observed
  // event (1 for the strategy that ignores scaling); 0 until one occurs.
  double last_p_used() const { return last_p_used_; }

 protected:
  explicit GradientEstimator(std::size_t dim) : dim_(dim) {}
  // gap = ev.round - last observation round (>= 1)
  virtual Vec on_observed(const ObservationEvent& ev, long gap) = 0;
  virtual void on_missed() {}

  // g / p, recording p as the effective probability for the trace.
  Vec scale_by_inverse_p(const Vec& g, double p);

  std::size_t dim_;
  double last_p_used_ = 0.0;

 private:
  long last_obs_round_ = 0;  // t_{k-1}, 0 before the first observation
};

std::unique_ptr<GradientEstimator> make_estimator(Variant v, std::size_t dim,
                                                  const MixturePrior* prior = nullptr,
                                                  bool exclude_current = false);

// As above, but with_prior tracks a per-segment prior source.
std::unique_ptr<GradientEstimator> make_estimator(Variant v, std::size_t dim,
                                                  std::shared_ptr<const PriorSource> prior_source,
                                                  bool exclude_current = false);

// Additive-noise channel: the substitute is simply the corrupted gradient.
Vec noisy_passthrough(const Vec& g, const Vec& noise);

}  // namespace oco

#endif
