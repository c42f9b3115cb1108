#ifndef OCO_PRIORS_HPP
#define OCO_PRIORS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace oco {

struct BetaComponent {
  double alpha;
  double beta;
  double weight;
};

struct MassComponent {
  double p;  // strictly positive; a zero mass point would forbid observation
  double weight;
};

// Mixture of beta densities and point masses generating the constant
// observation probability that holds between consecutive observations.
// Weights must sum to 1. Immutable once constructed; shareable across runs.
class MixturePrior {
 public:
  MixturePrior(std::vector<BetaComponent> betas, std::vector<MassComponent> masses);

  const std::vector<BetaComponent>& betas() const { return betas_; }
  const std::vector<MassComponent>& masses() const { return masses_; }

  // Components are indexed betas first, then masses.
  std::size_t component_count() const { return betas_.size() + masses_.size(); }

  struct Draw {
    double p;               // in (0, 1]
    std::size_t component;  // index of the component that produced it
  };

  // Picks a component by weight, then draws from it. Used by the
  // environments to generate the hidden constant probability of each
  // inter-observation segment.
  Draw sample_gap_probability(std::mt19937_64& rng) const;

 private:
  std::vector<BetaComponent> betas_;
  std::vector<MassComponent> masses_;
};

// Per-run posterior recursion state. After an observation the state sits at
// gap term 0 (the next candidate round); advance() moves it one unobserved
// round forward. Component survival factors are kept in log space so that
// gaps of thousands of rounds do not underflow.
class PosteriorState {
 public:
  explicit PosteriorState(const MixturePrior& prior);

  // Back to gap term 0: beta opinions at alpha/(alpha+beta), survival = 1.
  void reset();

  // One more round without an observation.
  void advance();

  long gap_term() const { return gap_; }  // t - t_{k-1} - 1

  // Conditional probability of observing now, given the elapsed gap:
  // a survival-weighted convex combination of the component opinions.
  double posterior_p() const;

  // Minimum component opinion at the current gap; posterior_p never falls
  // below it.
  double lower_bound() const;

  struct ComponentView {
    double opinion;       // p_comp for betas, the mass point for masses
    double log_survival;  // log Q / log F
    double log_weight;
  };
  // Betas first, then masses; exposed for diagnostics and tests.
  std::vector<ComponentView> components() const;

 private:
  struct BetaTrack {
    double alpha, beta, log_weight;
    double p_comp;  // alpha / (alpha + beta + gap)
    double log_q;   // log survival factor
  };
  struct MassTrack {
    double p, log_weight;
    double log_f;  // log (1-p)^gap
  };

  std::vector<BetaTrack> beta_tracks_;
  std::vector<MassTrack> mass_tracks_;
  long gap_ = 0;
};

// Where each segment's prior comes from. Segment k (1-based) spans the
// rounds after the (k-1)-th observation up to and including the k-th.
// Implementations may make the prior depend on k arbitrarily; the built-in
// ones cover the stationary case and an explicit per-segment schedule.
class PriorSource {
 public:
  virtual ~PriorSource() = default;
  virtual const MixturePrior& prior_for_segment(std::size_t k) const = 0;
};

class StationaryPrior final : public PriorSource {
 public:
  explicit StationaryPrior(MixturePrior prior) : prior_(std::move(prior)) {}
  const MixturePrior& prior_for_segment(std::size_t) const override { return prior_; }

 private:
  MixturePrior prior_;
};

// Entry k-1 serves segment k; the last entry persists for later segments.
class ScheduledPrior final : public PriorSource {
 public:
  explicit ScheduledPrior(std::vector<MixturePrior> schedule);
  const MixturePrior& prior_for_segment(std::size_t k) const override;
  std::size_t entries() const { return schedule_.size(); }

 private:
  std::vector<MixturePrior> schedule_;
};

}  // namespace oco

#endif
