#include "estimators.hpp"

#include <stdexcept>

namespace oco {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::ignore: return "ignore";
    case Variant::with_known: return "with_known";
    case Variant::with_prior: return "with_prior";
    case Variant::uniform: return "uniform";
    case Variant::gml: return "gml";
    case Variant::empirical_ep: return "empirical_ep";
  }
  return "?";
}

std::optional<Variant> variant_from_string(const std::string& name) {
  for (Variant v : {Variant::ignore, Variant::with_known, Variant::with_prior, Variant::uniform,
                    Variant::gml, Variant::empirical_ep}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

Vec GradientEstimator::estimate(const ObservationEvent& ev) {
  if (!ev.observed) {
    on_missed();
    return Vec(dim_, 0.0);
  }
  if (ev.grad.size() != dim_) throw std::invalid_argument("estimator: gradient dimension mismatch");
  if (!all_finite(ev.grad)) throw std::invalid_argument("estimator: non-finite observed gradient");
  if (ev.round <= last_obs_round_) {
    throw std::logic_error("estimator: observation rounds must strictly increase");
  }
  long gap = ev.round - last_obs_round_;
  Vec g_tilde = on_observed(ev, gap);
  last_obs_round_ = ev.round;
  return g_tilde;
}

Vec GradientEstimator::scale_by_inverse_p(const Vec& g, double p) {
  if (!(p > 0.0)) throw std::logic_error("estimator: nonpositive observation probability");
  last_p_used_ = p;
  return scaled(g, 1.0 / p);
}

namespace {

class IgnoreEstimator final : public GradientEstimator {
 public:
  explicit IgnoreEstimator(std::size_t dim) : GradientEstimator(dim) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long) override {
    last_p_used_ = 1.0;
    return ev.grad;
  }
};

class KnownProbEstimator final : public GradientEstimator {
 public:
  explicit KnownProbEstimator(std::size_t dim) : GradientEstimator(dim) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long) override {
    if (!ev.p_disclosed) {
      throw std::invalid_argument("estimator: with_known requires a disclosed probability");
    }
    if (!(*ev.p_disclosed > 0.0) || *ev.p_disclosed > 1.0) {
      throw std::invalid_argument("estimator: disclosed probability outside (0,1]");
    }
    return scale_by_inverse_p(ev.grad, *ev.p_disclosed);
  }
};

// Naive uniform-prior assumption: scale by the gap plus one.
class UniformEstimator final : public GradientEstimator {
 public:
  explicit UniformEstimator(std::size_t dim) : GradientEstimator(dim) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long gap) override {
    last_p_used_ = 1.0 / static_cast<double>(gap + 1);
    return scaled(ev.grad, static_cast<double>(gap + 1));
  }
};

// Greedy maximum-likelihood estimate of a constant segment probability:
// scale by the gap itself.
class GmlEstimator final : public GradientEstimator {
 public:
  explicit GmlEstimator(std::size_t dim) : GradientEstimator(dim) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long gap) override {
    last_p_used_ = 1.0 / static_cast<double>(gap);
    return scaled(ev.grad, static_cast<double>(gap));
  }
};

class PriorEstimator final : public GradientEstimator {
 public:
  PriorEstimator(std::size_t dim, std::shared_ptr<const PriorSource> source)
      : GradientEstimator(dim), source_(std::move(source)), state_(source_->prior_for_segment(1)) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long gap) override {
    // catch up if the caller skipped missed-round ticks
    while (state_.gap_term() < gap - 1) state_.advance();
    Vec out = scale_by_inverse_p(ev.grad, state_.posterior_p());
    ++segment_;
    state_ = PosteriorState(source_->prior_for_segment(segment_));
    return out;
  }
  void on_missed() override { state_.advance(); }

 private:
  std::shared_ptr<const PriorSource> source_;
  std::size_t segment_ = 1;
  PosteriorState state_;
};

class EmpiricalEstimator final : public GradientEstimator {
 public:
  EmpiricalEstimator(std::size_t dim, bool exclude_current)
      : GradientEstimator(dim), hist_(exclude_current) {}

 protected:
  Vec on_observed(const ObservationEvent& ev, long gap) override {
    return scale_by_inverse_p(ev.grad, hist_.record_observation_and_estimate(gap));
  }
  void on_missed() override { hist_.advance_round(); }

 private:
  GapHistogram hist_;
};

}  // namespace

std::unique_ptr<GradientEstimator> make_estimator(Variant v, std::size_t dim,
                                                  const MixturePrior* prior, bool exclude_current) {
  std::shared_ptr<const PriorSource> source;
  if (prior) source = std::make_shared<StationaryPrior>(*prior);
  return make_estimator(v, dim, std::move(source), exclude_current);
}

std::unique_ptr<GradientEstimator> make_estimator(Variant v, std::size_t dim,
                                                  std::shared_ptr<const PriorSource> prior_source,
                                                  bool exclude_current) {
  switch (v) {
    case Variant::ignore: return std::make_unique<IgnoreEstimator>(dim);
    case Variant::with_known: return std::make_unique<KnownProbEstimator>(dim);
    case Variant::with_prior:
      if (!prior_source) throw std::invalid_argument("estimator: with_prior requires a prior");
      return std::make_unique<PriorEstimator>(dim, std::move(prior_source));
    case Variant::uniform: return std::make_unique<UniformEstimator>(dim);
    case Variant::gml: return std::make_unique<GmlEstimator>(dim);
    case Variant::empirical_ep: return std::make_unique<EmpiricalEstimator>(dim, exclude_current);
  }
  throw std::invalid_argument("estimator: unknown variant");
}

Vec noisy_passthrough(const Vec& g, const Vec& noise) { return axpy(g, 1.0, noise); }

}  // namespace oco
