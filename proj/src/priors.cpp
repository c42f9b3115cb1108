#include "priors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oco {

namespace {

constexpr double kWeightTol = 1e-12;
// Floor for sampled probabilities; a hidden p of exactly 0 would make the
// next observation impossible.
constexpr double kMinSampledP = 1e-12;

}  // namespace

MixturePrior::MixturePrior(std::vector<BetaComponent> betas, std::vector<MassComponent> masses)
    : betas_(std::move(betas)), masses_(std::move(masses)) {
  if (betas_.empty() && masses_.empty()) throw std::invalid_argument("prior: at least one component required");
  double total = 0.0;
  for (const auto& b : betas_) {
    if (!(b.alpha > 0.0) || !(b.beta > 0.0)) throw std::invalid_argument("prior: beta parameters must be positive");
    if (b.weight < 0.0) throw std::invalid_argument("prior: negative component weight");
    total += b.weight;
  }
  for (const auto& m : masses_) {
    if (!(m.p > 0.0) || m.p > 1.0) throw std::invalid_argument("prior: mass point must lie in (0,1]");
    if (m.weight < 0.0) throw std::invalid_argument("prior: negative component weight");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    throw std::invalid_argument("prior: component weights sum to " + std::to_string(total) + ", expected 1");
  }
}

MixturePrior::Draw MixturePrior::sample_gap_probability(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  double acc = 0.0;
  std::size_t idx = 0;
  const std::size_t n = component_count();
  for (std::size_t b = 0; b < betas_.size(); ++b, ++idx) {
    acc += betas_[b].weight;
    if (u < acc || idx + 1 == n) {
      std::gamma_distribution<double> ga(betas_[b].alpha, 1.0);
      std::gamma_distribution<double> gb(betas_[b].beta, 1.0);
      double x = ga(rng);
      double y = gb(rng);
      double p = (x + y > 0.0) ? x / (x + y) : 0.5;
      return {std::clamp(p, kMinSampledP, 1.0), idx};
    }
  }
  for (std::size_t m = 0; m < masses_.size(); ++m, ++idx) {
    acc += masses_[m].weight;
    if (u < acc || idx + 1 == n) return {masses_[m].p, idx};
  }
  throw std::logic_error("prior: component selection fell through");
}

PosteriorState::PosteriorState(const MixturePrior& prior) {
  beta_tracks_.reserve(prior.betas().size());
  for (const auto& b : prior.betas()) {
    beta_tracks_.push_back({b.alpha, b.beta, std::log(b.weight), 0.0, 0.0});
  }
  mass_tracks_.reserve(prior.masses().size());
  for (const auto& m : prior.masses()) {
    mass_tracks_.push_back({m.p, std::log(m.weight), 0.0});
  }
  reset();
}

void PosteriorState::reset() {
  gap_ = 0;
  for (auto& t : beta_tracks_) {
    t.p_comp = t.alpha / (t.alpha + t.beta);
    t.log_q = 0.0;
  }
  for (auto& t : mass_tracks_) t.log_f = 0.0;
}

void PosteriorState::advance() {
  double e = static_cast<double>(gap_);
  for (auto& t : beta_tracks_) {
    double s = t.alpha + t.beta + e;
    t.p_comp *= s / (s + 1.0);
    t.log_q += std::log((t.beta + e) / s);
  }
  for (auto& t : mass_tracks_) t.log_f += std::log1p(-t.p);
  ++gap_;
}

double PosteriorState::posterior_p() const {
  // Ratio of survival-weighted sums, formed after a max-log shift so that
  // long gaps (geometrically decaying survivals) cannot underflow.
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& t : beta_tracks_) max_log = std::max(max_log, t.log_weight + t.log_q);
  for (const auto& t : mass_tracks_) max_log = std::max(max_log, t.log_weight + t.log_f);
  if (!std::isfinite(max_log)) {
    throw std::logic_error("posterior: all components have vanished (p=1 mass past its gap?)");
  }
  double numer = 0.0, denom = 0.0;
  for (const auto& t : beta_tracks_) {
    double w = std::exp(t.log_weight + t.log_q - max_log);
    numer += w * t.p_comp;
    denom += w;
  }
  for (const auto& t : mass_tracks_) {
    double w = std::exp(t.log_weight + t.log_f - max_log);
    numer += w * t.p;
    denom += w;
  }
  double p = numer / denom;
  if (!(p > 0.0)) throw std::logic_error("posterior: nonpositive probability");
  return std::min(p, 1.0);
}

double PosteriorState::lower_bound() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& t : beta_tracks_) lo = std::min(lo, t.p_comp);
  for (const auto& t : mass_tracks_) lo = std::min(lo, t.p);
  return lo;
}

std::vector<PosteriorState::ComponentView> PosteriorState::components() const {
  std::vector<ComponentView> out;
  out.reserve(beta_tracks_.size() + mass_tracks_.size());
  for (const auto& t : beta_tracks_) out.push_back({t.p_comp, t.log_q, t.log_weight});
  for (const auto& t : mass_tracks_) out.push_back({t.p, t.log_f, t.log_weight});
  return out;
}

ScheduledPrior::ScheduledPrior(std::vector<MixturePrior> schedule) : schedule_(std::move(schedule)) {
  if (schedule_.empty()) throw std::invalid_argument("prior schedule: at least one entry required");
}

const MixturePrior& ScheduledPrior::prior_for_segment(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("prior schedule: segments are 1-based");
  return schedule_[std::min(k - 1, schedule_.size() - 1)];
}

}  // namespace oco
