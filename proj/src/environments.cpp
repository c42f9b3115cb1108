#include "environments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oco {

const char* to_string(Disclosure d) {
  switch (d) {
    case Disclosure::known: return "known";
    case Disclosure::prior_only: return "prior_only";
    case Disclosure::none: return "none";
  }
  return "?";
}

std::optional<Disclosure> disclosure_from_string(const std::string& name) {
  for (Disclosure d : {Disclosure::known, Disclosure::prior_only, Disclosure::none}) {
    if (name == to_string(d)) return d;
  }
  return std::nullopt;
}

ObservationProcess::ObservationProcess(MixturePrior prior, Disclosure mode, std::uint64_t seed)
    : ObservationProcess(std::make_shared<StationaryPrior>(std::move(prior)), mode, seed) {}

ObservationProcess::ObservationProcess(std::shared_ptr<const PriorSource> source, Disclosure mode,
                                       std::uint64_t seed)
    : source_(std::move(source)),
      mode_(mode),
      rng_(seed),
      draw_(source_->prior_for_segment(1).sample_gap_probability(rng_)) {}

ObservationEvent ObservationProcess::observe(long round, Vec g) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng_) >= draw_.p) return ObservationEvent::missed(round);
  std::optional<double> disclosed;
  if (mode_ == Disclosure::known) disclosed = draw_.p;
  ObservationEvent ev = ObservationEvent::seen(round, std::move(g), disclosed);
  ++segment_;  // a new hidden p for the next segment
  draw_ = source_->prior_for_segment(segment_).sample_gap_probability(rng_);
  return ev;
}

const char* to_string(SignRule r) { return r == SignRule::iid ? "iid" : "component"; }

std::optional<SignRule> sign_rule_from_string(const std::string& name) {
  if (name == "iid") return SignRule::iid;
  if (name == "component") return SignRule::component;
  return std::nullopt;
}

LinearSignEnv::LinearSignEnv(std::size_t dim, double scale, std::uint64_t seed, SignRule rule)
    : dim_(dim), scale_(scale), sign_(1.0), rule_(rule), rng_(seed) {
  if (dim_ == 0) throw std::invalid_argument("linear env: dim must be positive");
  if (!(scale_ > 0.0)) throw std::invalid_argument("linear env: scale must be positive");
  if (rule_ == SignRule::iid) on_observation();
}

std::optional<LossSample> LinearSignEnv::next_round(const Vec& w) {
  if (w.size() != dim_) throw std::invalid_argument("linear env: decision dimension mismatch");
  double c = sign_ * scale_;
  double loss = c * std::accumulate(w.begin(), w.end(), 0.0);
  return LossSample{loss, Vec(dim_, c)};
}

void LinearSignEnv::on_observation() {
  if (rule_ == SignRule::iid) sign_ = (rng_() & 1u) ? 1.0 : -1.0;
}

void LinearSignEnv::set_active_partition(std::size_t part) {
  if (rule_ == SignRule::component) sign_ = part == 0 ? 1.0 : -1.0;
}

double eval_loss(LossKind kind, const LabeledSample& s, const Vec& w) {
  double z = inner(w, s.x);
  if (kind == LossKind::absolute) return std::abs(z - s.y);
  // logistic with natural log, written to stay finite for large |z|
  double softplus_neg = std::max(-z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  double softplus_pos = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  return s.y * softplus_neg + (1.0 - s.y) * softplus_pos;
}

Vec loss_subgradient(LossKind kind, const LabeledSample& s, const Vec& w) {
  double z = inner(w, s.x);
  if (kind == LossKind::absolute) {
    double sgn = (z > s.y) ? 1.0 : (z < s.y ? -1.0 : 0.0);
    return scaled(s.x, sgn);
  }
  double h = 1.0 / (1.0 + std::exp(-z));
  return scaled(s.x, h - s.y);
}

DatasetEnv::DatasetEnv(std::vector<LabeledSample> rows, LossKind kind, Arrival arrival, long copies,
                       double partition_threshold, std::uint64_t seed)
    : rows_(std::move(rows)), kind_(kind), arrival_(arrival), threshold_(partition_threshold), rng_(seed) {
  if (rows_.empty()) throw std::invalid_argument("dataset env: empty stream");
  if (copies < 1) throw std::invalid_argument("dataset env: copies must be >= 1");
  if (arrival_ == Arrival::randomized) {
    order_.reserve(rows_.size() * static_cast<std::size_t>(copies));
    for (long c = 0; c < copies; ++c) {
      for (std::size_t i = 0; i < rows_.size(); ++i) order_.push_back(i);
    }
    std::shuffle(order_.begin(), order_.end(), rng_);
  } else {
    for (std::size_t i = 0; i < rows_.size(); ++i) parts_[partition_of(i)].push_back(i);
    if (parts_[0].empty() || parts_[1].empty()) {
      throw std::invalid_argument("dataset env: a partition is empty, semi-adversarial arrival impossible");
    }
    std::shuffle(parts_[0].begin(), parts_[0].end(), rng_);
    std::shuffle(parts_[1].begin(), parts_[1].end(), rng_);
  }
}

std::size_t DatasetEnv::dim() const { return rows_.front().x.size(); }

std::size_t DatasetEnv::partition_of(std::size_t row) const {
  return rows_[row].y < threshold_ ? 0 : 1;
}

std::size_t DatasetEnv::stream_length() const {
  return arrival_ == Arrival::randomized ? order_.size() : 0;  // partitions recycle forever
}

void DatasetEnv::set_active_partition(std::size_t part) {
  if (part > 1) throw std::invalid_argument("dataset env: partition index out of range");
  active_part_ = part;
}

std::optional<LossSample> DatasetEnv::next_round(const Vec& w) {
  std::size_t row;
  if (arrival_ == Arrival::randomized) {
    if (pos_ >= order_.size()) return std::nullopt;  // stream exhausted: run ends
    row = order_[pos_++];
  } else {
    auto& queue = parts_[active_part_];
    auto& qpos = part_pos_[active_part_];
    if (qpos >= queue.size()) {
      std::shuffle(queue.begin(), queue.end(), rng_);  // recycle
      qpos = 0;
    }
    row = queue[qpos++];
  }
  const LabeledSample& s = serve(row);
  return LossSample{eval_loss(kind_, s, w), loss_subgradient(kind_, s, w)};
}

const char* to_string(NoiseKind k) {
  return k == NoiseKind::gaussian ? "gaussian" : "rademacher";
}

std::optional<NoiseKind> noise_kind_from_string(const std::string& name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "rademacher") return NoiseKind::rademacher;
  return std::nullopt;
}

NoiseModel::NoiseModel(NoiseKind kind, double sigma, std::size_t dim, std::uint64_t seed)
    : kind_(kind), per_coord_(sigma / std::sqrt(static_cast<double>(dim))), dim_(dim), rng_(seed) {
  if (sigma < 0.0) throw std::invalid_argument("noise: sigma must be nonnegative");
  if (dim == 0) throw std::invalid_argument("noise: dim must be positive");
}

Vec NoiseModel::draw() {
  Vec out(dim_);
  if (kind_ == NoiseKind::gaussian) {
    std::normal_distribution<double> n(0.0, per_coord_);
    for (double& x : out) x = n(rng_);
  } else {
    for (double& x : out) x = (rng_() & 1u) ? per_coord_ : -per_coord_;
  }
  return out;
}

double adversarial_regret_floor(const std::vector<double>& observed_norms,
                                const std::vector<long>& gaps, double diameter) {
  if (observed_norms.size() != gaps.size()) {
    throw std::invalid_argument("regret floor: norm/gap length mismatch");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    double term = observed_norms[k] * static_cast<double>(gaps[k]);
    s += term * term;
  }
  return diameter / (2.0 * std::sqrt(2.0)) * std::sqrt(s);
}

}  // namespace oco
