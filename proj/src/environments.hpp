#ifndef OCO_ENVIRONMENTS_HPP
#define OCO_ENVIRONMENTS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "estimators.hpp"
#include "geometry.hpp"
#include "priors.hpp"

namespace oco {

enum class Disclosure { known, prior_only, none };

const char* to_string(Disclosure d);
std::optional<Disclosure> disclosure_from_string(const std::string& name);

// Stochastic observation channel: a hidden constant probability, redrawn
// from the segment's prior after every successful observation, gates
// per-round Bernoulli observation of the sub-gradient.
class ObservationProcess {
 public:
  ObservationProcess(MixturePrior prior, Disclosure mode, std::uint64_t seed);
  ObservationProcess(std::shared_ptr<const PriorSource> source, Disclosure mode, std::uint64_t seed);

  // Bernoulli(current p) draw. On success the event carries the gradient
  // (and the probability when disclosure allows) and a fresh p is drawn.
  ObservationEvent observe(long round, Vec g);

  double current_p() const { return draw_.p; }
  std::size_t current_component() const { return draw_.component; }
  std::size_t current_segment() const { return segment_; }

 private:
  std::shared_ptr<const PriorSource> source_;
  Disclosure mode_;
  std::mt19937_64 rng_;
  std::size_t segment_ = 1;
  MixturePrior::Draw draw_;
};

// Per-round loss sample: the realized loss at the queried decision plus a
// valid sub-gradient there.
struct LossSample {
  double loss;
  Vec grad;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::size_t dim() const = 0;
  // nullopt once a finite data stream is exhausted.
  virtual std::optional<LossSample> next_round(const Vec& w) = 0;
  // Called by the harness right after a successful observation.
  virtual void on_observation() {}
  // Semi-adversarial arrival: which partition to serve from. Ignored by
  // environments without partitions.
  virtual void set_active_partition(std::size_t) {}
};

// How the linear environment picks the sign that holds between
// observations: an independent fair coin per segment, or the prior
// component behind the segment's observation probability (component 0
// pushes +, any other pushes -). The component tie makes rarely-observed
// stretches lean one way, which is what defeats estimators that ignore the
// elapsed time.
enum class SignRule { iid, component };

const char* to_string(SignRule r);
std::optional<SignRule> sign_rule_from_string(const std::string& name);

// Linear losses along a fixed all-ones direction with a sign that stays
// constant between observations.
class LinearSignEnv final : public Environment {
 public:
  LinearSignEnv(std::size_t dim, double scale, std::uint64_t seed, SignRule rule = SignRule::iid);

  std::size_t dim() const override { return dim_; }
  std::optional<LossSample> next_round(const Vec& w) override;
  void on_observation() override;  // resample the sign (iid rule)
  void set_active_partition(std::size_t part) override;  // sign source (component rule)

  double current_sign() const { return sign_; }

 private:
  std::size_t dim_;
  double scale_;
  double sign_;
  SignRule rule_;
  std::mt19937_64 rng_;
};

// Loss functions used by the dataset experiments. Exposed as free functions
// so their sub-gradient inequality can be checked directly.
struct LabeledSample {
  Vec x;  // features, bias already appended
  double y;
};

enum class LossKind { absolute, logistic };

double eval_loss(LossKind kind, const LabeledSample& s, const Vec& w);
Vec loss_subgradient(LossKind kind, const LabeledSample& s, const Vec& w);

enum class Arrival { randomized, semi_adversarial };

// Serves dataset rows either in one shuffled pass over `copies`
// concatenated copies (randomized) or from two label partitions whose
// active side is tied to the prior component behind the current observation
// probability (semi-adversarial). Partition queues recycle with a reshuffle
// when exhausted.
class DatasetEnv final : public Environment {
 public:
  DatasetEnv(std::vector<LabeledSample> rows, LossKind kind, Arrival arrival, long copies,
             double partition_threshold, std::uint64_t seed);

  std::size_t dim() const override;
  std::optional<LossSample> next_round(const Vec& w) override;
  void set_active_partition(std::size_t part) override;

  // Index (into the row vector) of the sample served last round, and the
  // partition it came from; used by the bookkeeping checks.
  std::size_t last_served_row() const { return last_row_; }
  std::size_t partition_of(std::size_t row) const;
  std::size_t stream_length() const;

 private:
  const LabeledSample& serve(std::size_t row) { last_row_ = row; return rows_[row]; }

  std::vector<LabeledSample> rows_;
  LossKind kind_;
  Arrival arrival_;
  double threshold_;
  std::mt19937_64 rng_;

  // randomized arrival
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;

  // semi-adversarial arrival
  std::vector<std::size_t> parts_[2];
  std::size_t part_pos_[2] = {0, 0};
  std::size_t active_part_ = 0;
  std::size_t last_row_ = 0;
};

enum class NoiseKind { gaussian, rademacher };

const char* to_string(NoiseKind k);
std::optional<NoiseKind> noise_kind_from_string(const std::string& name);

// Zero-mean perturbations with aggregate variance sigma^2 per draw
// (E ||gamma||^2 = sigma^2, split evenly across coordinates).
class NoiseModel {
 public:
  NoiseModel(NoiseKind kind, double sigma, std::size_t dim, std::uint64_t seed);
  Vec draw();

 private:
  NoiseKind kind_;
  double per_coord_;  // sigma / sqrt(dim)
  std::size_t dim_;
  std::mt19937_64 rng_;
};

// Reference floor on the regret any causal algorithm pays against the
// sign-flip construction: (D / (2*sqrt(2))) * sqrt(sum L_k^2 * gap_k^2).
// Emitted alongside realized regret in synthetic traces.
double adversarial_regret_floor(const std::vector<double>& observed_norms,
                                const std::vector<long>& gaps, double diameter);

}  // namespace oco

#endif
