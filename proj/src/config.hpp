#ifndef OCO_CONFIG_HPP
#define OCO_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "datasets.hpp"
#include "environments.hpp"
#include "estimators.hpp"
#include "priors.hpp"

namespace oco {

// Config problem, reported with the path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class EnvKind { synthetic, regression, classification };

const char* to_string(EnvKind k);

struct SyntheticBlock {
  std::size_t dim = 16;
  double scale = 0.25;
  double radius = 1.0;  // origin-centered ball
  SignRule sign_rule = SignRule::iid;
};

struct DatasetBlock {
  std::string csv;
  std::size_t target_column = 0;
  std::vector<std::size_t> feature_columns;  // empty: all but target
  std::optional<std::size_t> take;           // truncate input rows
  long copies = 1;
  Arrival arrival = Arrival::randomized;
  double partition_threshold = 0.0;
  // partition served by each prior component (betas first, then masses)
  std::vector<std::size_t> component_partitions;
  double target_shift = 0.0;
  std::optional<double> radius;  // regression default: fitted power-of-two radius
};

struct NoiseBlock {
  NoiseKind kind = NoiseKind::gaussian;
  double sigma = 0.0;
};

struct PriorComponents {
  std::vector<BetaComponent> betas;
  std::vector<MassComponent> masses;
  std::size_t count() const { return betas.size() + masses.size(); }
};

struct ExperimentConfig {
  EnvKind env_kind = EnvKind::synthetic;
  SyntheticBlock synthetic;
  DatasetBlock dataset;

  // entry k-1 generates segment k's observation probability; the last entry
  // persists. One entry = the usual stationary prior.
  std::vector<PriorComponents> prior_schedule;

  Disclosure disclosure = Disclosure::known;
  std::vector<Variant> variants;
  long rounds = 1;
  long trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  long trace_every = 1;  // 0 disables per-round trace rows
  bool empirical_exclude_current = false;
  std::optional<NoiseBlock> noise;
  bool check_substitute_bound = true;
  std::optional<Vec> w1;

  // first schedule entry, the stationary view used by diagnostics
  MixturePrior prior() const;
  std::shared_ptr<const PriorSource> prior_source() const;
};

// Parse + validate a JSON config file / text. Throws ConfigError.
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig load_config_text(const std::string& text);

// Semantic validation beyond parsing (weight sums, variant/disclosure
// compatibility, dataset block presence, ...). Called by the loaders;
// exposed for overridden configs.
void validate(const ExperimentConfig& cfg);

}  // namespace oco

#endif
