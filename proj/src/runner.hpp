#ifndef OCO_RUNNER_HPP
#define OCO_RUNNER_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "metrics.hpp"

namespace oco {

// One trace row; optional fields print as empty CSV cells.
struct TraceRow {
  long round = 0;
  double cum_loss = 0.0;
  double avg_loss = 0.0;
  std::optional<double> regret;      // synthetic runs only
  std::optional<double> floor_ref;   // synthetic runs only
  bool observed = false;
  long gap = 0;        // rounds since the last observation (>= 1)
  double p_used = 0.0; // estimator's probability on observed rounds, 0 otherwise
};

using TraceSink = std::function<void(Variant, long trial, const TraceRow&)>;

// Randomness streams are keyed by (master seed, trial, consumer); variants
// within a trial share them, which is what makes their comparison a
// common-random-numbers one.
enum class StreamTag : std::uint64_t { environment = 1, observation = 2, noise = 3 };
std::uint64_t trial_stream_seed(std::uint64_t master_seed, long trial, StreamTag tag);

struct TrialResult {
  Variant variant = Variant::ignore;
  long trial = 0;
  long rounds_run = 0;
  double final_metric = 0.0;      // time-averaged regret (synthetic) or loss (datasets)
  double substitute_norm_sq = 0.0;  // sum ||g_tilde||^2
  double realized_regret = 0.0;     // synthetic only; 0 otherwise
  bool bound_ok = true;  // substitute-regret bound check, when enabled
};

struct ExperimentResult {
  std::vector<TrialResult> trials;  // trial-major, then variant in config order
  std::map<Variant, TrialSummary> summaries;  // filled when trials >= 2
  long rounds_run = 0;
  bool all_bounds_ok = true;
};

// Pure computation: runs every (trial, variant) pair over a shared
// per-trial realization. `sink` may be null.
ExperimentResult execute(const ExperimentConfig& cfg, const TraceSink* sink = nullptr);

// Runs the experiment and writes <out_dir>/traces.csv and
// <out_dir>/summary.json. Returns a process exit status: nonzero when a run
// failed or an enabled bound check was violated.
int run_experiment(const ExperimentConfig& cfg);

// (gap, posterior probability, component lower bound) table for gaps
// 1..max_gap, as CSV. Backs the prior-demo CLI subcommand.
void write_prior_demo_csv(const MixturePrior& prior, long max_gap, std::ostream& os);

}  // namespace oco

#endif
