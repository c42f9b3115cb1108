#include "runner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "descent.hpp"
#include "rng.hpp"

namespace oco {

std::uint64_t trial_stream_seed(std::uint64_t master_seed, long trial, StreamTag tag) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(tag));
}

namespace {

struct Prepared {
  FeasibleSet set;
  // dataset rows after the full preprocessing pipeline; empty for synthetic
  std::vector<LabeledSample> rows;
  LossKind loss_kind = LossKind::absolute;
};

Prepared prepare(const ExperimentConfig& cfg) {
  if (cfg.env_kind == EnvKind::synthetic) {
    return {FeasibleSet::ball(Vec(cfg.synthetic.dim, 0.0), cfg.synthetic.radius), {}, {}};
  }

  const DatasetBlock& d = cfg.dataset;
  ColumnSchema schema{d.target_column, d.feature_columns};
  TabularDataset ds = load_csv(d.csv, schema);
  if (d.take) ds = take(ds, *d.take);
  ds = normalize(ds);
  if (d.target_shift != 0.0) ds = shift_targets(ds, d.target_shift);
  ds = append_bias(ds);

  double radius;
  if (d.radius) {
    radius = *d.radius;
  } else if (cfg.env_kind == EnvKind::regression) {
    radius = radius_for_ls(ds);
  } else {
    radius = 1.0;
  }

  LossKind kind = cfg.env_kind == EnvKind::regression ? LossKind::absolute : LossKind::logistic;
  std::size_t dim = ds.rows.front().x.size();
  return {FeasibleSet::ball(Vec(dim, 0.0), radius), std::move(ds.rows), kind};
}

std::unique_ptr<Environment> make_env(const ExperimentConfig& cfg, const Prepared& prep,
                                      std::uint64_t seed) {
  if (cfg.env_kind == EnvKind::synthetic) {
    return std::make_unique<LinearSignEnv>(cfg.synthetic.dim, cfg.synthetic.scale, seed,
                                           cfg.synthetic.sign_rule);
  }
  return std::make_unique<DatasetEnv>(prep.rows, prep.loss_kind, cfg.dataset.arrival,
                                      cfg.dataset.copies, cfg.dataset.partition_threshold, seed);
}

// Does the environment need to be told which prior component is active?
bool component_driven(const ExperimentConfig& cfg) {
  if (cfg.env_kind == EnvKind::synthetic) return cfg.synthetic.sign_rule == SignRule::component;
  return cfg.dataset.arrival == Arrival::semi_adversarial;
}

std::size_t partition_for_component(const ExperimentConfig& cfg, std::size_t component) {
  const auto& map = cfg.dataset.component_partitions;
  if (map.empty()) return component;  // identity for the default two-component prior
  return map.at(component);
}

TrialResult run_one(const ExperimentConfig& cfg, const Prepared& prep,
                    const std::shared_ptr<const PriorSource>& prior_source, Variant variant,
                    long trial, const TraceSink* sink) {
  auto env = make_env(cfg, prep, trial_stream_seed(cfg.seed, trial, StreamTag::environment));
  ObservationProcess process(prior_source, cfg.disclosure,
                             trial_stream_seed(cfg.seed, trial, StreamTag::observation));
  std::unique_ptr<NoiseModel> noise;
  if (cfg.noise) {
    noise = std::make_unique<NoiseModel>(cfg.noise->kind, cfg.noise->sigma, env->dim(),
                                         trial_stream_seed(cfg.seed, trial, StreamTag::noise));
  }

  std::size_t dim = env->dim();
  if (cfg.w1 && cfg.w1->size() != dim) {
    throw ConfigError("w1", "dimension mismatch with the environment (" + std::to_string(dim) + ")");
  }
  Optimizer opt(prep.set, cfg.w1);
  auto estimator = make_estimator(variant, dim, prior_source, cfg.empirical_exclude_current);

  const bool synthetic = cfg.env_kind == EnvKind::synthetic;
  HindsightLinearRegret hindsight(prep.set);       // true gradients, synthetic runs
  HindsightLinearRegret substitute_hs(prep.set);   // substitutes, for the bound check

  TrialResult res;
  res.variant = variant;
  res.trial = trial;

  double cum_loss = 0.0;
  double floor_sq = 0.0;  // running sum of ||g_k||^2 * gap_k^2
  const double diameter = opt.diameter();

  const bool drive_by_component = component_driven(cfg);
  for (long t = 1; t <= cfg.rounds; ++t) {
    if (drive_by_component) {
      env->set_active_partition(partition_for_component(cfg, process.current_component()));
    }
    auto sample = env->next_round(opt.decision());
    if (!sample) break;  // finite stream exhausted: the run ends here

    cum_loss += sample->loss;
    if (synthetic) hindsight.add(sample->grad, opt.decision());

    long prev_obs = estimator->last_observation_round();
    ObservationEvent ev = process.observe(t, sample->grad);
    if (ev.observed) {
      if (noise) ev.grad = noisy_passthrough(ev.grad, noise->draw());
      env->on_observation();
    }
    long gap = t - prev_obs;

    Vec g_tilde = estimator->estimate(ev);
    if (cfg.check_substitute_bound) substitute_hs.add(g_tilde, opt.decision());
    res.substitute_norm_sq += norm_sq(g_tilde);
    opt.step(g_tilde);

    if (ev.observed && synthetic) {
      double ng = norm(sample->grad) * static_cast<double>(gap);
      floor_sq += ng * ng;
    }

    res.rounds_run = t;
    if (sink && cfg.trace_every > 0 && (t % cfg.trace_every == 0 || t == cfg.rounds)) {
      TraceRow row;
      row.round = t;
      row.cum_loss = cum_loss;
      row.avg_loss = cum_loss / static_cast<double>(t);
      if (synthetic) {
        row.regret = hindsight.regret();
        row.floor_ref = diameter / (2.0 * std::sqrt(2.0)) * std::sqrt(floor_sq);
      }
      row.observed = ev.observed;
      row.gap = gap;
      row.p_used = ev.observed ? estimator->last_p_used() : 0.0;
      (*sink)(variant, trial, row);
    }
  }

  if (res.rounds_run == 0) throw std::runtime_error("run: environment produced no rounds");

  if (synthetic) {
    res.realized_regret = hindsight.regret();
    res.final_metric = res.realized_regret / static_cast<double>(res.rounds_run);
  } else {
    res.final_metric = cum_loss / static_cast<double>(res.rounds_run);
  }

  if (cfg.check_substitute_bound) {
    double bound = std::sqrt(2.0) * diameter * std::sqrt(res.substitute_norm_sq);
    double slack = 1e-9 * std::max(1.0, bound);
    res.bound_ok = substitute_hs.regret() <= bound + slack;
  }
  return res;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentResult execute(const ExperimentConfig& cfg, const TraceSink* sink) {
  validate(cfg);
  Prepared prep = prepare(cfg);
  std::shared_ptr<const PriorSource> prior_source = cfg.prior_source();

  ExperimentResult out;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    for (Variant variant : cfg.variants) {
      TrialResult r = run_one(cfg, prep, prior_source, variant, trial, sink);
      out.rounds_run = r.rounds_run;
      out.all_bounds_ok = out.all_bounds_ok && r.bound_ok;
      out.trials.push_back(r);
    }
  }

  if (cfg.trials >= 2) {
    for (Variant variant : cfg.variants) {
      std::vector<double> finals;
      finals.reserve(static_cast<std::size_t>(cfg.trials));
      for (const TrialResult& r : out.trials) {
        if (r.variant == variant) finals.push_back(r.final_metric);
      }
      out.summaries.emplace(variant, aggregate(finals));
    }
  }
  return out;
}

int run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  std::ofstream traces(fs::path(cfg.out_dir) / "traces.csv");
  if (!traces) throw std::runtime_error("run: cannot write to '" + cfg.out_dir + "'");
  traces << "round,variant,trial,cum_loss,avg_loss,regret,lemma4_ref,observed,gap,p_used\n";

  TraceSink sink = [&traces](Variant v, long trial, const TraceRow& row) {
    traces << row.round << ',' << to_string(v) << ',' << trial << ',' << fmt_double(row.cum_loss)
           << ',' << fmt_double(row.avg_loss) << ',';
    if (row.regret) traces << fmt_double(*row.regret);
    traces << ',';
    if (row.floor_ref) traces << fmt_double(*row.floor_ref);
    traces << ',' << (row.observed ? 1 : 0) << ',' << row.gap << ',' << fmt_double(row.p_used)
           << '\n';
  };

  ExperimentResult result = execute(cfg, &sink);
  traces.close();

  nlohmann::json summary = nlohmann::json::object();
  for (Variant variant : cfg.variants) {
    nlohmann::json entry;
    if (auto it = result.summaries.find(variant); it != result.summaries.end()) {
      entry["mean"] = it->second.mean;
      entry["sd"] = it->second.sd;
      entry["trials"] = it->second.trials;
    } else {
      double only = 0.0;
      for (const TrialResult& r : result.trials) {
        if (r.variant == variant) only = r.final_metric;
      }
      entry["mean"] = only;
      entry["sd"] = nullptr;
      entry["trials"] = cfg.trials;
    }
    entry["rounds"] = result.rounds_run;
    summary[to_string(variant)] = entry;
  }
  std::ofstream summary_out(fs::path(cfg.out_dir) / "summary.json");
  summary_out << summary.dump(2) << '\n';

  return result.all_bounds_ok ? 0 : 1;
}

void write_prior_demo_csv(const MixturePrior& prior, long max_gap, std::ostream& os) {
  if (max_gap < 1) throw std::invalid_argument("prior demo: max gap must be >= 1");
  PosteriorState state(prior);
  os << "gap,p,lower_bound\n";
  for (long d = 1; d <= max_gap; ++d) {
    os << d << ',' << fmt_double(state.posterior_p()) << ',' << fmt_double(state.lower_bound())
       << '\n';
    state.advance();
  }
}

}  // namespace oco
