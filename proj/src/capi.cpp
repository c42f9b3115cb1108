#include "oco/oco.h"

#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "config.hpp"
#include "descent.hpp"
#include "empirical.hpp"
#include "priors.hpp"
#include "runner.hpp"

namespace {

thread_local std::string g_last_error;

oco_status fail(oco_status code, const char* message) {
  g_last_error = message;
  return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
oco_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const oco::ConfigError& e) {
    return fail(OCO_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(OCO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(OCO_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(OCO_ERR_INTERNAL, e.what());
  }
}

oco_status require(bool ok, const char* message) {
  return ok ? OCO_OK : fail(OCO_ERR_INVALID_ARGUMENT, message);
}

// Prior handle accumulates components until finalize() builds the validated
// mixture.
struct PriorBuilder {
  std::vector<oco::BetaComponent> betas;
  std::vector<oco::MassComponent> masses;
  std::unique_ptr<oco::MixturePrior> built;
};

oco_status write_csv(const char* out_path, const std::function<void(std::ostream&)>& emit) {
  if (!out_path) return fail(OCO_ERR_INVALID_ARGUMENT, "null output path");
  if (std::strcmp(out_path, "-") == 0) {
    emit(std::cout);
    return OCO_OK;
  }
  std::ofstream out(out_path);
  if (!out) return fail(OCO_ERR_IO, "cannot open output file");
  emit(out);
  return OCO_OK;
}

}  // namespace

struct oco_prior : PriorBuilder {};
struct oco_posterior {
  oco::PosteriorState state;
};
struct oco_gap_hist {
  oco::GapHistogram hist;
};
struct oco_optimizer {
  oco::Optimizer opt;
};
struct oco_experiment {
  oco::ExperimentConfig cfg;
};

extern "C" {

const char* oco_version(void) { return "0.1.0"; }

const char* oco_last_error(void) { return g_last_error.c_str(); }

oco_prior* oco_prior_new(void) { return new oco_prior(); }

void oco_prior_free(oco_prior* prior) { delete prior; }

oco_status oco_prior_add_beta(oco_prior* prior, double alpha, double beta, double weight) {
  if (oco_status s = require(prior != nullptr, "null prior"); s != OCO_OK) return s;
  if (prior->built) return fail(OCO_ERR_INVALID_ARGUMENT, "prior already finalized");
  prior->betas.push_back({alpha, beta, weight});
  return OCO_OK;
}

oco_status oco_prior_add_mass(oco_prior* prior, double p, double weight) {
  if (oco_status s = require(prior != nullptr, "null prior"); s != OCO_OK) return s;
  if (prior->built) return fail(OCO_ERR_INVALID_ARGUMENT, "prior already finalized");
  prior->masses.push_back({p, weight});
  return OCO_OK;
}

oco_status oco_prior_finalize(oco_prior* prior) {
  if (oco_status s = require(prior != nullptr, "null prior"); s != OCO_OK) return s;
  return guarded([&] {
    prior->built = std::make_unique<oco::MixturePrior>(prior->betas, prior->masses);
    return OCO_OK;
  });
}

oco_status oco_prior_from_config(const char* config_path, oco_prior** out) {
  if (oco_status s = require(config_path && out, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    oco::ExperimentConfig cfg = oco::load_config_file(config_path);
    auto handle = std::make_unique<oco_prior>();
    handle->betas = cfg.prior_schedule.front().betas;
    handle->masses = cfg.prior_schedule.front().masses;
    handle->built = std::make_unique<oco::MixturePrior>(handle->betas, handle->masses);
    *out = handle.release();
    return OCO_OK;
  });
}

oco_status oco_prior_demo_csv(const oco_prior* prior, long max_gap, const char* out_path) {
  if (oco_status s = require(prior && prior->built, "prior not finalized"); s != OCO_OK) return s;
  return guarded([&] {
    return write_csv(out_path,
                     [&](std::ostream& os) { oco::write_prior_demo_csv(*prior->built, max_gap, os); });
  });
}

oco_status oco_posterior_new(const oco_prior* prior, oco_posterior** out) {
  if (oco_status s = require(prior && prior->built && out, "prior not finalized"); s != OCO_OK) return s;
  return guarded([&] {
    *out = new oco_posterior{oco::PosteriorState(*prior->built)};
    return OCO_OK;
  });
}

void oco_posterior_free(oco_posterior* post) { delete post; }

oco_status oco_posterior_reset(oco_posterior* post) {
  if (oco_status s = require(post != nullptr, "null posterior"); s != OCO_OK) return s;
  post->state.reset();
  return OCO_OK;
}

oco_status oco_posterior_advance(oco_posterior* post) {
  if (oco_status s = require(post != nullptr, "null posterior"); s != OCO_OK) return s;
  post->state.advance();
  return OCO_OK;
}

oco_status oco_posterior_p(const oco_posterior* post, double* out) {
  if (oco_status s = require(post && out, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    *out = post->state.posterior_p();
    return OCO_OK;
  });
}

oco_status oco_posterior_lower_bound(const oco_posterior* post, double* out) {
  if (oco_status s = require(post && out, "null argument"); s != OCO_OK) return s;
  *out = post->state.lower_bound();
  return OCO_OK;
}

oco_gap_hist* oco_gap_hist_new(int exclude_current) {
  return new oco_gap_hist{oco::GapHistogram(exclude_current != 0)};
}

void oco_gap_hist_free(oco_gap_hist* hist) { delete hist; }

oco_status oco_gap_hist_advance_round(oco_gap_hist* hist) {
  if (oco_status s = require(hist != nullptr, "null histogram"); s != OCO_OK) return s;
  hist->hist.advance_round();
  return OCO_OK;
}

oco_status oco_gap_hist_record(oco_gap_hist* hist, long gap, double* p_hat_out) {
  if (oco_status s = require(hist && p_hat_out, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    *p_hat_out = hist->hist.record_observation_and_estimate(gap);
    return OCO_OK;
  });
}

oco_status oco_gap_hist_cdf(const oco_gap_hist* hist, long d, double* out) {
  if (oco_status s = require(hist && out, "null argument"); s != OCO_OK) return s;
  *out = hist->hist.empirical_cdf(d);
  return OCO_OK;
}

oco_status oco_gap_hist_dump_csv(const oco_gap_hist* hist, const char* out_path) {
  if (oco_status s = require(hist != nullptr, "null histogram"); s != OCO_OK) return s;
  return guarded([&] {
    return write_csv(out_path, [&](std::ostream& os) { hist->hist.dump_csv(os); });
  });
}

oco_status oco_optimizer_new_ball(const double* center, size_t dim, double radius,
                                  oco_optimizer** out) {
  if (oco_status s = require(center && out && dim > 0, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    oco::Vec c(center, center + dim);
    *out = new oco_optimizer{oco::Optimizer(oco::FeasibleSet::ball(std::move(c), radius))};
    return OCO_OK;
  });
}

oco_status oco_optimizer_new_box(const double* lower, const double* upper, size_t dim,
                                 oco_optimizer** out) {
  if (oco_status s = require(lower && upper && out && dim > 0, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    oco::Vec lo(lower, lower + dim), hi(upper, upper + dim);
    *out = new oco_optimizer{oco::Optimizer(oco::FeasibleSet::box(std::move(lo), std::move(hi)))};
    return OCO_OK;
  });
}

void oco_optimizer_free(oco_optimizer* opt) { delete opt; }

oco_status oco_optimizer_step(oco_optimizer* opt, const double* g_tilde, size_t dim) {
  if (oco_status s = require(opt && g_tilde, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    opt->opt.step(oco::Vec(g_tilde, g_tilde + dim));
    return OCO_OK;
  });
}

oco_status oco_optimizer_step_fixed(oco_optimizer* opt, const double* g_tilde, size_t dim,
                                    double eta) {
  if (oco_status s = require(opt && g_tilde, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    opt->opt.step_with_fixed_eta(oco::Vec(g_tilde, g_tilde + dim), eta);
    return OCO_OK;
  });
}

oco_status oco_optimizer_decision(const oco_optimizer* opt, double* out, size_t dim) {
  if (oco_status s = require(opt && out, "null argument"); s != OCO_OK) return s;
  const oco::Vec& w = opt->opt.decision();
  if (dim != w.size()) return fail(OCO_ERR_INVALID_ARGUMENT, "decision buffer dimension mismatch");
  std::memcpy(out, w.data(), dim * sizeof(double));
  return OCO_OK;
}

oco_status oco_optimizer_normalizer_sq(const oco_optimizer* opt, double* out) {
  if (oco_status s = require(opt && out, "null argument"); s != OCO_OK) return s;
  *out = opt->opt.normalizer_sq();
  return OCO_OK;
}

oco_status oco_optimizer_diameter(const oco_optimizer* opt, double* out) {
  if (oco_status s = require(opt && out, "null argument"); s != OCO_OK) return s;
  *out = opt->opt.diameter();
  return OCO_OK;
}

oco_status oco_experiment_load(const char* config_path, oco_experiment** out) {
  if (oco_status s = require(config_path && out, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    *out = new oco_experiment{oco::load_config_file(config_path)};
    return OCO_OK;
  });
}

oco_status oco_experiment_load_string(const char* config_json, oco_experiment** out) {
  if (oco_status s = require(config_json && out, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    *out = new oco_experiment{oco::load_config_text(config_json)};
    return OCO_OK;
  });
}

void oco_experiment_free(oco_experiment* exp) { delete exp; }

oco_status oco_experiment_set_seed(oco_experiment* exp, uint64_t seed) {
  if (oco_status s = require(exp != nullptr, "null experiment"); s != OCO_OK) return s;
  exp->cfg.seed = seed;
  return OCO_OK;
}

oco_status oco_experiment_set_trials(oco_experiment* exp, long trials) {
  if (oco_status s = require(exp != nullptr, "null experiment"); s != OCO_OK) return s;
  exp->cfg.trials = trials;
  return OCO_OK;
}

oco_status oco_experiment_set_rounds(oco_experiment* exp, long rounds) {
  if (oco_status s = require(exp != nullptr, "null experiment"); s != OCO_OK) return s;
  exp->cfg.rounds = rounds;
  return OCO_OK;
}

oco_status oco_experiment_set_variants(oco_experiment* exp, const char* csv_list) {
  if (oco_status s = require(exp && csv_list, "null argument"); s != OCO_OK) return s;
  return guarded([&] {
    std::vector<oco::Variant> variants;
    std::stringstream ss(csv_list);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto v = oco::variant_from_string(name);
      if (!v) throw oco::ConfigError("variants", "unknown variant '" + name + "'");
      variants.push_back(*v);
    }
    if (variants.empty()) throw oco::ConfigError("variants", "empty variant list");
    exp->cfg.variants = std::move(variants);
    return OCO_OK;
  });
}

oco_status oco_experiment_set_out_dir(oco_experiment* exp, const char* dir) {
  if (oco_status s = require(exp && dir, "null argument"); s != OCO_OK) return s;
  exp->cfg.out_dir = dir;
  return OCO_OK;
}

oco_status oco_experiment_validate(const oco_experiment* exp) {
  if (oco_status s = require(exp != nullptr, "null experiment"); s != OCO_OK) return s;
  return guarded([&] {
    oco::validate(exp->cfg);
    return OCO_OK;
  });
}

const char* oco_experiment_env_kind(const oco_experiment* exp) {
  return exp ? oco::to_string(exp->cfg.env_kind) : nullptr;
}

oco_status oco_experiment_run(const oco_experiment* exp) {
  if (oco_status s = require(exp != nullptr, "null experiment"); s != OCO_OK) return s;
  return guarded([&] {
    int status = oco::run_experiment(exp->cfg);
    if (status != 0) return fail(OCO_ERR_BOUND_VIOLATION, "an enabled bound check was violated");
    return OCO_OK;
  });
}

} /* extern "C" */
