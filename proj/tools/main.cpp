// Command-line harness for the oco shared library. Talks to the library
// exclusively through the C API in oco/oco.h.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "oco/oco.h"

namespace {

struct CommonFlags {
  std::string config;
  std::string out_dir;
  std::string variants;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long trials = 0;
  long rounds = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "config file (JSON)")->required();
  cmd->add_option("--out", flags.out_dir, "output directory override");
  cmd->add_option("--variants", flags.variants,
                  "comma-separated variant subset (ignore,with_known,with_prior,uniform,gml,empirical_ep)");
  cmd->add_option("--seed", flags.seed, "master seed override")->each([&](const std::string&) {
    flags.seed_set = true;
  });
  cmd->add_option("--trials", flags.trials, "trial count override")->check(CLI::PositiveNumber);
  cmd->add_option("--rounds", flags.rounds, "round count override")->check(CLI::PositiveNumber);
}

struct ExperimentDeleter {
  void operator()(oco_experiment* e) const { oco_experiment_free(e); }
};
using ExperimentHandle = std::unique_ptr<oco_experiment, ExperimentDeleter>;

int die(const char* context) {
  std::fprintf(stderr, "error: %s: %s\n", context, oco_last_error());
  return 1;
}

int load_with_overrides(const CommonFlags& flags, ExperimentHandle& out) {
  oco_experiment* exp = nullptr;
  if (oco_experiment_load(flags.config.c_str(), &exp) != OCO_OK) return die("loading config");
  out.reset(exp);
  if (flags.seed_set && oco_experiment_set_seed(exp, flags.seed) != OCO_OK) return die("--seed");
  if (flags.trials > 0 && oco_experiment_set_trials(exp, flags.trials) != OCO_OK) return die("--trials");
  if (flags.rounds > 0 && oco_experiment_set_rounds(exp, flags.rounds) != OCO_OK) return die("--rounds");
  if (!flags.variants.empty() && oco_experiment_set_variants(exp, flags.variants.c_str()) != OCO_OK) {
    return die("--variants");
  }
  if (!flags.out_dir.empty() && oco_experiment_set_out_dir(exp, flags.out_dir.c_str()) != OCO_OK) {
    return die("--out");
  }
  if (oco_experiment_validate(exp) != OCO_OK) return die("validating config");
  return 0;
}

int run_subcommand(const CommonFlags& flags, const char* expected_kind) {
  ExperimentHandle exp;
  if (int rc = load_with_overrides(flags, exp)) return rc;
  std::string kind = oco_experiment_env_kind(exp.get());
  if (kind != expected_kind) {
    std::fprintf(stderr, "error: config environment kind is '%s', this subcommand runs '%s'\n",
                 kind.c_str(), expected_kind);
    return 1;
  }
  if (oco_experiment_run(exp.get()) != OCO_OK) return die("running experiment");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online convex optimization under stochastic observation failures"};
  app.set_version_flag("--version", oco_version());
  app.require_subcommand(1);

  CommonFlags synth_flags, regr_flags, clas_flags;
  CLI::App* synth = app.add_subcommand("run-synthetic", "linear sign-flip environment");
  add_common(synth, synth_flags);
  CLI::App* regr = app.add_subcommand("run-regression", "absolute-deviation regression on a CSV dataset");
  add_common(regr, regr_flags);
  CLI::App* clas = app.add_subcommand("run-classification", "logistic-loss classification on a CSV dataset");
  add_common(clas, clas_flags);

  std::string validate_config;
  CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config file");
  validate->add_option("--config", validate_config, "config file (JSON)")->required();

  std::string demo_config, demo_out = "-";
  long demo_max_gap = 50;
  CLI::App* demo = app.add_subcommand("estimate-prior-demo",
                                      "posterior observation probability vs gap, as CSV");
  demo->add_option("--config", demo_config, "config file supplying the prior block")->required();
  demo->add_option("--max-gap", demo_max_gap, "largest gap to tabulate (default 50)");
  demo->add_option("--out", demo_out, "output CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    oco_experiment* exp = nullptr;
    if (oco_experiment_load(validate_config.c_str(), &exp) != OCO_OK) return die("validating config");
    oco_experiment_free(exp);
    std::printf("ok\n");
    return 0;
  }

  if (demo->parsed()) {
    oco_prior* prior = nullptr;
    if (oco_prior_from_config(demo_config.c_str(), &prior) != OCO_OK) return die("loading prior");
    oco_status s = oco_prior_demo_csv(prior, demo_max_gap, demo_out.c_str());
    oco_prior_free(prior);
    if (s != OCO_OK) return die("writing demo table");
    return 0;
  }

  if (synth->parsed()) return run_subcommand(synth_flags, "synthetic");
  if (regr->parsed()) return run_subcommand(regr_flags, "regression");
  if (clas->parsed()) return run_subcommand(clas_flags, "classification");
  return 1;
}
