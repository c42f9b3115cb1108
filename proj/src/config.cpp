#include "config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace oco {

using nlohmann::json;

const char* to_string(EnvKind k) {
  switch (k) {
    case EnvKind::synthetic: return "synthetic";
    case EnvKind::regression: return "regression";
    case EnvKind::classification: return "classification";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field, message);
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

long as_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

PriorComponents parse_prior_components(const json& comps, const std::string& where) {
  if (!comps.is_array() || comps.empty()) fail(where, "expected a non-empty array");
  PriorComponents out;
  std::size_t i = 0;
  for (const json& c : comps) {
    std::string field = where + "[" + std::to_string(i) + "]";
    if (!c.is_object()) fail(field, "expected an object");
    std::string kind = as_string(c.value("kind", json("")), field + ".kind");
    double weight = as_number(c.value("weight", json()), field + ".weight");
    if (kind == "beta") {
      double alpha = as_number(c.value("alpha", json()), field + ".alpha");
      double beta = as_number(c.value("beta", json()), field + ".beta");
      if (!(alpha > 0.0) || !(beta > 0.0)) fail(field, "alpha and beta must be positive");
      out.betas.push_back({alpha, beta, weight});
    } else if (kind == "mass") {
      double p = as_number(c.value("p", json()), field + ".p");
      if (!(p > 0.0) || p > 1.0) fail(field + ".p", "mass point must lie in (0,1]");
      out.masses.push_back({p, weight});
    } else {
      fail(field + ".kind", "expected 'beta' or 'mass'");
    }
    ++i;
  }
  return out;
}

void parse_prior(const json& block, ExperimentConfig& cfg) {
  const json* comps = find(block, "components");
  const json* schedule = find(block, "schedule");
  if (comps && schedule) fail("prior", "give either 'components' or 'schedule', not both");
  if (comps) {
    cfg.prior_schedule.push_back(parse_prior_components(*comps, "prior.components"));
    return;
  }
  if (!schedule || !schedule->is_array() || schedule->empty()) {
    fail("prior.components", "expected a non-empty array");
  }
  std::size_t k = 0;
  for (const json& entry : *schedule) {
    std::string where = "prior.schedule[" + std::to_string(k) + "]";
    if (!entry.is_object()) fail(where, "expected an object");
    const json* entry_comps = find(entry, "components");
    if (!entry_comps) fail(where + ".components", "missing");
    cfg.prior_schedule.push_back(parse_prior_components(*entry_comps, where + ".components"));
    ++k;
  }
}

void parse_environment(const json& block, ExperimentConfig& cfg) {
  std::string kind = as_string(block.value("kind", json("")), "environment.kind");
  if (kind == "synthetic") {
    cfg.env_kind = EnvKind::synthetic;
    if (const json* v = find(block, "dim")) cfg.synthetic.dim = static_cast<std::size_t>(as_integer(*v, "environment.dim"));
    if (const json* v = find(block, "scale")) cfg.synthetic.scale = as_number(*v, "environment.scale");
    if (const json* v = find(block, "radius")) cfg.synthetic.radius = as_number(*v, "environment.radius");
    if (const json* v = find(block, "sign_rule")) {
      auto r = sign_rule_from_string(as_string(*v, "environment.sign_rule"));
      if (!r) fail("environment.sign_rule", "expected 'iid' or 'component'");
      cfg.synthetic.sign_rule = *r;
    }
    return;
  }
  if (kind == "regression") {
    cfg.env_kind = EnvKind::regression;
  } else if (kind == "classification") {
    cfg.env_kind = EnvKind::classification;
  } else {
    fail("environment.kind", "expected 'synthetic', 'regression' or 'classification'");
  }

  DatasetBlock& d = cfg.dataset;
  if (const json* v = find(block, "csv")) d.csv = as_string(*v, "environment.csv");
  if (const json* v = find(block, "target_column")) {
    d.target_column = static_cast<std::size_t>(as_integer(*v, "environment.target_column"));
  }
  if (const json* v = find(block, "feature_columns")) {
    if (!v->is_array()) fail("environment.feature_columns", "expected an array");
    for (const json& f : *v) {
      d.feature_columns.push_back(static_cast<std::size_t>(as_integer(f, "environment.feature_columns")));
    }
  }
  if (const json* v = find(block, "take")) {
    long n = as_integer(*v, "environment.take");
    if (n <= 0) fail("environment.take", "empty stream (take must be positive)");
    d.take = static_cast<std::size_t>(n);
  }
  if (const json* v = find(block, "copies")) d.copies = as_integer(*v, "environment.copies");
  if (const json* v = find(block, "arrival")) {
    std::string a = as_string(*v, "environment.arrival");
    if (a == "randomized") {
      d.arrival = Arrival::randomized;
    } else if (a == "semi_adversarial") {
      d.arrival = Arrival::semi_adversarial;
    } else {
      fail("environment.arrival", "expected 'randomized' or 'semi_adversarial'");
    }
  }
  if (const json* v = find(block, "partition_threshold")) {
    d.partition_threshold = as_number(*v, "environment.partition_threshold");
  }
  if (const json* v = find(block, "component_partitions")) {
    if (!v->is_array()) fail("environment.component_partitions", "expected an array");
    for (const json& f : *v) {
      long idx = as_integer(f, "environment.component_partitions");
      if (idx < 0 || idx > 1) fail("environment.component_partitions", "entries must be 0 or 1");
      d.component_partitions.push_back(static_cast<std::size_t>(idx));
    }
  }
  if (const json* v = find(block, "target_shift")) d.target_shift = as_number(*v, "environment.target_shift");
  if (const json* v = find(block, "radius")) {
    if (!v->is_null()) d.radius = as_number(*v, "environment.radius");
  }
}

ExperimentConfig parse(const json& root) {
  if (!root.is_object()) throw ConfigError("config", "top level must be an object");
  ExperimentConfig cfg;

  const json* env = find(root, "environment");
  if (!env || !env->is_object()) fail("environment", "missing block");
  parse_environment(*env, cfg);

  const json* prior = find(root, "prior");
  if (!prior || !prior->is_object()) fail("prior", "missing block");
  parse_prior(*prior, cfg);

  if (const json* v = find(root, "disclosure")) {
    std::string s = as_string(*v, "disclosure");
    auto d = disclosure_from_string(s);
    if (!d) fail("disclosure", "expected 'known', 'prior_only' or 'none'");
    cfg.disclosure = *d;
  }

  const json* variants = find(root, "variants");
  if (!variants || !variants->is_array() || variants->empty()) {
    fail("variants", "expected a non-empty array of variant names");
  }
  for (const json& v : *variants) {
    std::string name = as_string(v, "variants");
    auto var = variant_from_string(name);
    if (!var) {
      fail("variants", "unknown variant '" + name +
                           "' (expected one of ignore, with_known, with_prior, uniform, gml, empirical_ep)");
    }
    cfg.variants.push_back(*var);
  }

  if (const json* v = find(root, "rounds")) cfg.rounds = as_integer(*v, "rounds");
  if (const json* v = find(root, "trials")) cfg.trials = as_integer(*v, "trials");
  if (const json* v = find(root, "seed")) {
    if (!v->is_number_unsigned() && !v->is_number_integer()) fail("seed", "expected an integer");
    cfg.seed = v->get<std::uint64_t>();
  }
  if (const json* v = find(root, "out_dir")) cfg.out_dir = as_string(*v, "out_dir");
  if (const json* v = find(root, "trace_every")) cfg.trace_every = as_integer(*v, "trace_every");
  if (const json* emp = find(root, "empirical")) {
    if (!emp->is_object()) fail("empirical", "expected an object");
    if (const json* v = find(*emp, "exclude_current")) {
      if (!v->is_boolean()) fail("empirical.exclude_current", "expected a boolean");
      cfg.empirical_exclude_current = v->get<bool>();
    }
  }
  if (const json* noise = find(root, "noise")) {
    if (!noise->is_null()) {
      if (!noise->is_object()) fail("noise", "expected an object");
      NoiseBlock nb;
      if (const json* v = find(*noise, "kind")) {
        auto k = noise_kind_from_string(as_string(*v, "noise.kind"));
        if (!k) fail("noise.kind", "expected 'gaussian' or 'rademacher'");
        nb.kind = *k;
      }
      if (const json* v = find(*noise, "sigma")) nb.sigma = as_number(*v, "noise.sigma");
      if (nb.sigma < 0.0) fail("noise.sigma", "must be nonnegative");
      if (nb.sigma > 0.0) cfg.noise = nb;
    }
  }
  if (const json* checks = find(root, "checks")) {
    if (!checks->is_object()) fail("checks", "expected an object");
    if (const json* v = find(*checks, "substitute_bound")) {
      if (!v->is_boolean()) fail("checks.substitute_bound", "expected a boolean");
      cfg.check_substitute_bound = v->get<bool>();
    }
  }
  if (const json* v = find(root, "w1")) {
    if (!v->is_null()) {
      if (!v->is_array()) fail("w1", "expected an array of numbers");
      Vec w;
      for (const json& c : *v) w.push_back(as_number(c, "w1"));
      cfg.w1 = std::move(w);
    }
  }

  validate(cfg);
  return cfg;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.rounds < 1) fail("rounds", "must be >= 1");
  if (cfg.trials < 1) fail("trials", "must be >= 1");
  if (cfg.trace_every < 0) fail("trace_every", "must be >= 0");
  if (cfg.variants.empty()) fail("variants", "at least one variant required");
  for (std::size_t i = 0; i < cfg.variants.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.variants.size(); ++j) {
      if (cfg.variants[i] == cfg.variants[j]) {
        fail("variants", std::string("duplicate variant '") + to_string(cfg.variants[i]) + "'");
      }
    }
  }

  if (cfg.prior_schedule.empty()) fail("prior", "missing block");
  for (std::size_t k = 0; k < cfg.prior_schedule.size(); ++k) {
    const PriorComponents& entry = cfg.prior_schedule[k];
    std::string where = cfg.prior_schedule.size() == 1
                            ? std::string("prior.components")
                            : "prior.schedule[" + std::to_string(k) + "].components";
    if (entry.count() == 0) fail(where, "at least one component required");
    double total = 0.0;
    for (const auto& b : entry.betas) {
      if (b.weight < 0.0) fail(where, "negative weight");
      total += b.weight;
    }
    for (const auto& m : entry.masses) {
      if (m.weight < 0.0) fail(where, "negative weight");
      total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "weights sum to " << total << ", expected 1";
      fail(where, os.str());
    }
  }

  for (Variant v : cfg.variants) {
    if (v == Variant::with_known && cfg.disclosure != Disclosure::known) {
      fail("variants", "with_known requires disclosure 'known'");
    }
    if (v == Variant::with_prior && cfg.disclosure == Disclosure::none) {
      fail("variants", "with_prior requires disclosure 'known' or 'prior_only'");
    }
  }

  // environments driven by the active prior component need a consistent
  // component count across schedule entries
  const std::size_t components = cfg.prior_schedule.front().count();
  bool counts_equal = true;
  for (const PriorComponents& entry : cfg.prior_schedule) {
    counts_equal = counts_equal && entry.count() == components;
  }

  if (cfg.env_kind == EnvKind::synthetic) {
    if (cfg.synthetic.dim == 0) fail("environment.dim", "must be >= 1");
    if (!(cfg.synthetic.scale > 0.0)) fail("environment.scale", "must be positive");
    if (!(cfg.synthetic.radius > 0.0)) fail("environment.radius", "must be positive");
    if (cfg.w1 && cfg.w1->size() != cfg.synthetic.dim) fail("w1", "dimension mismatch with environment.dim");
    if (cfg.synthetic.sign_rule == SignRule::component && !counts_equal) {
      fail("prior.schedule", "component-tied signs need the same component count in every entry");
    }
  } else {
    const DatasetBlock& d = cfg.dataset;
    if (d.csv.empty()) fail("environment.csv", "missing dataset path");
    if (d.copies < 1) fail("environment.copies", "must be >= 1");
    if (d.radius && !(*d.radius > 0.0)) fail("environment.radius", "must be positive");
    if (d.arrival == Arrival::semi_adversarial) {
      if (!counts_equal) {
        fail("prior.schedule", "semi-adversarial arrival needs the same component count in every entry");
      }
      if (!d.component_partitions.empty() && d.component_partitions.size() != components) {
        fail("environment.component_partitions",
             "length must equal the number of prior components (" + std::to_string(components) + ")");
      }
      if (d.component_partitions.empty() && components != 2) {
        fail("environment.component_partitions",
             "required when the prior does not have exactly 2 components");
      }
    }
  }
}

MixturePrior ExperimentConfig::prior() const {
  const PriorComponents& first = prior_schedule.front();
  return MixturePrior(first.betas, first.masses);
}

std::shared_ptr<const PriorSource> ExperimentConfig::prior_source() const {
  if (prior_schedule.size() == 1) return std::make_shared<StationaryPrior>(prior());
  std::vector<MixturePrior> seq;
  seq.reserve(prior_schedule.size());
  for (const PriorComponents& entry : prior_schedule) {
    seq.emplace_back(entry.betas, entry.masses);
  }
  return std::make_shared<ScheduledPrior>(std::move(seq));
}

ExperimentConfig load_config_text(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config", "invalid JSON");
  return parse(root);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str());
}

}  // namespace oco
