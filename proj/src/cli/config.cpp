#include "aoisched/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aoisched::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : "field '" + field + "': " + message),
      field_(std::move(field)) {}

namespace {

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ConfigError(join_path(path, key), "missing required field");
  return *v;
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) throw ConfigError(join_path(path, it.key()), "unknown field");
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::uint64_t as_count(const json& v, const std::string& path, std::uint64_t min) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    // Accept integral floats such as 1e5.
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x >= static_cast<double>(min) && std::floor(x) == x && x < 1.8e19) {
        return static_cast<std::uint64_t>(x);
      }
    }
    throw ConfigError(path, "expected an integer >= " + std::to_string(min));
  }
  if (v.is_number_integer() && v.get<std::int64_t>() < static_cast<std::int64_t>(min)) {
    throw ConfigError(path, "expected an integer >= " + std::to_string(min));
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

// Scalar broadcast or one value per node.
std::vector<double> per_node(const json& v, const std::string& path, std::size_t n) {
  if (v.is_array()) {
    if (v.size() != n) {
      std::ostringstream os;
      os << "expected " << n << " values (one per node), got " << v.size();
      throw ConfigError(path, os.str());
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  return std::vector<double>(n, as_number(v, path));
}

std::pair<double, double> as_range(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [low, high]");
  return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

void check_prob(const std::vector<double>& values, const std::string& path, bool allow_zero) {
  for (double x : values) {
    const bool ok = allow_zero ? (x >= 0.0 && x <= 1.0) : (x > 0.0 && x <= 1.0);
    if (!ok) throw ConfigError(path, allow_zero ? "must lie in [0,1]" : "must lie in (0,1]");
  }
}

void parse_network(const json& doc, ExperimentConfig& cfg, bool markov) {
  const json& net = require(doc, "network", "");
  require_object(net, "network");
  reject_unknown(net, "network", {"N", "lambda", "p", "omega"});
  const auto n = static_cast<std::size_t>(as_count(require(net, "N", "network"), "network.N", 1));

  std::vector<double> lambda;
  if (markov) {
    if (find(net, "lambda")) {
      throw ConfigError("network.lambda",
                        "arrival rates are derived from the chain for Markov arrivals");
    }
  } else {
    lambda = per_node(require(net, "lambda", "network"), "network.lambda", n);
    check_prob(lambda, "network.lambda", false);
  }
  const auto p = per_node(require(net, "p", "network"), "network.p", n);
  check_prob(p, "network.p", false);
  std::vector<double> omega(n, 1.0);
  if (const json* w = find(net, "omega")) omega = per_node(*w, "network.omega", n);
  for (double w : omega) {
    if (!(w > 0.0)) throw ConfigError("network.omega", "weights must be positive");
  }

  cfg.nodes.assign(n, NodeParams{});
  for (std::size_t i = 0; i < n; ++i) {
    cfg.nodes[i].lambda = markov ? 1.0 : lambda[i];
    cfg.nodes[i].p = p[i];
    cfg.nodes[i].omega = omega[i];
  }
}

bool parse_arrival(const json& doc, ExperimentConfig& cfg, std::size_t n_hint) {
  const json* arr = find(doc, "arrival");
  if (arr == nullptr) return false;
  require_object(*arr, "arrival");
  reject_unknown(*arr, "arrival", {"model", "lambda_idle", "lambda_busy"});
  const auto model = as_string(require(*arr, "model", "arrival"), "arrival.model");
  if (model == "bernoulli") {
    if (find(*arr, "lambda_idle") || find(*arr, "lambda_busy")) {
      throw ConfigError("arrival", "chain probabilities only apply to the markov model");
    }
    return false;
  }
  if (model != "markov") throw ConfigError("arrival.model", "expected 'bernoulli' or 'markov'");
  const auto idle = per_node(require(*arr, "lambda_idle", "arrival"), "arrival.lambda_idle", n_hint);
  const auto busy = per_node(require(*arr, "lambda_busy", "arrival"), "arrival.lambda_busy", n_hint);
  check_prob(idle, "arrival.lambda_idle", true);
  check_prob(busy, "arrival.lambda_busy", true);
  cfg.arrivals.kind = ArrivalKind::Markov;
  cfg.arrivals.markov.clear();
  for (std::size_t i = 0; i < n_hint; ++i) cfg.arrivals.markov.push_back({idle[i], busy[i]});
  return true;
}

PolicySpec parse_policy(const json& doc, std::size_t n) {
  const json& pol = require(doc, "policy", "");
  require_object(pol, "policy");
  reject_unknown(pol, "policy", {"name", "beta", "mu"});
  PolicySpec spec;
  try {
    spec.kind = parse_policy_kind(as_string(require(pol, "name", "policy"), "policy.name"));
  } catch (const InvalidParameter& e) {
    throw ConfigError("policy.name", e.what());
  }
  if (const json* b = find(pol, "beta")) {
    if (b->is_string()) {
      try {
        spec.weights = parse_weight_preset(b->get<std::string>());
      } catch (const InvalidParameter& e) {
        throw ConfigError("policy.beta", e.what());
      }
    } else {
      spec.weights = WeightPreset::Explicit;
      spec.beta = per_node(*b, "policy.beta", n);
      for (double x : spec.beta) {
        if (!(x > 0.0)) throw ConfigError("policy.beta", "weights must be positive");
      }
    }
  }
  if (const json* m = find(pol, "mu")) {
    if (spec.kind != PolicyKind::Rs) throw ConfigError("policy.mu", "only applies to policy 'rs'");
    if (m->is_string()) {
      try {
        spec.mu_preset = parse_mu_preset(m->get<std::string>());
      } catch (const InvalidParameter& e) {
        throw ConfigError("policy.mu", e.what());
      }
    } else {
      spec.mu_preset = MuPreset::Explicit;
      spec.mu = per_node(*m, "policy.mu", n);
      try {
        validate_rs_probabilities(spec.mu, n);
      } catch (const InvalidParameter& e) {
        throw ConfigError("policy.mu", e.what());
      }
    }
  }
  return spec;
}

void parse_simulation(const json& doc, ExperimentConfig& cfg) {
  const json* sim = find(doc, "simulation");
  if (sim == nullptr) return;
  require_object(*sim, "simulation");
  reject_unknown(*sim, "simulation", {"horizon", "runs", "seed", "burn_in", "parallel"});
  if (const json* v = find(*sim, "horizon")) cfg.horizon = as_count(*v, "simulation.horizon", 1);
  if (const json* v = find(*sim, "runs")) cfg.runs = as_count(*v, "simulation.runs", 1);
  if (const json* v = find(*sim, "seed")) cfg.base_seed = as_count(*v, "simulation.seed", 0);
  if (const json* v = find(*sim, "burn_in")) cfg.burn_in = as_count(*v, "simulation.burn_in", 0);
  if (const json* v = find(*sim, "parallel")) {
    cfg.parallel = static_cast<unsigned>(as_count(*v, "simulation.parallel", 1));
  }
}

void parse_randomize(const json& doc, ExperimentConfig& cfg) {
  const json* r = find(doc, "randomize");
  if (r == nullptr) return;
  require_object(*r, "randomize");
  reject_unknown(*r, "randomize", {"omega", "p"});
  ParamRandomization pr;
  if (const json* w = find(*r, "omega")) {
    std::tie(pr.omega_lo, pr.omega_hi) = as_range(*w, "randomize.omega");
  }
  if (const json* p = find(*r, "p")) std::tie(pr.p_lo, pr.p_hi) = as_range(*p, "randomize.p");
  if (!(pr.omega_lo > 0.0 && pr.omega_hi >= pr.omega_lo)) {
    throw ConfigError("randomize.omega", "range must be positive and ordered");
  }
  if (!(pr.p_lo > 0.0 && pr.p_hi >= pr.p_lo && pr.p_hi <= 1.0)) {
    throw ConfigError("randomize.p", "range must lie in (0,1] and be ordered");
  }
  cfg.randomize = pr;
}

void parse_sweep(const json& doc, ConfigDocument& out) {
  const json* s = find(doc, "sweep");
  if (s == nullptr) return;
  require_object(*s, "sweep");
  reject_unknown(*s, "sweep", {"parameter", "values", "policies"});
  SweepAxis axis;
  axis.parameter = as_string(require(*s, "parameter", "sweep"), "sweep.parameter");
  if (!is_sweep_parameter(axis.parameter)) {
    throw ConfigError("sweep.parameter", "expected one of lambda, p, omega, N, horizon");
  }
  if (axis.parameter == "lambda" && out.experiment.arrivals.kind == ArrivalKind::Markov) {
    throw ConfigError("sweep.parameter", "lambda cannot be swept under Markov arrivals");
  }
  const json& values = require(*s, "values", "sweep");
  if (!values.is_array() || values.empty()) {
    throw ConfigError("sweep.values", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    axis.values.push_back(as_number(values[i], "sweep.values[" + std::to_string(i) + "]"));
  }
  // Dry-run every coordinate so bad values surface as config errors.
  for (double v : axis.values) {
    try {
      apply_sweep_value(out.experiment, axis.parameter, v).validate();
    } catch (const InvalidParameter& e) {
      throw ConfigError("sweep.values", e.what());
    }
  }
  if (const json* pols = find(*s, "policies")) {
    if (!pols->is_array()) throw ConfigError("sweep.policies", "expected an array of names");
    for (std::size_t i = 0; i < pols->size(); ++i) {
      const auto path = "sweep.policies[" + std::to_string(i) + "]";
      try {
        out.sweep_policies.push_back(parse_policy_kind(as_string((*pols)[i], path)));
      } catch (const InvalidParameter& e) {
        throw ConfigError(path, e.what());
      }
    }
  }
  out.sweep = std::move(axis);
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

bool is_sweep_parameter(const std::string& name) {
  return name == "lambda" || name == "p" || name == "omega" || name == "N" || name == "horizon";
}

ConfigDocument parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "line " << line_of(text, e.byte) << ": malformed JSON (" << e.what() << ")";
    throw ConfigError("", os.str());
  }
  require_object(doc, "");
  reject_unknown(doc, "",
                 {"network", "arrival", "policy", "simulation", "randomize", "sweep", "output"});

  ConfigDocument out;
  auto& cfg = out.experiment;

  // The arrival model decides whether lambda is required, so peek first.
  bool markov = false;
  if (const json* arr = find(doc, "arrival"); arr && arr->is_object()) {
    if (const json* m = find(*arr, "model"); m && m->is_string()) markov = *m == "markov";
  }
  parse_network(doc, cfg, markov);
  parse_arrival(doc, cfg, cfg.nodes.size());
  if (markov) {
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
      const double rate = cfg.arrivals.markov[i].stationary_rate();
      if (!(rate > 0.0)) {
        throw ConfigError("arrival.lambda_idle", "chain never produces arrivals");
      }
      cfg.nodes[i].lambda = rate;
    }
  }
  cfg.policy = parse_policy(doc, cfg.nodes.size());
  parse_simulation(doc, cfg);
  parse_randomize(doc, cfg);

  if (const json* o = find(doc, "output")) {
    require_object(*o, "output");
    reject_unknown(*o, "output", {"dir"});
    if (const json* d = find(*o, "dir")) out.output_dir = as_string(*d, "output.dir");
  }

  try {
    cfg.validate();
    // Resolving presets catches degenerate combinations up front.
    const auto weighted = resolve_weights(cfg.policy, cfg.nodes);
    (void)resolve_mu(cfg.policy, weighted);
  } catch (const InvalidParameter& e) {
    throw ConfigError("", e.what());
  }
  parse_sweep(doc, out);
  return out;
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_overrides(ExperimentConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.base_seed = *overrides.seed;
  if (overrides.runs) config.runs = *overrides.runs;
  if (overrides.horizon) config.horizon = *overrides.horizon;
  if (overrides.parallel) config.parallel = *overrides.parallel;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& config, const std::string& parameter,
                                   double value) {
  ExperimentConfig out = config;
  if (parameter == "lambda") {
    for (auto& n : out.nodes) n.lambda = value;
  } else if (parameter == "p") {
    for (auto& n : out.nodes) n.p = value;
  } else if (parameter == "omega") {
    for (auto& n : out.nodes) n.omega = value;
  } else if (parameter == "N" || parameter == "horizon") {
    if (!(value >= 1.0) || std::floor(value) != value) {
      throw InvalidParameter(parameter + " must be a positive integer");
    }
    const auto count = static_cast<std::uint64_t>(value);
    if (parameter == "horizon") {
      out.horizon = count;
    } else {
      out.nodes.assign(count, config.nodes.front());
      if (out.arrivals.kind == ArrivalKind::Markov) {
        out.arrivals.markov.assign(count, config.arrivals.markov.front());
      }
      if (out.policy.weights == WeightPreset::Explicit) {
        out.policy.beta.assign(count, config.policy.beta.front());
      }
      if (out.policy.mu_preset == MuPreset::Explicit) {
        out.policy.mu.assign(count, 1.0 / static_cast<double>(count));
      }
    }
  } else {
    throw InvalidParameter("unknown sweep parameter '" + parameter + "'");
  }
  return out;
}

}  // namespace aoisched::cli
