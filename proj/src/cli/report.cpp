#include "aoisched/cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace aoisched::cli {

namespace {

template <typename Get>
std::string join_nodes(const std::vector<NodeParams>& nodes, Get get) {
  std::vector<double> xs;
  xs.reserve(nodes.size());
  for (const auto& n : nodes) xs.push_back(get(n));
  return join_numbers(xs);
}

std::string policy_detail(const ExperimentConfig& config) {
  const auto& spec = config.policy;
  switch (spec.kind) {
    case PolicyKind::Pomw:
    case PolicyKind::Fomw:
      return spec.weights == WeightPreset::Explicit ? "beta=" + join_numbers(spec.beta)
                                                    : "beta=" + std::string(to_string(spec.weights));
    case PolicyKind::Rs:
      return spec.mu_preset == MuPreset::Explicit ? "mu=" + join_numbers(spec.mu)
                                                  : "mu=" + std::string(to_string(spec.mu_preset));
    case PolicyKind::Rr:
    case PolicyKind::Mwa: return "";
  }
  return "";
}

std::string arrival_detail(const ExperimentConfig& config) {
  if (config.arrivals.kind == ArrivalKind::Bernoulli) return "bernoulli";
  std::vector<double> idle, busy;
  for (const auto& c : config.arrivals.markov) {
    idle.push_back(c.lambda_idle);
    busy.push_back(c.lambda_busy);
  }
  return "markov(idle=" + join_numbers(idle) + " busy=" + join_numbers(busy) + ")";
}

std::string randomize_detail(const ExperimentConfig& config) {
  if (!config.randomize) return "";
  const auto& r = *config.randomize;
  return "omega~U(" + format_number(r.omega_lo) + " " + format_number(r.omega_hi) + ") p~U(" +
         format_number(r.p_lo) + " " + format_number(r.p_hi) + ")";
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += format_number(xs[i]);
  }
  return out;
}

std::optional<BoundReport> bounds_if_computable(const ExperimentConfig& config) {
  if (config.arrivals.kind != ArrivalKind::Bernoulli || config.randomize) return std::nullopt;
  return bound_report(config.nodes);
}

std::string simulate_header() {
  return "policy,N,T,runs,seed,lambda,p,omega,ewsaoi_mean,ewsaoi_ci95,r_rs_star,"
         "pomw_middle_bound,r_rsm,lower_bound,policy_params,arrival,randomize,burn_in";
}

std::string simulate_row(const ExperimentConfig& config, const RunMetrics& metrics) {
  std::ostringstream os;
  const auto& nodes = config.nodes;
  os << to_string(config.policy.kind) << ',' << nodes.size() << ',' << config.horizon << ','
     << config.runs << ',' << config.base_seed << ','
     << join_nodes(nodes, [](const NodeParams& n) { return n.lambda; }) << ','
     << join_nodes(nodes, [](const NodeParams& n) { return n.p; }) << ','
     << join_nodes(nodes, [](const NodeParams& n) { return n.omega; }) << ','
     << format_number(metrics.ewsaoi_mean) << ',' << format_number(metrics.ci95_halfwidth)
     << ',';
  if (const auto b = bounds_if_computable(config)) {
    os << format_number(b->r_rs_star) << ',' << format_number(b->pomw_middle_bound) << ','
       << format_number(b->r_rsm) << ',' << format_number(b->lower_bound);
  } else {
    os << ",,,";
  }
  os << ',' << policy_detail(config) << ',' << arrival_detail(config) << ','
     << randomize_detail(config) << ',' << config.burn_in;
  return os.str();
}

std::string bounds_header() {
  return "N,lambda,p,omega,r_rs_star,mu_star,mu_prime,mu_m,pomw_middle_bound,r_rsm,q_star,"
         "lower_bound,guarantee_bound";
}

std::string bounds_row(const std::vector<NodeParams>& nodes, const BoundReport& r) {
  std::ostringstream os;
  os << nodes.size() << ',' << join_nodes(nodes, [](const NodeParams& n) { return n.lambda; })
     << ',' << join_nodes(nodes, [](const NodeParams& n) { return n.p; }) << ','
     << join_nodes(nodes, [](const NodeParams& n) { return n.omega; }) << ','
     << format_number(r.r_rs_star) << ',' << join_numbers(r.mu_star) << ','
     << join_numbers(r.mu_prime) << ',' << join_numbers(r.mu_m) << ','
     << format_number(r.pomw_middle_bound) << ',' << format_number(r.r_rsm) << ','
     << join_numbers(r.q_star) << ',' << format_number(r.lower_bound) << ','
     << format_number(r.guarantee_bound);
  return os.str();
}

std::string tidy_header() { return "figure,x_name,x,series,value,ci95,params"; }

std::string tidy_row(const TidyRow& row) {
  std::ostringstream os;
  os << row.figure << ',' << row.x_name << ',' << format_number(row.x) << ',' << row.series << ','
     << format_number(row.value) << ',' << format_number(row.ci95) << ',' << row.params;
  return os.str();
}

std::string tidy_csv(const std::vector<TidyRow>& rows) {
  std::string out = tidy_header() + "\n";
  for (const auto& r : rows) out += tidy_row(r) + "\n";
  return out;
}

std::string describe(const ExperimentConfig& config) {
  std::ostringstream os;
  const auto& nodes = config.nodes;
  os << "N=" << nodes.size() << " T=" << config.horizon << " runs=" << config.runs
     << " seed=" << config.base_seed
     << " lambda=" << join_nodes(nodes, [](const NodeParams& n) { return n.lambda; })
     << " p=" << join_nodes(nodes, [](const NodeParams& n) { return n.p; })
     << " omega=" << join_nodes(nodes, [](const NodeParams& n) { return n.omega; })
     << " arrival=" << arrival_detail(config);
  if (const auto detail = policy_detail(config); !detail.empty()) os << ' ' << detail;
  if (config.randomize) os << ' ' << randomize_detail(config);
  return os.str();
}

}  // namespace aoisched::cli
