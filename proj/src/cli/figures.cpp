#include "aoisched/cli/figures.hpp"

#include <cmath>
#include <map>

namespace aoisched::cli {

namespace {

struct Defaults {
  std::uint64_t runs;
  std::uint64_t horizon;
};

const std::map<std::string, Defaults>& defaults_table() {
  static const std::map<std::string, Defaults> table = {
      {"fig3", {2000, 100000}}, {"fig4", {2000, 10000}}, {"fig5", {2000, 10000}},
      {"fig6", {2000, 10000}},  {"fig7", {10000, 2000}}, {"fig8", {10000, 2000}},
  };
  return table;
}

std::vector<double> grid(double first, double last, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround((last - first) / step)) + 1;
  for (int i = 0; i < count; ++i) out.push_back(first + step * i);
  return out;
}

ExperimentConfig symmetric(std::size_t n, double lambda, double p, PolicyKind kind,
                           const FigureOptions& opt, const Defaults& d) {
  ExperimentConfig cfg;
  cfg.nodes.assign(n, NodeParams{lambda, p, 1.0, 1.0});
  cfg.policy.kind = kind;
  cfg.policy.weights = WeightPreset::RsOptimal;
  cfg.runs = opt.runs.value_or(d.runs);
  cfg.horizon = opt.horizon.value_or(d.horizon);
  cfg.base_seed = opt.seed;
  cfg.parallel = opt.parallel;
  return cfg;
}

TidyRow simulated(const std::string& figure, const std::string& x_name, double x,
                  const std::string& series, const ExperimentConfig& cfg) {
  const auto m = run_monte_carlo(cfg);
  return {figure, x_name, x, series, m.ewsaoi_mean, m.ci95_halfwidth, describe(cfg)};
}

void append_bounds(std::vector<TidyRow>& rows, const std::string& figure,
                   const std::string& x_name, double x, const ExperimentConfig& cfg) {
  const auto b = bound_report(cfg.nodes);
  const auto params = describe(cfg);
  rows.push_back({figure, x_name, x, "R_RS*", b.r_rs_star, 0.0, params});
  rows.push_back({figure, x_name, x, "POMW upper bound", b.pomw_middle_bound, 0.0, params});
  rows.push_back({figure, x_name, x, "R_RSM", b.r_rsm, 0.0, params});
  rows.push_back({figure, x_name, x, "L_B", b.lower_bound, 0.0, params});
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return names;
}

std::pair<std::uint64_t, std::uint64_t> figure_defaults(const std::string& name) {
  const auto it = defaults_table().find(name);
  if (it == defaults_table().end()) throw UnknownFigure("unknown figure '" + name + "'");
  return {it->second.runs, it->second.horizon};
}

std::vector<TidyRow> run_figure(const std::string& name, const FigureOptions& opt) {
  const auto it = defaults_table().find(name);
  if (it == defaults_table().end()) {
    throw UnknownFigure("unknown figure '" + name + "' (expected fig3 ... fig8)");
  }
  const Defaults& d = it->second;
  std::vector<TidyRow> rows;

  if (name == "fig3") {
    for (double lambda : grid(0.1, 1.0, 0.1)) {
      for (auto kind : {PolicyKind::Pomw, PolicyKind::Fomw}) {
        const auto cfg = symmetric(2, lambda, 0.8, kind, opt, d);
        rows.push_back(simulated(name, "lambda", lambda, std::string(to_string(kind)), cfg));
      }
      append_bounds(rows, name, "lambda", lambda,
                    symmetric(2, lambda, 0.8, PolicyKind::Pomw, opt, d));
    }
  } else if (name == "fig4") {
    const std::vector<std::pair<double, double>> pairs = {{0.5, 0.5}, {0.25, 0.75}, {0.1, 0.9}};
    for (double p : grid(0.1, 1.0, 0.1)) {
      for (const auto& [l1, l2] : pairs) {
        for (auto kind : {PolicyKind::Pomw, PolicyKind::Fomw}) {
          auto cfg = symmetric(2, l1, p, kind, opt, d);
          cfg.nodes[1].lambda = l2;
          const auto series = std::string(to_string(kind)) + " lambda=" + format_number(l1) +
                              "/" + format_number(l2);
          rows.push_back(simulated(name, "p", p, series, cfg));
        }
      }
    }
  } else if (name == "fig5" || name == "fig6") {
    const double lambda = name == "fig5" ? 0.1 : 0.5;
    for (double n : grid(10, 30, 5)) {
      const auto count = static_cast<std::size_t>(n);
      for (auto kind : {PolicyKind::Pomw, PolicyKind::Fomw}) {
        const auto cfg = symmetric(count, lambda, 0.8, kind, opt, d);
        rows.push_back(simulated(name, "N", n, std::string(to_string(kind)), cfg));
      }
      append_bounds(rows, name, "N", n, symmetric(count, lambda, 0.8, PolicyKind::Pomw, opt, d));
    }
  } else {  // fig7, fig8
    for (double lambda : grid(0.05, 0.5, 0.05)) {
      for (auto kind : {PolicyKind::Pomw, PolicyKind::Mwa, PolicyKind::Rr}) {
        auto cfg = symmetric(10, lambda, 0.5, kind, opt, d);
        if (name == "fig8") cfg.randomize = ParamRandomization{0.1, 1.9, 0.1, 0.9};
        rows.push_back(simulated(name, "lambda", lambda, std::string(to_string(kind)), cfg));
      }
    }
  }
  return rows;
}

std::vector<TidyRow> run_sweep(const ConfigDocument& doc) {
  if (!doc.sweep) throw ConfigError("sweep", "missing required field");
  const auto& axis = *doc.sweep;
  std::vector<PolicyKind> kinds = doc.sweep_policies;
  if (kinds.empty()) kinds.push_back(doc.experiment.policy.kind);

  std::vector<TidyRow> rows;
  for (double v : axis.values) {
    auto cfg = apply_sweep_value(doc.experiment, axis.parameter, v);
    for (auto kind : kinds) {
      cfg.policy.kind = kind;
      rows.push_back(simulated("sweep", axis.parameter, v, std::string(to_string(kind)), cfg));
    }
    if (bounds_if_computable(cfg)) append_bounds(rows, "sweep", axis.parameter, v, cfg);
  }
  return rows;
}

}  // namespace aoisched::cli
