// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Monte-Carlo sizes are the full ones; expect minutes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aoisched/analysis.hpp"
#include "aoisched/belief.hpp"
#include "aoisched/cli/commands.hpp"
#include "aoisched/sim.hpp"
#include "oracles.hpp"

using namespace aoisched;

namespace {

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<NodeParams> symmetric(std::size_t n, double lambda, double p) {
  return std::vector<NodeParams>(n, NodeParams{lambda, p, 1.0, 1.0});
}

RunMetrics simulate(std::vector<NodeParams> nodes, PolicyKind kind, std::uint64_t horizon,
                    std::uint64_t runs, std::uint64_t seed,
                    WeightPreset weights = WeightPreset::RsOptimal) {
  ExperimentConfig cfg;
  cfg.nodes = std::move(nodes);
  cfg.policy.kind = kind;
  cfg.policy.weights = weights;
  cfg.horizon = horizon;
  cfg.runs = runs;
  cfg.base_seed = seed;
  cfg.parallel = workers();
  return run_monte_carlo(cfg);
}

// --- criteria -------------------------------------------------------------

Outcome belief_exactness() {
  Outcome o;
  const auto a = belief_vector(1, 2, 0.4);
  const auto b = belief_vector(2, 1, 0.4);
  const BeliefVector want_a({{1, 0.4}, {2, 0.24}, {3, 0.36}});
  const BeliefVector want_b({{1, 0.4}, {3, 0.6}});
  const double ea = max_abs_difference(a, want_a);
  const double eb = max_abs_difference(b, want_b);
  o.require(a.size() == 3 && ea <= 1e-15, "(1,2): err " + fmt("%.3g", ea));
  o.require(b.size() == 2 && eb <= 1e-15, "(2,1): err " + fmt("%.3g", eb));
  o.detail = o.pass ? "max err " + fmt("%.3g", std::max(ea, eb)) : o.detail;
  return o;
}

Outcome loc_sufficiency() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int traces = 0;
  for (int lam = 1; lam <= 9; ++lam) {
    const double lambda = lam / 10.0;
    const int count = lam <= 2 ? 23 : 22;  // 200 traces over nine rates
    for (int r = 0; r < count; ++r, ++traces) {
      const double p = 0.1 + 0.9 * u(rng);
      const double sched = 0.1 + 0.8 * u(rng);
      Age d = u(rng) < lambda ? 1 : 2;
      LocBelief z{1, 1};
      auto dense = belief_vector(1, 1, lambda);
      for (int t = 0; t < 50; ++t) {
        const bool scheduled = u(rng) < sched;
        std::optional<Age> obs;
        if (scheduled && u(rng) < p) obs = d;
        dense = bayes_update_truncated(dense, lambda, scheduled, obs, 256);
        z = update_loc_belief(z, scheduled, obs);
        d = u(rng) < lambda ? 1 : d + 1;
        worst = std::max(worst, max_abs_difference(belief_vector(z.k, z.m, lambda), dense));
        if (dense.at(d) <= 0.0) o.require(false, "true local age outside belief support");
      }
    }
  }
  o.require(traces == 200, "trace count " + std::to_string(traces));
  o.require(worst < 1e-12, "max err " + fmt("%.3g", worst));
  if (o.pass) o.detail = std::to_string(traces) + " traces, max err " + fmt("%.3g", worst);
  return o;
}

Outcome rs_closed_form() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.nodes = symmetric(2, 0.5, 0.8);
  cfg.policy.kind = PolicyKind::Rs;
  cfg.policy.mu_preset = MuPreset::Explicit;
  cfg.policy.mu = {0.5, 0.5};
  cfg.horizon = 100000;
  cfg.runs = 100;
  cfg.base_seed = 3;
  cfg.parallel = workers();
  const auto m = run_monte_carlo(cfg);
  const double analytic = rs_ewsaoi(cfg.nodes, cfg.policy.mu);
  const double rel = std::abs(m.ewsaoi_mean - 4.5) / 4.5;
  o.require(std::abs(analytic - 4.5) < 1e-12, "analytic " + fmt("%.6f", analytic));
  o.require(rel <= 0.01, "relative error " + fmt("%.4f", rel));
  o.detail = "sim " + fmt("%.4f", m.ewsaoi_mean) + " +/- " + fmt("%.4f", m.ci95_halfwidth) +
             " vs 4.5" + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome bound_sandwich() {
  Outcome o;
  std::ostringstream table;
  for (int l = 1; l <= 10; ++l) {
    const double lambda = l / 10.0;
    const auto nodes = symmetric(2, lambda, 0.8);
    const auto b = bound_report(nodes);
    const auto pomw = simulate(nodes, PolicyKind::Pomw, 100000, 200, 40 + l);
    const auto fomw = simulate(nodes, PolicyKind::Fomw, 100000, 200, 40 + l);
    const std::string at = "lambda=" + fmt("%.1f", lambda) + ": ";
    o.require(b.lower_bound <= fomw.ewsaoi_mean, at + "FOMW below L_B");
    o.require(fomw.ewsaoi_mean <= b.r_rs_star + 3 * fomw.ci95_halfwidth, at + "FOMW above R_RS*");
    o.require(b.lower_bound <= pomw.ewsaoi_mean, at + "POMW below L_B");
    o.require(pomw.ewsaoi_mean <= b.pomw_middle_bound + 3 * pomw.ci95_halfwidth,
              at + "POMW above middle bound");
    o.require(b.pomw_middle_bound <= b.r_rsm + 1e-12, at + "middle bound above R_RSM");
    if (l == 10) {
      const double gap = std::abs(pomw.ewsaoi_mean - fomw.ewsaoi_mean) / fomw.ewsaoi_mean;
      o.require(gap <= 0.02, at + "POMW/FOMW gap " + fmt("%.4f", gap));
      for (double v : {b.r_rs_star, b.pomw_middle_bound, b.r_rsm}) {
        o.require(std::abs(v - 3.5) < 1e-12, at + "upper bound " + fmt("%.6f", v) + " != 3.5");
      }
    }
    table << "\n    lambda=" << fmt("%.1f", lambda) << " L_B=" << fmt("%.3f", b.lower_bound)
          << " FOMW=" << fmt("%.3f", fomw.ewsaoi_mean) << " POMW=" << fmt("%.3f", pomw.ewsaoi_mean)
          << " R_RS*=" << fmt("%.3f", b.r_rs_star) << " middle=" << fmt("%.3f", b.pomw_middle_bound)
          << " R_RSM=" << fmt("%.3f", b.r_rsm);
  }
  o.detail += table.str();
  return o;
}

Outcome kkt_solver() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t n = 1 + draw % 3;
    std::vector<double> lambda(n), p(n), omega(n);
    std::vector<NodeParams> nodes;
    for (std::size_t i = 0; i < n; ++i) {
      lambda[i] = u(rng);
      p[i] = u(rng);
      omega[i] = 0.1 + 1.8 * u(rng);
      nodes.push_back({lambda[i], p[i], omega[i], 1.0});
    }
    const double kkt = universal_lower_bound(nodes).value;
    const double grid = oracle::lb_grid_search(lambda, p, omega);
    worst = std::max(worst, std::abs(kkt - grid) / grid);
  }
  o.require(worst <= 1e-4, "max relative gap " + fmt("%.3g", worst));
  const double a = universal_lower_bound(symmetric(2, 0.4, 0.8)).value;
  const double b = universal_lower_bound(symmetric(2, 0.1, 0.8)).value;
  o.require(std::abs(a - 2.75) < 1e-9, "(0.4,0.4) gives " + fmt("%.9f", a));
  o.require(std::abs(b - 6.5) < 1e-9, "(0.1,0.1) gives " + fmt("%.9f", b));
  if (o.pass) o.detail = "100 draws, max relative gap " + fmt("%.3g", worst);
  return o;
}

Outcome performance_guarantee() {
  Outcome o;
  const std::vector<std::pair<std::string, std::vector<NodeParams>>> cases{
      {"symmetric N=2 lambda=0.3", symmetric(2, 0.3, 0.8)},
      {"symmetric N=5 lambda=0.1", symmetric(5, 0.1, 0.6)},
      {"asymmetric N=3",
       {{0.2, 0.9, 1.0, 1.0}, {0.5, 0.6, 2.0, 1.0}, {0.8, 0.4, 0.5, 1.0}}},
      {"asymmetric N=4",
       {{0.1, 0.5, 1.5, 1.0}, {0.3, 0.9, 0.3, 1.0}, {0.6, 0.2, 1.0, 1.0}, {0.9, 0.7, 0.8, 1.0}}},
  };
  int seed = 60;
  for (const auto& [label, nodes] : cases) {
    const auto m =
        simulate(nodes, PolicyKind::Pomw, 100000, 100, seed++, WeightPreset::LowerBound);
    const double ratio = m.ewsaoi_mean / universal_lower_bound(nodes).value;
    const double bound = guarantee_ratio_bound(nodes);
    o.require(ratio < bound, label + " ratio " + fmt("%.3f", ratio));
    o.detail += "\n    " + label + ": POMW/L_B=" + fmt("%.3f", ratio) + " < " + fmt("%.2f", bound);
  }
  return o;
}

Outcome markov_belief() {
  Outcome o;
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double e_tm = 0.0, e_degen = 0.0, e_norm = 0.0, e_step = 0.0;
  for (int draw = 0; draw < 40; ++draw) {
    const MarkovArrivalParams c{u(rng), u(rng)};
    for (double omega : {0.0, u(rng), 1.0}) {
      for (Age m = 0; m <= 100; ++m) {
        e_tm = std::max(e_tm, std::abs(markov_t_m(omega, m, c) -
                                       oracle::markov_iterate(omega, m, c.lambda_idle,
                                                              c.lambda_busy)));
      }
    }
    const double lambda = 0.05 + 0.9 * u(rng);
    const MarkovArrivalParams flat{lambda, lambda};
    for (Age k = 1; k <= 6; ++k) {
      for (Age m = 1; m <= 40; ++m) {
        e_degen = std::max(e_degen, max_abs_difference(markov_belief_vector(k, m, flat),
                                                       belief_vector(k, m, lambda)));
        const auto b = markov_belief_vector(k, m, c);
        e_norm = std::max(e_norm, std::abs(b.total() - 1.0));
        const auto ref = oracle::markov_posterior(k, m, c.lambda_idle, c.lambda_busy);
        for (auto [age, prob] : ref) e_step = std::max(e_step, std::abs(prob - b.at(age)));
        for (const auto& e : b.entries()) {
          const auto it = ref.find(e.age);
          e_step = std::max(e_step, std::abs(e.prob - (it == ref.end() ? 0.0 : it->second)));
        }
      }
    }
  }
  o.require(e_tm <= 1e-12, "T^m err " + fmt("%.3g", e_tm));
  o.require(e_degen <= 1e-12, "degeneration err " + fmt("%.3g", e_degen));
  o.require(e_norm <= 1e-12, "normalization err " + fmt("%.3g", e_norm));
  o.require(e_step <= 1e-12, "step recursion err " + fmt("%.3g", e_step));
  if (o.pass) {
    o.detail = "T^m " + fmt("%.2g", e_tm) + ", degenerate " + fmt("%.2g", e_degen) + ", norm " +
               fmt("%.2g", e_norm) + ", step " + fmt("%.2g", e_step);
  }
  return o;
}

Outcome baseline_ordering() {
  Outcome o;
  auto run = [](double lambda, PolicyKind kind) {
    return simulate(symmetric(10, lambda, 0.5), kind, 10000, 500, 80 + std::lround(lambda * 100));
  };
  for (double lambda : {0.1, 0.15}) {
    const auto pomw = run(lambda, PolicyKind::Pomw);
    const auto mwa = run(lambda, PolicyKind::Mwa);
    const auto rr = run(lambda, PolicyKind::Rr);
    const std::string at = "lambda=" + fmt("%.2f", lambda) + ": ";
    o.require(pomw.ewsaoi_mean + pomw.ci95_halfwidth < mwa.ewsaoi_mean - mwa.ci95_halfwidth,
              at + "POMW and MWA not separated");
    o.require(mwa.ewsaoi_mean + mwa.ci95_halfwidth < rr.ewsaoi_mean - rr.ci95_halfwidth,
              at + "MWA and RR not separated");
    o.detail += "\n    " + at + "POMW=" + fmt("%.3f", pomw.ewsaoi_mean) + "+/-" +
                fmt("%.3f", pomw.ci95_halfwidth) + " MWA=" + fmt("%.3f", mwa.ewsaoi_mean) +
                "+/-" + fmt("%.3f", mwa.ci95_halfwidth) + " RR=" + fmt("%.3f", rr.ewsaoi_mean) +
                "+/-" + fmt("%.3f", rr.ci95_halfwidth);
  }
  for (double lambda : {0.3, 0.4, 0.5}) {
    const auto pomw = run(lambda, PolicyKind::Pomw);
    const auto mwa = run(lambda, PolicyKind::Mwa);
    const double gap = std::abs(pomw.ewsaoi_mean - mwa.ewsaoi_mean) / mwa.ewsaoi_mean;
    const std::string at = "lambda=" + fmt("%.2f", lambda) + ": ";
    o.require(gap <= 0.03, at + "POMW/MWA gap " + fmt("%.4f", gap));
    o.detail += "\n    " + at + "POMW=" + fmt("%.3f", pomw.ewsaoi_mean) +
                " MWA=" + fmt("%.3f", mwa.ewsaoi_mean) + " gap=" + fmt("%.4f", gap);
  }
  return o;
}

Outcome csv_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "aoisched_acceptance";
  std::filesystem::create_directories(dir);
  const auto path = dir / "config.json";
  std::ofstream(path) << R"({
    "network": {"N": 3, "lambda": [0.2, 0.5, 0.8], "p": [0.9, 0.5, 0.3], "omega": [1, 2, 0.5]},
    "policy": {"name": "pomw"},
    "simulation": {"horizon": 20000, "runs": 20, "seed": 5, "parallel": 4}
  })";
  cli::CommandOptions opts;
  opts.config_path = path.string();
  std::ostringstream a, b, err;
  const int ra = cli::cmd_simulate(opts, a, err);
  const int rb = cli::cmd_simulate(opts, b, err);
  o.require(ra == 0 && rb == 0, "command failed: " + err.str());
  o.require(!a.str().empty() && a.str() == b.str(), "outputs differ");
  if (o.pass) o.detail = std::to_string(a.str().size()) + " bytes identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 belief exactness", belief_exactness},
      {"2 LOC sufficiency vs Bayes filter", loc_sufficiency},
      {"3 RS closed form", rs_closed_form},
      {"4 bound sandwich over lambda", bound_sandwich},
      {"5 lower-bound KKT solver", kkt_solver},
      {"6 performance guarantee", performance_guarantee},
      {"7 Markov belief", markov_belief},
      {"8 baseline ordering", baseline_ordering},
      {"9 CSV determinism", csv_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] AC%s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
