// Python bindings for the scheduling core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aoisched/analysis.hpp"
#include "aoisched/belief.hpp"
#include "aoisched/cli/config.hpp"
#include "aoisched/cli/report.hpp"
#include "aoisched/policies.hpp"
#include "aoisched/sim.hpp"

namespace py = pybind11;
using namespace aoisched;

namespace {

std::vector<std::pair<Age, double>> as_pairs(const BeliefVector& b) {
  std::vector<std::pair<Age, double>> out;
  out.reserve(b.size());
  for (const auto& e : b.entries()) out.emplace_back(e.age, e.prob);
  return out;
}

std::vector<NodeParams> make_nodes(const std::vector<double>& lambda, const std::vector<double>& p,
                                   const std::vector<double>& omega) {
  if (lambda.size() != p.size() || lambda.size() != omega.size()) {
    throw InvalidParameter("lambda, p and omega must have the same length");
  }
  std::vector<NodeParams> nodes(lambda.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = {lambda[i], p[i], omega[i], 1.0};
  validate(nodes);
  return nodes;
}

std::optional<std::size_t> node_of(const Decision& d) { return d.node; }

}  // namespace

PYBIND11_MODULE(_aoisched, m) {
  m.doc() = "Age-of-information scheduling under partial observation";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<NodeParams>(m, "NodeParams")
      .def(py::init([](double lambda, double p, double omega, double beta) {
             NodeParams n{lambda, p, omega, beta};
             n.validate();
             return n;
           }),
           py::arg("lam"), py::arg("p"), py::arg("omega") = 1.0, py::arg("beta") = 1.0)
      .def_readwrite("lam", &NodeParams::lambda)
      .def_readwrite("p", &NodeParams::p)
      .def_readwrite("omega", &NodeParams::omega)
      .def_readwrite("beta", &NodeParams::beta);

  py::class_<MarkovArrivalParams>(m, "MarkovArrivalParams")
      .def(py::init([](double idle, double busy) {
             MarkovArrivalParams c{idle, busy};
             c.validate();
             return c;
           }),
           py::arg("lambda_idle"), py::arg("lambda_busy"))
      .def_readwrite("lambda_idle", &MarkovArrivalParams::lambda_idle)
      .def_readwrite("lambda_busy", &MarkovArrivalParams::lambda_busy)
      .def("stationary_rate", &MarkovArrivalParams::stationary_rate);

  // Beliefs are returned as lists of (age, probability) pairs.
  m.def("belief_vector", [](Age k, Age mm, double lam) { return as_pairs(belief_vector(k, mm, lam)); },
        py::arg("k"), py::arg("m"), py::arg("lam"));
  m.def("expected_local_age", &expected_local_age, py::arg("k"), py::arg("m"), py::arg("lam"));
  m.def("pomw_index_term", &pomw_index_term, py::arg("k"), py::arg("m"), py::arg("lam"));
  m.def(
      "update_loc_belief",
      [](Age k, Age mm, bool scheduled, std::optional<Age> obs) {
        const auto z = update_loc_belief(LocBelief{k, mm}, scheduled, obs);
        return std::make_pair(z.k, z.m);
      },
      py::arg("k"), py::arg("m"), py::arg("scheduled"), py::arg("observation") = py::none());
  m.def("markov_t_m", &markov_t_m, py::arg("omega"), py::arg("m"), py::arg("params"));
  m.def(
      "markov_belief_vector",
      [](Age k, Age mm, const MarkovArrivalParams& c) { return as_pairs(markov_belief_vector(k, mm, c)); },
      py::arg("k"), py::arg("m"), py::arg("params"));
  m.def("markov_expected_local_age", &markov_expected_local_age, py::arg("k"), py::arg("m"),
        py::arg("params"));

  m.def(
      "rs_ewsaoi",
      [](const std::vector<double>& lam, const std::vector<double>& p,
         const std::vector<double>& omega, const std::vector<double>& mu) {
        return rs_ewsaoi(make_nodes(lam, p, omega), mu);
      },
      py::arg("lam"), py::arg("p"), py::arg("omega"), py::arg("mu"));
  m.def(
      "bound_report",
      [](const std::vector<double>& lam, const std::vector<double>& p,
         const std::vector<double>& omega) {
        const auto r = bound_report(make_nodes(lam, p, omega));
        py::dict d;
        d["mu_star"] = r.mu_star;
        d["r_rs_star"] = r.r_rs_star;
        d["mu_prime"] = r.mu_prime;
        d["mu_m"] = r.mu_m;
        d["pomw_middle_bound"] = r.pomw_middle_bound;
        d["r_rsm"] = r.r_rsm;
        d["q_star"] = r.q_star;
        d["lower_bound"] = r.lower_bound;
        d["guarantee_bound"] = r.guarantee_bound;
        return d;
      },
      py::arg("lam"), py::arg("p"), py::arg("omega"));

  // Decisions are a node index or None for an idle slot.
  m.def(
      "decide_pomw",
      [](const std::vector<std::pair<Age, Age>>& km, const std::vector<NodeParams>& nodes) {
        std::vector<LocBelief> z;
        for (auto [k, mm] : km) z.push_back({k, mm});
        return node_of(decide_pomw(z, nodes));
      },
      py::arg("beliefs"), py::arg("nodes"));
  m.def(
      "decide_fomw",
      [](const std::vector<Age>& d, const std::vector<Age>& aoi,
         const std::vector<NodeParams>& nodes) { return node_of(decide_fomw(d, aoi, nodes)); },
      py::arg("local_age"), py::arg("aoi"), py::arg("nodes"));
  m.def(
      "decide_rs", [](const std::vector<double>& mu, double u) { return node_of(decide_rs(mu, u)); },
      py::arg("mu"), py::arg("u"));
  m.def(
      "decide_rr", [](std::uint64_t c, std::size_t n) { return node_of(decide_rr(c, n)); },
      py::arg("counter"), py::arg("n"));
  m.def(
      "decide_mwa",
      [](const std::vector<Age>& aoi, const std::vector<NodeParams>& nodes) {
        return node_of(decide_mwa(aoi, nodes));
      },
      py::arg("aoi"), py::arg("nodes"));

  m.def(
      "simulate",
      [](const std::string& config_json) {
        const auto doc = cli::parse_config(config_json);
        RunMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run_monte_carlo(doc.experiment);
        }
        py::dict d;
        d["ewsaoi_mean"] = metrics.ewsaoi_mean;
        d["ewsaoi_std"] = metrics.ewsaoi_std;
        d["ci95_halfwidth"] = metrics.ci95_halfwidth;
        d["per_node_mean_aoi"] = metrics.per_node_mean_aoi;
        d["per_run_values"] = metrics.per_run_values;
        d["csv"] = cli::simulate_header() + "\n" + cli::simulate_row(doc.experiment, metrics) + "\n";
        return d;
      },
      py::arg("config_json"),
      "Runs the Monte-Carlo experiment described by a JSON config string.");
}
