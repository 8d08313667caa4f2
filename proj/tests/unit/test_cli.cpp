#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aoisched/cli/chart.hpp"
#include "aoisched/cli/commands.hpp"
#include "aoisched/cli/config.hpp"
#include "aoisched/cli/figures.hpp"
#include "aoisched/cli/report.hpp"

using namespace aoisched;
using namespace aoisched::cli;

namespace {

constexpr const char* kBase = R"({
  "network": {"N": 2, "lambda": 0.5, "p": 0.8},
  "policy": {"name": "pomw"},
  "simulation": {"horizon": 500, "runs": 3, "seed": 7}
})";

std::string field_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("aoisched_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::filesystem::path& dir, const std::string& text) {
  const auto path = dir / "config.json";
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("a minimal config parses with defaults") {
  const auto doc = parse_config(kBase);
  const auto& cfg = doc.experiment;
  REQUIRE(cfg.nodes.size() == 2);
  CHECK(cfg.nodes[1].lambda == 0.5);
  CHECK(cfg.nodes[1].omega == 1.0);
  CHECK(cfg.policy.kind == PolicyKind::Pomw);
  CHECK(cfg.policy.weights == WeightPreset::RsOptimal);
  CHECK(cfg.horizon == 500);
  CHECK_FALSE(doc.sweep.has_value());
}

TEST_CASE("per-node arrays and presets") {
  const auto doc = parse_config(R"({
    "network": {"N": 3, "lambda": [0.1, 0.2, 0.3], "p": 0.5, "omega": [1, 2, 3]},
    "policy": {"name": "rs", "mu": "rsm"}
  })");
  CHECK(doc.experiment.nodes[2].omega == 3.0);
  CHECK(doc.experiment.policy.mu_preset == MuPreset::Rsm);
}

TEST_CASE("config errors name the offending field") {
  CHECK(field_of(R"({"network": {"lambda": 0.5, "p": 0.5}, "policy": {"name": "rr"}})") ==
        "network.N");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 1.5, "p": 0.5}, "policy": {"name": "rr"}})") ==
        "network.lambda");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": [0.5], "p": 0.5}, "policy": {"name": "rr"}})") ==
        "network.lambda");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5}, "policy": {"name": "x"}})") ==
        "policy.name");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5, "q": 1},
                     "policy": {"name": "rr"}})") == "network.q");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5},
                     "policy": {"name": "rs", "mu": [0.7, 0.7]}})") == "policy.mu");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5},
                     "policy": {"name": "pomw", "mu": [0.5, 0.5]}})") == "policy.mu");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5}, "policy": {"name": "rr"},
                     "simulation": {"horizon": 0}})") == "simulation.horizon");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5}, "policy": {"name": "rr"},
                     "arrival": {"model": "markov", "lambda_idle": 0.2, "lambda_busy": 0.4}})") ==
        "network.lambda");
  CHECK(field_of(R"({"network": {"N": 2, "lambda": 0.5, "p": 0.5}, "policy": {"name": "rr"},
                     "sweep": {"parameter": "gamma", "values": [1]}})") == "sweep.parameter");
}

TEST_CASE("malformed JSON reports a line number") {
  try {
    (void)parse_config("{\n  \"network\": {\n    \"N\": 2,,\n  }\n}");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("Markov config sets lambda to the stationary rate") {
  const auto doc = parse_config(R"({
    "network": {"N": 2, "p": 0.5},
    "arrival": {"model": "markov", "lambda_idle": [0.2, 0.3], "lambda_busy": 0.6},
    "policy": {"name": "pomw"}
  })");
  CHECK(doc.experiment.arrivals.kind == ArrivalKind::Markov);
  CHECK(doc.experiment.nodes[0].lambda == doctest::Approx(0.2 / 0.6));
}

TEST_CASE("overrides replace simulation settings") {
  auto doc = parse_config(kBase);
  apply_overrides(doc.experiment, Overrides{11, 2, 100, 2});
  CHECK(doc.experiment.base_seed == 11);
  CHECK(doc.experiment.runs == 2);
  CHECK(doc.experiment.horizon == 100);
  CHECK(doc.experiment.parallel == 2);
}

TEST_CASE("sweep values apply to every node") {
  const auto cfg = parse_config(kBase).experiment;
  CHECK(apply_sweep_value(cfg, "p", 0.3).nodes[1].p == 0.3);
  CHECK(apply_sweep_value(cfg, "N", 5).nodes.size() == 5);
  CHECK_THROWS_AS((void)apply_sweep_value(cfg, "N", 2.5), InvalidParameter);
}

TEST_CASE("simulate output is byte-identical across invocations") {
  const auto dir = temp_dir("simulate");
  CommandOptions opts;
  opts.config_path = write_config(dir, kBase);
  std::ostringstream out1, out2, err;
  REQUIRE(cmd_simulate(opts, out1, err) == kOk);
  REQUIRE(cmd_simulate(opts, out2, err) == kOk);
  CHECK(out1.str() == out2.str());
  CHECK(out1.str().rfind(simulate_header(), 0) == 0);
  opts.overrides.seed = 8;
  std::ostringstream out3;
  REQUIRE(cmd_simulate(opts, out3, err) == kOk);
  CHECK(out3.str() != out1.str());
}

TEST_CASE("simulate writes the CSV into --out") {
  const auto dir = temp_dir("simulate_out");
  CommandOptions opts;
  opts.config_path = write_config(dir, kBase);
  opts.out_dir = (dir / "results").string();
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(opts, out, err) == kOk);
  CHECK(slurp(dir / "results" / "simulate.csv") == out.str());
}

TEST_CASE("commands map errors to exit codes") {
  const auto dir = temp_dir("errors");
  CommandOptions opts;
  opts.config_path = (dir / "missing.json").string();
  std::ostringstream out, err;
  CHECK(cmd_simulate(opts, out, err) == kConfigError);
  opts.config_path = write_config(dir, R"({"network": {"N": 2}})");
  CHECK(cmd_validate(opts, out, err) == kConfigError);
  CHECK(err.str().find("network.lambda") != std::string::npos);
  opts.figure = "fig42";
  CHECK(cmd_figure(opts, out, err) == kConfigError);
}

TEST_CASE("bounds command prints one row per network") {
  const auto dir = temp_dir("bounds");
  CommandOptions opts;
  opts.config_path = write_config(dir, kBase);
  std::ostringstream out, err;
  REQUIRE(cmd_bounds(opts, out, err) == kOk);
  const auto text = out.str();
  CHECK(text.rfind(bounds_header() + "\n", 0) == 0);
  CHECK(text.find(",4.500000,") != std::string::npos);
}

TEST_CASE("sweep writes a tidy CSV and a chart") {
  const auto dir = temp_dir("sweep");
  CommandOptions opts;
  opts.config_path = write_config(dir, R"({
    "network": {"N": 2, "lambda": 0.5, "p": 0.8},
    "policy": {"name": "pomw"},
    "simulation": {"horizon": 300, "runs": 2},
    "sweep": {"parameter": "lambda", "values": [0.3, 0.6], "policies": ["pomw", "rr"]}
  })");
  opts.out_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(cmd_sweep(opts, out, err) == kOk);
  const auto csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind(tidy_header(), 0) == 0);
  CHECK(csv.find(",POMW,") != std::string::npos);
  CHECK(csv.find(",RR,") != std::string::npos);
  const auto svg = slurp(dir / "sweep.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("figure presets run at reduced scale") {
  FigureOptions fo;
  fo.runs = 1;
  fo.horizon = 200;
  for (const auto& name : figure_names()) {
    CAPTURE(name);
    const auto rows = run_figure(name, fo);
    CHECK_FALSE(rows.empty());
    for (const auto& r : rows) CHECK(r.figure == name);
  }
  CHECK_THROWS_AS((void)run_figure("fig2", fo), UnknownFigure);
}

TEST_CASE("chart rendering is deterministic") {
  std::vector<TidyRow> rows{{"f", "x", 1.0, "A", 2.0, 0.1, ""},
                            {"f", "x", 2.0, "A", 3.0, 0.1, ""},
                            {"f", "x", 1.0, "B", 1.0, 0.0, ""}};
  const auto csv = tidy_csv(rows);
  CHECK(render_svg_chart(csv, "t") == render_svg_chart(csv, "t"));
}
