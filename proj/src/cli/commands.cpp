#include "aoisched/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "aoisched/cli/chart.hpp"
#include "aoisched/cli/figures.hpp"
#include "aoisched/cli/report.hpp"

namespace aoisched::cli {

namespace fs = std::filesystem;

namespace {

// Maps exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnknownFigure& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

ConfigDocument load_with_overrides(const CommandOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("", "--config is required");
  auto doc = load_config(opts.config_path);
  apply_overrides(doc.experiment, opts.overrides);
  try {
    doc.experiment.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("", e.what());
  }
  return doc;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

// Writes <stem>.csv and a chart rendered from that same CSV text.
void write_tidy(const fs::path& dir, const std::string& stem, const std::string& title,
                const std::vector<TidyRow>& rows, std::ostream& out) {
  const auto csv = tidy_csv(rows);
  const auto csv_path = dir / (stem + ".csv");
  const auto svg_path = dir / (stem + ".svg");
  write_file(csv_path, csv);
  write_file(svg_path, render_svg_chart(csv, title));
  out << csv_path.string() << '\n' << svg_path.string() << '\n';
}

std::string resolve_dir(const CommandOptions& opts, const std::string& fallback) {
  if (!opts.out_dir.empty()) return opts.out_dir;
  return fallback.empty() ? "." : fallback;
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_with_overrides(opts);
    const auto metrics = run_monte_carlo(doc.experiment);
    const auto csv = simulate_header() + "\n" + simulate_row(doc.experiment, metrics) + "\n";
    out << csv;
    if (!opts.out_dir.empty() || !doc.output_dir.empty()) {
      write_file(fs::path(resolve_dir(opts, doc.output_dir)) / "simulate.csv", csv);
    }
    return kOk;
  });
}

int cmd_bounds(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_with_overrides(opts);
    const auto& cfg = doc.experiment;
    if (cfg.arrivals.kind != ArrivalKind::Bernoulli) {
      throw ConfigError("arrival.model", "bounds are only available for Bernoulli arrivals");
    }
    if (cfg.randomize) {
      throw ConfigError("randomize", "bounds need fixed node parameters");
    }
    const auto csv =
        bounds_header() + "\n" + bounds_row(cfg.nodes, bound_report(cfg.nodes)) + "\n";
    out << csv;
    if (!opts.out_dir.empty() || !doc.output_dir.empty()) {
      write_file(fs::path(resolve_dir(opts, doc.output_dir)) / "bounds.csv", csv);
    }
    return kOk;
  });
}

int cmd_figure(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FigureOptions fo;
    fo.runs = opts.overrides.runs;
    fo.horizon = opts.overrides.horizon;
    if (opts.overrides.seed) fo.seed = *opts.overrides.seed;
    if (opts.overrides.parallel) fo.parallel = *opts.overrides.parallel;
    if (fo.runs == std::uint64_t{0} || fo.horizon == std::uint64_t{0}) {
      throw ConfigError("", "--runs and --horizon must be positive");
    }
    const auto rows = run_figure(opts.figure, fo);
    write_tidy(resolve_dir(opts, ""), opts.figure, opts.figure, rows, out);
    return kOk;
  });
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_with_overrides(opts);
    if (!doc.sweep) throw ConfigError("sweep", "missing required field");
    const auto rows = run_sweep(doc);
    write_tidy(resolve_dir(opts, doc.output_dir), "sweep",
               "sweep over " + doc.sweep->parameter, rows, out);
    return kOk;
  });
}

int cmd_validate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_with_overrides(opts);
    out << "ok: " << describe(doc.experiment) << " policy=" << to_string(doc.experiment.policy.kind);
    if (doc.sweep) out << " sweep=" << doc.sweep->parameter << "[" << doc.sweep->values.size() << "]";
    out << '\n';
    return kOk;
  });
}

}  // namespace aoisched::cli
