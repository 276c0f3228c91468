// Command-line front end: run, sweep, plot, validate.
//
// Exit codes: 0 ok, 1 configuration error, 2 runtime invariant breach,
// 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "cqed/errors.hpp"
#include "cqed/plot.hpp"
#include "cqed/scenarios.hpp"

using namespace cqed;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kInvariant = 2, kIo = 3 };

RwaReport rwa_of(const ScenarioConfig& cfg) {
  return cfg.model == ModelKind::Jcm ? check_rwa(cfg.jcm) : check_rwa(cfg.ohplus);
}

void print_warnings(const ScenarioConfig& cfg, const ModelSystem& model) {
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& e : rwa_of(cfg).entries) {
    if (!e.ok) {
      std::fprintf(stderr, "warning: RWA validity: %s = %.4g exceeds %.2g\n", e.name.c_str(), e.ratio,
                   kRwaThreshold);
    }
  }
}

const char* model_name(ModelKind k) { return k == ModelKind::Jcm ? "jcm" : "ohplus"; }

void describe(const ScenarioConfig& cfg, const ModelSystem& model) {
  const auto& ic = cfg.integration;
  const std::size_t steps = step_count(ic);
  std::printf("model %s, dim %zu (%zu x %zu)\n", model_name(cfg.model), model.dim, model.split.dim_a,
              model.split.dim_b);
  std::printf("dt %.6g s, t_max %.6g s, %zu steps, %zu samples, g_max*dt/hbar %.3g\n", ic.dt, ic.t_max, steps,
              steps / ic.sample_every + 1, model.max_coupling * ic.dt / ic.hbar);
  for (const auto& e : rwa_of(cfg).entries) std::printf("%s = %.4g%s\n", e.name.c_str(), e.ratio, e.ok ? "" : " (warning)");
}


int cmd_validate(const std::string& path) {
  const ParsedConfig parsed = load_config(path);
  if (const auto* sweep = std::get_if<SweepConfig>(&parsed)) {
    const ModelSystem model = build_model(sweep->base);
    print_warnings(sweep->base, model);
    describe(sweep->base, model);
    std::printf("sweep over %s, %zu values\n", to_string(sweep->axis).c_str(), sweep->values.size());
  } else {
    const auto& cfg = std::get<ScenarioConfig>(parsed);
    const ModelSystem model = build_model(cfg);
    print_warnings(cfg, model);
    describe(cfg, model);
  }
  std::printf("ok\n");
  return kOk;
}

int cmd_run(const std::string& path, const std::string& output) {
  const ParsedConfig parsed = load_config(path);
  if (std::holds_alternative<SweepConfig>(parsed)) {
    throw ConfigError("'" + path + "' describes a sweep; use 'cqed sweep'");
  }
  ScenarioConfig cfg = std::get<ScenarioConfig>(parsed);
  if (!output.empty()) cfg.output = output;
  const ModelSystem model = build_model(cfg);
  print_warnings(cfg, model);
  const ScenarioResult result = run_scenario(cfg);
  write_csv(result.record, result.measures, result.model.basis_labels, cfg.output);
  std::printf("%zu samples written to %s\n", result.record.times.size(), cfg.output.string().c_str());
  std::printf("max trace drift before renormalisation %.3g, min eigenvalue %.3g\n",
              result.record.max_trace_drift, result.record.min_eigenvalue);
  return kOk;
}

int cmd_sweep(const std::string& path, const std::string& output_dir) {
  const ParsedConfig parsed = load_config(path);
  if (!std::holds_alternative<SweepConfig>(parsed)) {
    throw ConfigError("'" + path + "' has no sweep_axis/sweep_values; use 'cqed run'");
  }
  SweepConfig cfg = std::get<SweepConfig>(parsed);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  print_warnings(cfg.base, build_model(cfg.base));
  const auto runs = run_sweep(cfg);
  write_sweep(cfg, runs);
  int failed = 0;
  for (const auto& run : runs) {
    if (run.error.empty()) {
      std::printf("%s = %.6g: min discord %s, settles %s\n", to_string(cfg.axis).c_str(), run.value,
                  run.min_discord ? std::to_string(*run.min_discord).c_str() : "-",
                  run.time_to_settle ? std::to_string(*run.time_to_settle).c_str() : "never");
    } else {
      ++failed;
      std::fprintf(stderr, "%s = %.6g failed: %s\n", to_string(cfg.axis).c_str(), run.value, run.error.c_str());
    }
  }
  std::printf("summary written to %s\n", (cfg.output_dir / "summary.csv").string().c_str());
  return failed == 0 ? kOk : kInvariant;
}

int cmd_plot(const std::string& csv, const std::vector<std::string>& columns, const std::string& out) {
  render_plot(csv, columns, out);
  std::printf("plot written to %s\n", out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open cavity QED simulator: Jaynes-Cummings and OH+ models"};
  app.require_subcommand(1);

  std::string config, output, output_dir, csv, out;
  std::vector<std::string> columns;

  auto* run = app.add_subcommand("run", "Integrate one scenario and write its CSV trajectory");
  run->add_option("config", config, "Scenario configuration file")->required();
  run->add_option("-o,--output", output, "CSV path (overrides the config's output key)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write per-run CSVs plus summary.csv");
  sweep->add_option("config", config, "Sweep configuration file")->required();
  sweep->add_option("-o,--output-dir", output_dir, "Output directory (overrides output_dir)");

  auto* plot = app.add_subcommand("plot", "Render CSV columns against time as SVG");
  plot->add_option("csv", csv, "Trajectory CSV")->required();
  plot->add_option("--columns", columns, "Comma-separated column names")->required()->delimiter(',');
  plot->add_option("--out", out, "Output SVG path")->required();

  auto* validate = app.add_subcommand("validate", "Parse and check a configuration without running it");
  validate->add_option("config", config, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config, output);
    if (*sweep) return cmd_sweep(config, output_dir);
    if (*plot) return cmd_plot(csv, columns, out);
    if (*validate) return cmd_validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
  return kOk;
}
