#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cqed/measures.hpp"
#include "cqed/models.hpp"
#include "cqed/solver.hpp"

namespace cqed {

enum class Measure { Entropy, Concurrence, MutualInfo, ClassicalCorr, Discord };

/// One simulation run. Units: frequencies s^-1, times s, angles rad.
struct ScenarioConfig {
  ModelKind model = ModelKind::Jcm;
  JcmParams jcm;
  OhPlusParams ohplus;
  IntegrationConfig integration;
  std::set<Measure> measures;
  Side measured_side = Side::A;
  std::filesystem::path output = "trajectory.csv";
};

enum class SweepAxis { Alpha, Gamma };

struct SweepConfig {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::Gamma;
  std::vector<double> values;
  std::filesystem::path output_dir = "sweep_out";
  /// Raw key/value entries so that value-dependent defaults are re-derived
  /// for each run.
  std::map<std::string, std::string> raw;
};

using ParsedConfig = std::variant<ScenarioConfig, SweepConfig>;

/// Parses a flat `key = value` document. Throws ConfigError with line/key
/// context on malformed input, unknown keys or failed validation.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config(const std::filesystem::path& path);

/// Evaluates a value expression such as "0.5g", "pi/12", "1e-3*hbar/g".
double evaluate_expression(const std::string& expr, const std::map<std::string, double>& symbols);

/// Per-sample measures; unset fields were not requested.
struct SampleMeasures {
  std::optional<double> s_a, s_b, s_ab;
  std::optional<double> concurrence;
  std::optional<double> mutual_info;
  std::optional<double> classical_corr;
  std::optional<double> discord;
  Side measured = Side::A;
};

/// Empty when the sample's measures satisfy the report relations.
std::string measures_violation(const SampleMeasures& m);

struct ScenarioResult {
  ModelSystem model;
  TrajectoryRecord record;
  std::vector<SampleMeasures> measures;
};

ModelSystem build_model(const ScenarioConfig& cfg);
DensityMatrix initial_state(const ScenarioConfig& cfg);

/// Measures for one state, evaluated on nearest_state(rho). Throws
/// InvariantError if rho is not a density matrix, with eigenvalues down to
/// -positivity_tolerance accepted.
SampleMeasures evaluate_measures(const DensityMatrix& rho, const std::set<Measure>& which,
                                 Side measured, double positivity_tolerance = 1e-7);
/// Measures for every snapshot, parallel over samples.
std::vector<SampleMeasures> evaluate_trajectory(const TrajectoryRecord& record,
                                                const std::set<Measure>& which, Side measured,
                                                double positivity_tolerance = 1e-7);
/// Serial reference for evaluate_trajectory.
std::vector<SampleMeasures> evaluate_trajectory_serial(const TrajectoryRecord& record,
                                                       const std::set<Measure>& which,
                                                       Side measured,
                                                       double positivity_tolerance = 1e-7);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// CSV header for a model's basis labels.
std::string csv_header(const std::vector<std::string>& basis_labels);

/// Writes one row per sample; throws IoError on I/O failure and
/// InvariantError when a row violates the report relations.
void write_csv(const TrajectoryRecord& record, const std::vector<SampleMeasures>& measures,
               const std::vector<std::string>& basis_labels, const std::filesystem::path& path);
std::string format_csv(const TrajectoryRecord& record, const std::vector<SampleMeasures>& measures,
                       const std::vector<std::string>& basis_labels);

/// Earliest sample time after which discord stays below threshold.
std::optional<double> settle_time(const TrajectoryRecord& record,
                                  const std::vector<SampleMeasures>& measures, double threshold);

inline constexpr double kDiscordSettleThreshold = 0.01;

struct SweepRun {
  double value = 0.0;
  std::optional<ScenarioResult> result;
  std::string error;  // empty on success
  std::optional<double> min_discord;
  std::optional<double> time_to_settle;
};

/// Runs every sweep value; failures are recorded per run. Runs execute
/// concurrently when OpenMP is available.
std::vector<SweepRun> run_sweep(const SweepConfig& cfg);
/// Writes run_<i>.csv for each surviving run plus summary.csv.
void write_sweep(const SweepConfig& cfg, const std::vector<SweepRun>& runs);

std::string to_string(SweepAxis axis);

}  // namespace cqed
