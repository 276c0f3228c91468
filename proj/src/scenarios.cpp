#include "cqed/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cqed/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqed {
namespace {

struct RawEntry {
  std::string value;
  int line = 0;
};
using RawDoc = std::map<std::string, RawEntry>;

const std::set<std::string> kCommonKeys = {
    "model",        "hbar",          "omega",  "gamma",      "dt",         "t_max",
    "sample_every", "renormalize",   "positivity_tolerance", "measures", "measured_side", "output", "sweep_axis",
    "sweep_values", "output_dir"};
const std::set<std::string> kJcmKeys = {"g", "alpha"};
const std::set<std::string> kOhPlusKeys = {"omega_b", "g_b0", "g_b1", "g_a0", "g_a1",
                                           "bond_convention"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ConfigError("unterminated list '" + text + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty list element in '" + text + "'");
    items.push_back(item);
  }
  return items;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RawDoc tokenize(const std::string& text) {
  RawDoc doc;
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": missing key");
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(number) + ": key '" + key + "' has no value");
    }
    if (!kCommonKeys.contains(key) && !kJcmKeys.contains(key) && !kOhPlusKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (doc.contains(key)) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    doc[key] = {value, number};
  }
  return doc;
}

std::string context(const RawDoc& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) return "key '" + key + "'";
  return "line " + std::to_string(it->second.line) + " (key '" + key + "')";
}

class Resolver {
 public:
  explicit Resolver(const RawDoc& doc) : doc_(doc) { symbols_["pi"] = std::numbers::pi; }

  bool has(const std::string& key) const { return doc_.contains(key); }

  /// Numeric value of key (or fallback), registered as a symbol.
  double number(const std::string& key, double fallback) {
    double value = fallback;
    if (auto it = doc_.find(key); it != doc_.end()) {
      try {
        value = evaluate_expression(it->second.value, symbols_);
      } catch (const ConfigError& e) {
        throw ConfigError(context(doc_, key) + ": " + e.what());
      }
    }
    symbols_[key] = value;
    return value;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = doc_.find(key);
    return it == doc_.end() ? fallback : it->second.value;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    try {
      for (const auto& item : split_list(text(key, ""))) {
        out.push_back(evaluate_expression(item, symbols_));
      }
    } catch (const ConfigError& e) {
      throw ConfigError(context(doc_, key) + ": " + e.what());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(context(doc_, key) + ": " + what);
  }

 private:
  const RawDoc& doc_;
  std::map<std::string, double> symbols_;
};

bool parse_bool(Resolver& r, const std::string& key, bool fallback) {
  const std::string v = r.text(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  r.fail(key, "expected a boolean, got '" + v + "'");
}

Measure parse_measure(Resolver& r, const std::string& name) {
  if (name == "entropy") return Measure::Entropy;
  if (name == "concurrence") return Measure::Concurrence;
  if (name == "mutual_info") return Measure::MutualInfo;
  if (name == "classical_corr") return Measure::ClassicalCorr;
  if (name == "discord") return Measure::Discord;
  r.fail("measures", "unknown measure '" + name + "'");
}

ScenarioConfig resolve(const RawDoc& doc) {
  Resolver r(doc);
  ScenarioConfig cfg;

  const std::string model = r.text("model", "");
  if (model == "jcm") {
    cfg.model = ModelKind::Jcm;
  } else if (model == "ohplus") {
    cfg.model = ModelKind::OhPlus;
  } else if (model.empty()) {
    throw ConfigError("missing required key 'model' (jcm or ohplus)");
  } else {
    r.fail("model", "expected 'jcm' or 'ohplus', got '" + model + "'");
  }
  const bool jcm = cfg.model == ModelKind::Jcm;
  for (const auto& [key, entry] : doc) {
    if ((jcm && kOhPlusKeys.contains(key)) || (!jcm && kJcmKeys.contains(key))) {
      r.fail(key, "not applicable to model '" + model + "'");
    }
  }

  const double hbar = r.number("hbar", 1.0);
  double gamma = 0.0;
  if (jcm) {
    JcmParams& p = cfg.jcm;
    p.hbar = hbar;
    p.omega = r.number("omega", 1e8);
    p.g = r.number("g", 1e6);
    p.gamma = gamma = r.number("gamma", 0.0);
    p.alpha = r.number("alpha", 0.0);
  } else {
    OhPlusParams& p = cfg.ohplus;
    p.hbar = hbar;
    p.omega = r.number("omega", 1e9);
    p.omega_b = r.number("omega_b", 1e8);
    p.g_b0 = r.number("g_b0", 1e4);
    p.g_b1 = r.number("g_b1", 100 * p.g_b0);
    p.g_a1 = r.number("g_a1", 2 * p.g_b1);
    p.g_a0 = r.number("g_a0", 100 * p.g_a1);
    p.gamma = gamma = r.number("gamma", p.g_a1);
    const std::string bond = r.text("bond_convention", "break_raises");
    if (bond == "break_raises") {
      p.bond = BondConvention::BreakRaises;
    } else if (bond == "break_lowers") {
      p.bond = BondConvention::BreakLowers;
    } else {
      r.fail("bond_convention", "expected 'break_raises' or 'break_lowers'");
    }
  }

  ModelSystem built;
  try {
    built = build_model(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid model parameters: ") + e.what());
  }

  IntegrationConfig& ic = cfg.integration;
  ic.hbar = hbar;
  ic.dt = r.number("dt", default_dt(built, hbar));
  double default_t_max = 10 * std::numbers::pi * hbar / std::max(built.max_coupling, 1e-300);
  if (!jcm && gamma > 0) default_t_max = 20 * hbar / gamma;
  ic.t_max = r.number("t_max", default_t_max);
  ic.renormalize = parse_bool(r, "renormalize", true);
  ic.positivity_tolerance = r.number("positivity_tolerance", ic.positivity_tolerance);
  if (!(ic.dt > 0) || !std::isfinite(ic.t_max / ic.dt) || ic.t_max / ic.dt > 1e8) {
    throw ConfigError("invalid integration settings: t_max/dt must be finite and <= 1e8 steps");
  }
  const std::size_t steps = step_count(ic);
  const double stride = r.number("sample_every", std::max<double>(1.0, std::floor(steps / 500.0)));
  if (!(stride >= 1) || stride != std::floor(stride)) {
    r.fail("sample_every", "must be a positive integer");
  }
  ic.sample_every = static_cast<std::size_t>(stride);
  try {
    validate(ic, built);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid integration settings: ") + e.what());
  }

  const std::string side = r.text("measured_side", "A");
  if (side == "A") {
    cfg.measured_side = Side::A;
  } else if (side == "B") {
    cfg.measured_side = Side::B;
  } else {
    r.fail("measured_side", "expected 'A' or 'B'");
  }

  if (r.has("measures") && r.text("measures", "") != "all") {
    for (const auto& name : split_list(r.text("measures", ""))) {
      cfg.measures.insert(parse_measure(r, name));
    }
  } else {
    cfg.measures = {Measure::Entropy, Measure::MutualInfo, Measure::ClassicalCorr,
                    Measure::Discord};
    if (jcm) cfg.measures.insert(Measure::Concurrence);
  }
  if (!jcm && cfg.measures.contains(Measure::Concurrence)) {
    r.fail("measures", "concurrence is defined for the two-qubit model only");
  }
  const bool needs_qubit_side =
      cfg.measures.contains(Measure::ClassicalCorr) || cfg.measures.contains(Measure::Discord);
  if (!jcm && needs_qubit_side && cfg.measured_side == Side::B) {
    r.fail("measured_side", "subsystem B of the OH+ model is not a qubit; measure A");
  }

  cfg.output = r.text("output", "trajectory.csv");
  return cfg;
}

SweepAxis parse_axis(const RawDoc& doc) {
  const std::string axis = doc.at("sweep_axis").value;
  if (axis == "alpha") return SweepAxis::Alpha;
  if (axis == "gamma") return SweepAxis::Gamma;
  throw ConfigError(context(doc, "sweep_axis") + ": expected 'alpha' or 'gamma'");
}

RawDoc with_axis_value(RawDoc doc, SweepAxis axis, double value) {
  const std::string key = to_string(axis);
  const int line = doc.contains("sweep_values") ? doc.at("sweep_values").line : 0;
  doc[key] = {format_number(value), line};
  doc.erase("sweep_axis");
  doc.erase("sweep_values");
  return doc;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void append_optional(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += fmt(*v);
}

}  // namespace

std::string to_string(SweepAxis axis) { return axis == SweepAxis::Alpha ? "alpha" : "gamma"; }

double evaluate_expression(const std::string& expr, const std::map<std::string, double>& symbols) {
  const std::string text = trim(expr);
  if (text.empty()) throw ConfigError("empty expression");
  double result = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find_first_of("*/", pos);
    // An exponent sign inside a number literal is not an operator; '*' and
    // '/' never appear in literals so a plain search is enough.
    const std::string factor = trim(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (factor.empty()) throw ConfigError("malformed expression '" + text + "'");

    std::string body = factor;
    double sign = 1.0;
    if (body.front() == '-' || body.front() == '+') {
      if (body.front() == '-') sign = -1.0;
      body = trim(body.substr(1));
    }
    double value = 1.0;
    const char* begin = body.c_str();
    char* end = nullptr;
    if (!body.empty() && (std::isdigit(static_cast<unsigned char>(body.front())) || body.front() == '.')) {
      value = std::strtod(begin, &end);
      body = trim(std::string(end));
    }
    if (!body.empty()) {
      auto it = symbols.find(body);
      if (it == symbols.end()) throw ConfigError("unknown symbol '" + body + "' in '" + text + "'");
      value *= it->second;
    }
    value *= sign;
    if (op == '*') {
      result *= value;
    } else {
      if (value == 0.0) throw ConfigError("division by zero in '" + text + "'");
      result /= value;
    }
    if (next == std::string::npos) break;
    op = text[next];
    pos = next + 1;
  }
  if (!std::isfinite(result)) throw ConfigError("non-finite value '" + text + "'");
  return result;
}

ParsedConfig parse_config(const std::string& text) {
  const RawDoc doc = tokenize(text);
  if (!doc.contains("sweep_axis")) {
    if (doc.contains("sweep_values")) throw ConfigError(context(doc, "sweep_values") + ": requires sweep_axis");
    return resolve(doc);
  }

  SweepConfig sweep;
  sweep.axis = parse_axis(doc);
  if (!doc.contains("sweep_values")) throw ConfigError("sweep requires 'sweep_values'");
  RawDoc base_doc = doc;
  base_doc.erase("sweep_axis");
  base_doc.erase("sweep_values");
  sweep.base = resolve(base_doc);
  if (sweep.axis == SweepAxis::Alpha && sweep.base.model != ModelKind::Jcm) {
    throw ConfigError(context(doc, "sweep_axis") + ": alpha applies to the jcm model only");
  }
  if (doc.contains(to_string(sweep.axis))) {
    throw ConfigError(context(doc, to_string(sweep.axis)) + ": conflicts with sweep_axis");
  }

  // Values may reference model symbols such as g.
  std::map<std::string, double> symbols = {{"pi", std::numbers::pi}};
  if (sweep.base.model == ModelKind::Jcm) {
    const auto& p = sweep.base.jcm;
    symbols.insert({{"hbar", p.hbar}, {"omega", p.omega}, {"g", p.g}});
  } else {
    const auto& p = sweep.base.ohplus;
    symbols.insert({{"hbar", p.hbar}, {"omega", p.omega}, {"omega_b", p.omega_b},
                    {"g_b0", p.g_b0}, {"g_b1", p.g_b1}, {"g_a0", p.g_a0}, {"g_a1", p.g_a1}});
  }
  try {
    for (const auto& item : split_list(doc.at("sweep_values").value)) {
      sweep.values.push_back(evaluate_expression(item, symbols));
    }
  } catch (const ConfigError& e) {
    throw ConfigError(context(doc, "sweep_values") + ": " + e.what());
  }
  if (sweep.values.empty()) throw ConfigError(context(doc, "sweep_values") + ": no values");

  for (const auto& [key, entry] : doc) sweep.raw[key] = entry.value;
  for (double v : sweep.values) {
    try {
      (void)resolve(with_axis_value(doc, sweep.axis, v));
    } catch (const ConfigError& e) {
      throw ConfigError("sweep value " + fmt(v) + ": " + e.what());
    }
  }
  if (auto it = doc.find("output_dir"); it != doc.end()) sweep.output_dir = it->second.value;
  return sweep;
}

ParsedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ModelSystem build_model(const ScenarioConfig& cfg) {
  return cfg.model == ModelKind::Jcm ? build_jcm(cfg.jcm) : build_ohplus(cfg.ohplus);
}

DensityMatrix initial_state(const ScenarioConfig& cfg) {
  return cfg.model == ModelKind::Jcm ? initial_state_jcm(cfg.jcm.alpha) : initial_state_ohplus();
}

SampleMeasures evaluate_measures(const DensityMatrix& sample, const std::set<Measure>& which,
                                 Side measured, double positivity_tolerance) {
  DensityTolerances tol;
  tol.min_eigenvalue = -positivity_tolerance;
  check_density(sample, tol);
  // Splitting error can leave small negative eigenvalues; the measures see
  // the closest valid state instead.
  const DensityMatrix rho = nearest_state(sample);
  SampleMeasures m;
  m.measured = measured;
  if (which.contains(Measure::Discord)) {
    const CorrelationReport r = discord(rho, measured);
    m.s_a = r.s_a;
    m.s_b = r.s_b;
    m.s_ab = r.s_ab;
    m.mutual_info = r.mutual_info;
    m.classical_corr = r.classical_corr;
    m.discord = r.discord;
    if (which.contains(Measure::Concurrence)) m.concurrence = r.concurrence;
    return m;
  }
  if (which.contains(Measure::Entropy) || which.contains(Measure::MutualInfo)) {
    m.s_a = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::A));
    m.s_b = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::B));
    m.s_ab = von_neumann_entropy(rho.matrix);
    if (which.contains(Measure::MutualInfo)) m.mutual_info = *m.s_a + *m.s_b - *m.s_ab;
  }
  if (which.contains(Measure::ClassicalCorr)) m.classical_corr = classical_correlation(rho, measured).bits;
  if (which.contains(Measure::Concurrence)) m.concurrence = concurrence(rho);
  return m;
}

std::vector<SampleMeasures> evaluate_trajectory_serial(const TrajectoryRecord& record,
                                                       const std::set<Measure>& which,
                                                       Side measured, double positivity_tolerance) {
  std::vector<SampleMeasures> out;
  out.reserve(record.states.size());
  for (std::size_t i = 0; i < record.states.size(); ++i) {
    try {
      out.push_back(evaluate_measures(record.states[i], which, measured, positivity_tolerance));
    } catch (const std::exception& e) {
      throw InvariantError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SampleMeasures> evaluate_trajectory(const TrajectoryRecord& record,
                                                const std::set<Measure>& which, Side measured,
                                                double positivity_tolerance) {
#ifdef _OPENMP
  const long long n = static_cast<long long>(record.states.size());
  std::vector<SampleMeasures> out(record.states.size());
  long long first_failure = n;
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          evaluate_measures(record.states[static_cast<std::size_t>(i)], which, measured,
                            positivity_tolerance);
    } catch (const std::exception& e) {
#pragma omp critical(cqed_trajectory_failure)
      if (i < first_failure) {
        first_failure = i;
        failure = e.what();
      }
    }
  }
  if (first_failure < n) {
    throw InvariantError("sample " + std::to_string(first_failure) + ": " + failure);
  }
  return out;
#else
  return evaluate_trajectory_serial(record, which, measured, positivity_tolerance);
#endif
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  result.model = build_model(cfg);
  result.record = evolve(initial_state(cfg), result.model, cfg.integration);
  result.measures = evaluate_trajectory(result.record, cfg.measures, cfg.measured_side,
                                        cfg.integration.positivity_tolerance);
  return result;
}

std::string csv_header(const std::vector<std::string>& basis_labels) {
  std::string header = "t";
  for (const auto& label : basis_labels) header += "," + label;
  header += ",S_A,S_B,S_AB,concurrence,mutual_info,classical_corr,discord";
  return header;
}

std::string measures_violation(const SampleMeasures& m) {
  std::ostringstream msg;
  if (m.mutual_info && m.s_a && m.s_b && m.s_ab &&
      std::abs(*m.mutual_info - (*m.s_a + *m.s_b - *m.s_ab)) > 1e-9) {
    msg << "mutual_info inconsistent with entropies";
  } else if (m.discord && m.mutual_info && m.classical_corr &&
             std::abs(*m.discord - (*m.mutual_info - *m.classical_corr)) > 1e-9) {
    msg << "discord inconsistent with mutual_info - classical_corr";
  } else if (m.discord && *m.discord < -1e-7) {
    msg << "negative discord " << *m.discord;
  } else if (m.discord && m.s_a && m.s_b &&
             *m.discord > (m.measured == Side::A ? *m.s_a : *m.s_b) + 1e-6) {
    msg << "discord exceeds the entropy of the measured side";
  } else if (m.concurrence && (*m.concurrence < 0.0 || *m.concurrence > 1.0 + 1e-9)) {
    msg << "concurrence outside [0, 1]";
  }
  return msg.str();
}

std::string format_csv(const TrajectoryRecord& record, const std::vector<SampleMeasures>& measures,
                       const std::vector<std::string>& basis_labels) {
  if (measures.size() != record.times.size() || record.populations.size() != record.times.size()) {
    throw DimensionError("write_csv: record and measure lengths differ");
  }
  std::string out = csv_header(basis_labels) + "\n";
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    const auto& pops = record.populations[i];
    if (pops.size() != basis_labels.size()) throw DimensionError("write_csv: population width mismatch");
    double sum = 0.0;
    for (double p : pops) sum += p;
    if (std::abs(sum - 1.0) > 1e-6) {
      throw InvariantError("row " + std::to_string(i) + ": populations sum to " + fmt(sum));
    }
    if (auto why = measures_violation(measures[i]); !why.empty()) {
      throw InvariantError("row " + std::to_string(i) + ": " + why);
    }
    std::string line = fmt(record.times[i]);
    for (double p : pops) line += "," + fmt(p);
    const auto& m = measures[i];
    for (const auto* v : {&m.s_a, &m.s_b, &m.s_ab, &m.concurrence, &m.mutual_info,
                          &m.classical_corr, &m.discord}) {
      append_optional(line, *v);
    }
    out += line + "\n";
  }
  return out;
}

void write_csv(const TrajectoryRecord& record, const std::vector<SampleMeasures>& measures,
               const std::vector<std::string>& basis_labels, const std::filesystem::path& path) {
  const std::string content = format_csv(record, measures, basis_labels);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::optional<double> settle_time(const TrajectoryRecord& record,
                                  const std::vector<SampleMeasures>& measures, double threshold) {
  if (measures.empty() || measures.size() != record.times.size()) return std::nullopt;
  std::size_t settled = measures.size();
  for (std::size_t i = measures.size(); i-- > 0;) {
    if (!measures[i].discord) return std::nullopt;
    if (*measures[i].discord >= threshold) break;
    settled = i;
  }
  if (settled == measures.size()) return std::nullopt;
  return record.times[settled];
}

std::vector<SweepRun> run_sweep(const SweepConfig& cfg) {
  RawDoc doc;
  for (const auto& [key, value] : cfg.raw) doc[key] = {value, 0};

  const long long n = static_cast<long long>(cfg.values.size());
  std::vector<SweepRun> runs(cfg.values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long long i = 0; i < n; ++i) {
    SweepRun& run = runs[static_cast<std::size_t>(i)];
    run.value = cfg.values[static_cast<std::size_t>(i)];
    try {
      ScenarioConfig one;
      if (!doc.empty()) {
        one = resolve(with_axis_value(doc, cfg.axis, run.value));
      } else {
        // Programmatic sweep without a source document: override in place.
        one = cfg.base;
        if (cfg.axis == SweepAxis::Alpha) {
          one.jcm.alpha = run.value;
        } else if (one.model == ModelKind::Jcm) {
          one.jcm.gamma = run.value;
        } else {
          one.ohplus.gamma = run.value;
        }
      }
      ScenarioResult result = run_scenario(one);
      for (const auto& m : result.measures) {
        if (m.discord) run.min_discord = std::min(run.min_discord.value_or(*m.discord), *m.discord);
      }
      run.time_to_settle = settle_time(result.record, result.measures, kDiscordSettleThreshold);
      run.result = std::move(result);
    } catch (const std::exception& e) {
      run.error = e.what();
    }
  }
  return runs;
}

void write_sweep(const SweepConfig& cfg, const std::vector<SweepRun>& runs) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create '" + cfg.output_dir.string() + "': " + ec.message());

  std::string summary = to_string(cfg.axis) + ",min_discord,time_to_discord_below_0.01,status\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SweepRun& run = runs[i];
    if (run.result) {
      char name[32];
      std::snprintf(name, sizeof name, "run_%03zu.csv", i);
      write_csv(run.result->record, run.result->measures, run.result->model.basis_labels,
                cfg.output_dir / name);
    }
    std::string line = fmt(run.value);
    append_optional(line, run.min_discord);
    append_optional(line, run.time_to_settle);
    std::string status = run.error.empty() ? "ok" : "error: " + run.error;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    summary += line + "," + status + "\n";
  }
  const auto path = cfg.output_dir / "summary.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << summary;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace cqed
