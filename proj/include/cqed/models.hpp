#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cqed/density.hpp"
#include "cqed/matrix.hpp"

namespace cqed {

enum class ModelKind { Jcm, OhPlus };

struct JumpOperator {
  ComplexMatrix op;
  double rate = 0.0;  // s^-1
};

/// Hamiltonian, dissipation channels and basis labelling of a cavity model.
/// Subsystem A is always the photon factor.
struct ModelSystem {
  ModelKind kind = ModelKind::Jcm;
  std::size_t dim = 0;
  ComplexMatrix hamiltonian;
  std::vector<JumpOperator> jumps;
  Split split;
  std::vector<std::string> basis_labels;
  /// Largest coupling strength (energy units); used by the step-size guard.
  double max_coupling = 0.0;
  /// Non-fatal diagnostics raised while building (parameter regime).
  std::vector<std::string> warnings;
};

/// Jaynes-Cummings parameters, omega shared by atom and cavity.
struct JcmParams {
  double hbar = 1.0;
  double omega = 1e8;  // s^-1
  double g = 1e6;      // energy
  double gamma = 0.0;  // s^-1
  double alpha = 0.0;  // rad, initial-state angle in [0, pi/4]
};

/// Which nuclear configuration the bond operator sigma_b raises into.
/// BreakRaises: sigma_b = |k=1><k=0| ("breaking" near -> far), so the
/// omega_b energy sits on k = 0.
enum class BondConvention { BreakRaises, BreakLowers };

/// OH+ parameters. Couplings are state-conditional: g_b on the molecular
/// orbital l, g_a on the nuclear configuration k.
struct OhPlusParams {
  double hbar = 1.0;
  double omega = 1e9;    // s^-1, cavity = electronic transition
  double omega_b = 1e8;  // s^-1, bond/phonon
  double g_b0 = 1e4;
  double g_b1 = 1e6;
  double g_a0 = 2e8;
  double g_a1 = 2e6;
  double gamma = 2e6;  // s^-1, defaults to g_a1
  BondConvention bond = BondConvention::BreakRaises;
};

/// Throws ConfigError naming the violated constraint.
void validate(const JcmParams& p);
/// Throws ConfigError; returns regime warnings (g_b1 >> g_b0, g_a0 >> g_a1).
std::vector<std::string> validate(const OhPlusParams& p);

ModelSystem build_jcm(const JcmParams& p);
ModelSystem build_ohplus(const OhPlusParams& p);

/// cos(alpha)|01> + sin(alpha)|10>, as a projector.
DensityMatrix initial_state_jcm(double alpha);
/// |101>: one photon, molecular ground orbital, nuclei far apart.
DensityMatrix initial_state_ohplus();

/// Label ("01", "101", ...) for a basis index, photon digit first.
std::string basis_label(std::size_t index, std::size_t n_qubits);
/// Inverse of basis_label; throws ConfigError on malformed labels.
std::size_t basis_index(const std::string& label);

struct RwaEntry {
  std::string name;  // e.g. "g/(hbar*omega)"
  double ratio = 0.0;
  bool ok = true;
};

struct RwaReport {
  std::vector<RwaEntry> entries;
  bool ok() const;
};

/// Ratios above this flag an RWA-validity warning.
inline constexpr double kRwaThreshold = 0.1;

RwaReport check_rwa(const JcmParams& p);
RwaReport check_rwa(const OhPlusParams& p);

}  // namespace cqed
