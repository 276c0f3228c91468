#include "cqed/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr double kAngleSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite(double x) { return std::isfinite(x); }

ComplexMatrix factor_projector(std::size_t level) {
  return ComplexMatrix::unit(2, level, level);
}

std::vector<std::string> labels(std::size_t n_qubits) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < (std::size_t{1} << n_qubits); ++i)
    out.push_back(basis_label(i, n_qubits));
  return out;
}

}  // namespace

void validate(const JcmParams& p) {
  require(finite(p.hbar) && p.hbar > 0, "hbar must be > 0");
  require(finite(p.omega) && p.omega > 0, "omega must be > 0");
  require(finite(p.g) && p.g >= 0, "g must be >= 0");
  require(finite(p.gamma) && p.gamma >= 0, "gamma must be >= 0");
  require(finite(p.alpha) && p.alpha >= -kAngleSlack &&
              p.alpha <= std::numbers::pi / 4 + kAngleSlack,
          "alpha must lie in [0, pi/4]");
}

std::vector<std::string> validate(const OhPlusParams& p) {
  require(finite(p.hbar) && p.hbar > 0, "hbar must be > 0");
  require(finite(p.omega) && p.omega > 0, "omega must be > 0");
  require(finite(p.omega_b) && p.omega_b > 0, "omega_b must be > 0");
  for (auto [name, value] : {std::pair{"g_b0", p.g_b0}, std::pair{"g_b1", p.g_b1},
                             std::pair{"g_a0", p.g_a0}, std::pair{"g_a1", p.g_a1}}) {
    require(finite(value) && value >= 0, std::string(name) + " must be >= 0");
  }
  require(finite(p.gamma) && p.gamma >= 0, "gamma must be >= 0");

  std::vector<std::string> warnings;
  if (!(p.g_b1 > p.g_b0)) warnings.emplace_back("expected g_b1 >> g_b0 (excited orbital bonds more easily)");
  if (!(p.g_a0 > p.g_a1)) warnings.emplace_back("expected g_a0 >> g_a1 (near nuclei couple more strongly)");
  return warnings;
}

ModelSystem build_jcm(const JcmParams& p) {
  validate(p);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix a = kron(pauli::lowering(), id);
  const ComplexMatrix s = kron(id, pauli::lowering());
  const ComplexMatrix a_dag = a.adjoint();
  const ComplexMatrix s_dag = s.adjoint();

  ComplexMatrix h = (p.hbar * p.omega) * (a_dag * a);
  h += (p.hbar * p.omega) * (s_dag * s);
  h += p.g * (a_dag * s + a * s_dag);

  ModelSystem m;
  m.kind = ModelKind::Jcm;
  m.dim = 4;
  m.hamiltonian = std::move(h);
  m.jumps.push_back({a, p.gamma});
  m.split = {2, 2};
  m.basis_labels = labels(2);
  m.max_coupling = p.g;
  return m;
}

ModelSystem build_ohplus(const OhPlusParams& p) {
  auto warnings = validate(p);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix lower = pauli::lowering();

  // Factors: photon (p) x molecular orbital (l) x nuclear configuration (k).
  const ComplexMatrix a = kron(kron(lower, id), id);
  const ComplexMatrix s_a = kron(kron(id, lower), id);
  const ComplexMatrix bond_flip =
      p.bond == BondConvention::BreakRaises ? lower.adjoint() : lower;  // sigma_b on k
  const ComplexMatrix s_b = kron(kron(id, id), bond_flip);

  ComplexMatrix h = (p.hbar * p.omega) * (a.adjoint() * a);
  h += (p.hbar * p.omega_b) * (s_b.adjoint() * s_b);
  h += (p.hbar * p.omega) * (s_a.adjoint() * s_a);

  const ComplexMatrix bond_term = s_b + s_b.adjoint();
  const ComplexMatrix field_term = a.adjoint() * s_a + a * s_a.adjoint();
  const double g_b[2] = {p.g_b0, p.g_b1};
  const double g_a[2] = {p.g_a0, p.g_a1};
  for (std::size_t level = 0; level < 2; ++level) {
    const ComplexMatrix orbital = kron(kron(id, factor_projector(level)), id);
    const ComplexMatrix nuclear = kron(kron(id, id), factor_projector(level));
    h += g_b[level] * (bond_term * orbital);
    h += g_a[level] * (field_term * nuclear);
  }

  ModelSystem m;
  m.kind = ModelKind::OhPlus;
  m.dim = 8;
  m.hamiltonian = std::move(h);
  m.jumps.push_back({a, p.gamma});
  m.split = {2, 4};
  m.basis_labels = labels(3);
  m.max_coupling = std::max({p.g_b0, p.g_b1, p.g_a0, p.g_a1});
  m.warnings = std::move(warnings);
  return m;
}

DensityMatrix initial_state_jcm(double alpha) {
  require(std::isfinite(alpha) && alpha >= -kAngleSlack &&
              alpha <= std::numbers::pi / 4 + kAngleSlack,
          "alpha must lie in [0, pi/4]");
  const std::vector<Complex> psi = {0.0, std::cos(alpha), std::sin(alpha), 0.0};
  return make_density(ComplexMatrix::projector(psi), {2, 2});
}

DensityMatrix initial_state_ohplus() {
  return make_density(ComplexMatrix::unit(8, basis_index("101"), basis_index("101")), {2, 4});
}

std::string basis_label(std::size_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t bit = 0; bit < n_qubits; ++bit)
    if ((index >> bit) & 1U) s[n_qubits - 1 - bit] = '1';
  return s;
}

std::size_t basis_index(const std::string& label) {
  require(!label.empty() && label.size() < 32 &&
              std::all_of(label.begin(), label.end(), [](char c) { return c == '0' || c == '1'; }),
          "malformed basis label '" + label + "'");
  std::size_t index = 0;
  for (char c : label) index = (index << 1) | static_cast<std::size_t>(c - '0');
  return index;
}

bool RwaReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const RwaEntry& e) { return e.ok; });
}

namespace {
RwaEntry rwa_entry(std::string name, double coupling, double hbar, double omega) {
  const double ratio = coupling / (hbar * omega);
  return {std::move(name), ratio, ratio <= kRwaThreshold};
}
}  // namespace

RwaReport check_rwa(const JcmParams& p) {
  return {{rwa_entry("g/(hbar*omega)", p.g, p.hbar, p.omega)}};
}

RwaReport check_rwa(const OhPlusParams& p) {
  return {{rwa_entry("g_a0/(hbar*omega)", p.g_a0, p.hbar, p.omega),
           rwa_entry("g_a1/(hbar*omega)", p.g_a1, p.hbar, p.omega),
           rwa_entry("g_b0/(hbar*omega_b)", p.g_b0, p.hbar, p.omega_b),
           rwa_entry("g_b1/(hbar*omega_b)", p.g_b1, p.hbar, p.omega_b)}};
}

}  // namespace cqed
