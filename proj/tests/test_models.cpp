#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "cqed/errors.hpp"
#include "cqed/models.hpp"
#include "doctest.h"

using namespace cqed;

namespace {

// Matrix elements built by enumerating occupation numbers directly. Each
// basis index is decoded into its bits and the allowed single-excitation
// transitions are written out one by one.
struct Occupation {
  int p, l, k;
};

Occupation decode3(std::size_t i) { return {int(i >> 2) & 1, int(i >> 1) & 1, int(i) & 1}; }

ComplexMatrix enumerate_jcm(const JcmParams& p) {
  ComplexMatrix h(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const int photon = int(i >> 1), electron = int(i & 1);
    h(i, i) = p.hbar * p.omega * (photon + electron);
  }
  // a^dag s: |0 1> -> |1 0>, a s^dag: |1 0> -> |0 1>
  h(2, 1) = p.g;
  h(1, 2) = p.g;
  return h;
}

ComplexMatrix enumerate_ohplus(const OhPlusParams& p) {
  ComplexMatrix h(8);
  const int bound_k = p.bond == BondConvention::BreakRaises ? 0 : 1;
  for (std::size_t i = 0; i < 8; ++i) {
    const auto [ph, l, k] = decode3(i);
    h(i, i) = p.hbar * p.omega * ph + p.hbar * p.omega * l + (k == bound_k ? p.hbar * p.omega_b : 0.0);
    for (std::size_t j = 0; j < 8; ++j) {
      const auto [ph2, l2, k2] = decode3(j);
      // bond flip on k, strength picked by the orbital l
      if (ph == ph2 && l == l2 && k != k2) h(i, j) += l == 0 ? p.g_b0 : p.g_b1;
      // photon <-> electron exchange, strength picked by the nuclear k
      if (k == k2 && ph != ph2 && l != l2 && ph + l == ph2 + l2) h(i, j) += k == 0 ? p.g_a0 : p.g_a1;
    }
  }
  return h;
}

ComplexMatrix number_operator_jcm() {
  return ComplexMatrix::diagonal(std::vector<double>{0, 1, 1, 2});
}

}  // namespace

TEST_CASE("JCM Hamiltonian entries") {
  const JcmParams p;
  const ModelSystem m = build_jcm(p);
  REQUIRE(m.dim == 4);
  CHECK(m.split.dim_a == 2);
  CHECK(m.split.dim_b == 2);
  CHECK(m.hamiltonian(1, 2) == Complex(1e6));
  CHECK(m.hamiltonian(2, 1) == Complex(1e6));
  CHECK(m.hamiltonian(0, 0) == Complex(0));
  CHECK(m.hamiltonian(3, 3) == Complex(2e8));
  CHECK(m.hamiltonian(1, 1) == Complex(1e8));
  CHECK(m.hamiltonian.approx_equal(enumerate_jcm(p), 0.0));
  CHECK(m.basis_labels == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(m.max_coupling == 1e6);
}

TEST_CASE("JCM enumeration agrees across parameters") {
  for (double hbar : {1.0, 1.054571817e-34})
    for (double g : {0.0, 0.3, 2.0}) {
      const JcmParams p{hbar, 3.0, g * hbar, 0.5, 0.1};
      CHECK(build_jcm(p).hamiltonian.approx_equal(enumerate_jcm(p), 1e-12 * hbar));
    }
}

TEST_CASE("JCM jump is a on the photon factor") {
  const ModelSystem m = build_jcm({1.0, 1e8, 1e6, 2.5e5, 0.0});
  REQUIRE(m.jumps.size() == 1);
  CHECK(m.jumps[0].rate == 2.5e5);
  const ComplexMatrix& a = m.jumps[0].op;
  CHECK(a(0, 2) == Complex(1));
  CHECK(a(1, 3) == Complex(1));
  // a annihilates every photon-vacuum state
  for (std::size_t col : {0u, 1u})
    for (std::size_t row = 0; row < 4; ++row) CHECK(a(row, col) == Complex(0));
}

TEST_CASE("JCM conserves excitation number") {
  for (double g : {0.0, 1e6, 5e7}) {
    const ModelSystem m = build_jcm({1.0, 1e8, g, 0.0, 0.0});
    const ComplexMatrix n = number_operator_jcm();
    const ComplexMatrix commutator = m.hamiltonian * n - n * m.hamiltonian;
    CHECK(commutator.frobenius_norm() == 0.0);
  }
}

TEST_CASE("OH+ Hamiltonian matches the enumeration") {
  const OhPlusParams p;
  const ModelSystem m = build_ohplus(p);
  REQUIRE(m.dim == 8);
  CHECK(m.split.dim_a == 2);
  CHECK(m.split.dim_b == 4);
  CHECK(m.hamiltonian.hermiticity_violation() <= 1e-12);
  CHECK(m.hamiltonian(basis_index("010"), basis_index("100")) == Complex(p.g_a0));
  CHECK(m.hamiltonian(basis_index("011"), basis_index("101")) == Complex(p.g_a1));
  CHECK(m.hamiltonian(basis_index("111"), basis_index("110")) == Complex(p.g_b1));
  CHECK(m.hamiltonian(basis_index("101"), basis_index("100")) == Complex(p.g_b0));
  CHECK(m.hamiltonian.approx_equal(enumerate_ohplus(p), 0.0));
  CHECK(m.max_coupling == p.g_a0);
  CHECK(m.basis_labels.front() == "000");
  CHECK(m.basis_labels.back() == "111");
}

TEST_CASE("OH+ bond convention only moves the omega_b diagonal") {
  OhPlusParams raises;
  OhPlusParams lowers;
  lowers.bond = BondConvention::BreakLowers;
  const ComplexMatrix diff = build_ohplus(raises).hamiltonian - build_ohplus(lowers).hamiltonian;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      if (i != j) {
        CHECK(diff(i, j) == Complex(0));
      } else {
        CHECK(std::abs(diff(i, i).real()) == doctest::Approx(raises.omega_b));
      }
    }
  CHECK(build_ohplus(lowers).hamiltonian.approx_equal(enumerate_ohplus(lowers), 0.0));
}

TEST_CASE("OH+ Hermitian across random admissible parameters") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    OhPlusParams p;
    p.omega = 1e9 * (0.5 + u(rng));
    p.omega_b = 1e8 * (0.5 + u(rng));
    p.g_b0 = 1e4 * u(rng);
    p.g_b1 = 1e6 * u(rng);
    p.g_a0 = 2e8 * u(rng);
    p.g_a1 = 2e6 * u(rng);
    p.gamma = 1e6 * u(rng);
    const ModelSystem m = build_ohplus(p);
    CHECK(m.hamiltonian.hermiticity_violation() <= 1e-12);
    CHECK(m.hamiltonian.approx_equal(enumerate_ohplus(p), 1e-6));
  }
}

TEST_CASE("OH+ jump is a on the photon factor") {
  OhPlusParams p;
  p.gamma = 7.0;
  const ModelSystem m = build_ohplus(p);
  REQUIRE(m.jumps.size() == 1);
  CHECK(m.jumps[0].rate == 7.0);
  for (std::size_t b = 0; b < 4; ++b) {
    CHECK(m.jumps[0].op(b, 4 + b) == Complex(1));
    for (std::size_t row = 0; row < 8; ++row) CHECK(m.jumps[0].op(row, b) == Complex(0));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_jcm({1.0, 0.0, 1.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(build_jcm({1.0, 1.0, -1.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(build_jcm({1.0, 1.0, 1.0, -1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(build_jcm({1.0, 1.0, 1.0, 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(build_jcm({0.0, 1.0, 1.0, 0.0, 0.0}), ConfigError);
  OhPlusParams bad;
  bad.omega_b = 0.0;
  CHECK_THROWS_AS(build_ohplus(bad), ConfigError);
  bad = {};
  bad.g_a1 = -1.0;
  CHECK_THROWS_AS(build_ohplus(bad), ConfigError);

  OhPlusParams inverted;
  inverted.g_a0 = inverted.g_a1 / 10;
  inverted.g_b1 = inverted.g_b0;
  CHECK(validate(inverted).size() == 2);
  CHECK(build_ohplus(inverted).warnings.size() == 2);
  CHECK(validate(OhPlusParams{}).empty());
}

TEST_CASE("initial states") {
  SUBCASE("alpha = 0") {
    const DensityMatrix rho = initial_state_jcm(0.0);
    CHECK(rho.matrix.approx_equal(ComplexMatrix::unit(4, 1, 1), 0.0));
  }
  SUBCASE("alpha = pi/4") {
    const DensityMatrix rho = initial_state_jcm(std::numbers::pi / 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const bool inside = (i == 1 || i == 2) && (j == 1 || j == 2);
        CHECK(std::abs(rho.matrix(i, j) - Complex(inside ? 0.5 : 0.0)) <= 1e-15);
      }
  }
  SUBCASE("alpha = pi/6 is pure with unit trace") {
    const DensityMatrix rho = initial_state_jcm(std::numbers::pi / 6);
    CHECK(std::abs(rho.matrix.trace() - 1.0) <= 1e-15);
    CHECK((rho.matrix * rho.matrix).approx_equal(rho.matrix, 1e-15));
  }
  SUBCASE("alpha outside [0, pi/4]") {
    CHECK_THROWS_AS(initial_state_jcm(1.0), ConfigError);
    CHECK_THROWS_AS(initial_state_jcm(-0.1), ConfigError);
  }
  SUBCASE("OH+ start |101>") {
    const DensityMatrix rho = initial_state_ohplus();
    CHECK(rho.matrix.approx_equal(ComplexMatrix::unit(8, 5, 5), 0.0));
    CHECK(partial_trace(rho, Side::A).matrix.approx_equal(ComplexMatrix::unit(2, 1, 1), 0.0));
    CHECK(rho.split.dim_b == 4);
  }
}

TEST_CASE("basis labels round-trip") {
  for (std::size_t n : {2u, 3u})
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) CHECK(basis_index(basis_label(i, n)) == i);
  CHECK(basis_label(5, 3) == "101");
  CHECK(basis_label(1, 2) == "01");
  CHECK_THROWS_AS(basis_index("12"), ConfigError);
  CHECK_THROWS_AS(basis_index(""), ConfigError);
}

TEST_CASE("RWA ratios") {
  const RwaReport jcm = check_rwa(JcmParams{});
  REQUIRE(jcm.entries.size() == 1);
  CHECK(jcm.entries[0].ratio == doctest::Approx(0.01));
  CHECK(jcm.ok());

  JcmParams strong;
  strong.g = strong.omega;
  CHECK_FALSE(check_rwa(strong).ok());

  // g_b0 = 1e4, g_b1 = 100 g_b0, g_a1 = 2 g_b1, g_a0 = 100 g_a1 = 2e8 against omega = 1e9
  const RwaReport oh = check_rwa(OhPlusParams{});
  REQUIRE(oh.entries.size() == 4);
  CHECK(oh.entries[0].ratio == doctest::Approx(0.2));
  CHECK_FALSE(oh.entries[0].ok);
  CHECK(oh.entries[1].ok);
  CHECK_FALSE(oh.ok());
  CHECK_NOTHROW(build_ohplus(OhPlusParams{}));
}
