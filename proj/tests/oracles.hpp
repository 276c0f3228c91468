#pragma once

// Test-only reference routines. Nothing here calls into the library's
// eigen solver, measurement kernel or integrator.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cqed/density.hpp"
#include "cqed/matrix.hpp"

namespace oracle {

using cqed::Complex;
using cqed::ComplexMatrix;
using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix& m) {
  EMat out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const EMat& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<EMat> solver(to_eigen(m));
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Real parts of the eigenvalues of a general complex matrix, descending.
inline std::vector<double> general_eigenvalues_real(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<EMat> solver(to_eigen(m));
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double entropy_bits(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double l : spectrum)
    if (l > 1e-14) s -= l * std::log2(l);
  return s;
}

inline double entropy_bits(const ComplexMatrix& rho) { return entropy_bits(hermitian_eigenvalues(rho)); }

/// Entanglement entropy of a pure bipartite vector from its Schmidt
/// coefficients (singular values of the dA x dB coefficient matrix).
inline double schmidt_entropy(const std::vector<Complex>& psi, std::size_t da, std::size_t db) {
  EMat c(da, db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) c(a, b) = psi[a * db + b];
  Eigen::JacobiSVD<EMat> svd(c);
  std::vector<double> p;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    p.push_back(s * s);
  }
  return entropy_bits(p);
}

/// Reduced state by the literal sum over basis vectors of the traced side.
inline ComplexMatrix literal_partial_trace(const ComplexMatrix& rho, std::size_t da, std::size_t db,
                                           bool keep_a) {
  const std::size_t keep = keep_a ? da : db;
  const std::size_t traced = keep_a ? db : da;
  ComplexMatrix out(keep);
  for (std::size_t t = 0; t < traced; ++t) {
    // (I x <t|) rho (I x |t>)  or  (<t| x I) rho (|t> x I)
    EMat bra = EMat::Zero(keep, da * db);
    for (std::size_t k = 0; k < keep; ++k) bra(k, keep_a ? k * db + t : t * db + k) = 1.0;
    const EMat r = bra * to_eigen(rho) * bra.adjoint();
    out += from_eigen(r);
  }
  return out;
}

struct LiteralOutcome {
  double p;
  ComplexMatrix state;  // unnormalised when p == 0
};

/// (P_k x I) rho (P_k x I)^dag, traced over the measured qubit, by explicit
/// matrix products.
inline std::vector<LiteralOutcome> literal_ensemble(const ComplexMatrix& rho, std::size_t da,
                                                    std::size_t db, double theta, double phi,
                                                    bool measure_a) {
  const Complex e = std::polar(1.0, phi);
  const Eigen::Vector2cd b0(std::cos(theta), std::sin(theta) * e);
  const Eigen::Vector2cd b1(std::sin(theta) * std::conj(e), -std::cos(theta));
  std::vector<LiteralOutcome> out;
  for (const auto& b : {b0, b1}) {
    const Eigen::Matrix2cd proj = b * b.adjoint();
    EMat full = measure_a ? EMat(Eigen::kroneckerProduct(proj, EMat::Identity(db, db)))
                          : EMat(Eigen::kroneckerProduct(EMat::Identity(da, da), proj));
    const EMat post = full * to_eigen(rho) * full.adjoint();
    const double p = post.trace().real();
    ComplexMatrix reduced = literal_partial_trace(from_eigen(post), da, db, !measure_a);
    if (p > 1e-12) reduced *= 1.0 / p;
    out.push_back({p, reduced});
  }
  return out;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Complex gaussian() {
    std::normal_distribution<double> n;
    return {n(gen_), n(gen_)};
  }

  ComplexMatrix hermitian(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = gaussian().real();
      for (std::size_t j = i + 1; j < dim; ++j) {
        m(i, j) = gaussian();
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

  /// Ginibre-distributed mixed state of full rank (rank = dim by default).
  ComplexMatrix density(std::size_t dim, std::size_t rank = 0) {
    if (rank == 0) rank = dim;
    EMat g(dim, rank);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < rank; ++j) g(i, j) = gaussian();
    EMat rho = g * g.adjoint();
    rho /= rho.trace();
    return from_eigen(rho);
  }

  std::vector<Complex> pure(std::size_t dim) {
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (auto& z : v) {
      z = gaussian();
      norm += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(norm);
    return v;
  }

  /// Haar-ish unitary from the QR decomposition of a Ginibre matrix.
  ComplexMatrix unitary(std::size_t dim) {
    EMat g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<EMat> qr(g);
    return from_eigen(qr.householderQ() * EMat::Identity(dim, dim));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
