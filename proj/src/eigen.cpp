#include "cqed/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-14;

void require_hermitian(const ComplexMatrix& h) {
  const double violation = h.hermiticity_violation();
  if (violation > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "eigh: input is not Hermitian (max |h - h^dagger| = " << violation
        << ", tolerance " << kHermitianTolerance << ")";
    throw InvariantError(msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi sweeps. On return `a` is diagonal to within the relative
// tolerance; rotations are accumulated into `v` when non-null.
void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.dim();
  const double threshold = std::max(kOffDiagonalTolerance * a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double abs_b = std::abs(b);
        if (abs_b == 0.0) continue;
        const Complex phase = std::conj(b / abs_b);

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * abs_b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J = diag(1, phase) * [[c, s], [-s, c]]; A <- J^dag A J.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = (*v)(k, p);
            const Complex vkq = (*v)(k, q);
            (*v)(k, p) = vkp * jpp + vkq * jqp;
            (*v)(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) >= threshold) {
    throw InvariantError("eigh: Jacobi iteration did not converge");
  }
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& h) {
  require_hermitian(h);
  const std::size_t n = h.dim();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_diagonalize(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& h) {
  require_hermitian(h);
  if (h.dim() == 1) return {h(0, 0).real()};
  if (h.dim() == 2) {
    const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double half_gap = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double radius = std::hypot(half_gap, std::abs(h(0, 1)));
    return {mean - radius, mean + radius};
  }
  ComplexMatrix a = h.hermitian_part();
  jacobi_diagonalize(a, nullptr);
  std::vector<double> values = a.real_diagonal();
  std::sort(values.begin(), values.end());
  return values;
}

namespace {
ComplexMatrix spectral_apply(const ComplexMatrix& v, const std::vector<Complex>& f) {
  const std::size_t n = v.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * f[k] * std::conj(v(j, k));
      out(i, j) = s;
    }
  return out;
}
}  // namespace

ComplexMatrix reconstruct(const EigenDecomposition& d) {
  std::vector<Complex> f(d.eigenvalues.begin(), d.eigenvalues.end());
  return spectral_apply(d.eigenvectors, f);
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double dt, double hbar) {
  const EigenDecomposition d = eigh(h);
  std::vector<Complex> f(d.eigenvalues.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    f[k] = std::polar(1.0, -d.eigenvalues[k] * dt / hbar);
  return spectral_apply(d.eigenvectors, f);
}

ComplexMatrix sqrt_psd(const ComplexMatrix& h, double clamp) {
  const EigenDecomposition d = eigh(h);
  std::vector<Complex> f(d.eigenvalues.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double lambda = d.eigenvalues[k];
    if (lambda < -clamp) {
      std::ostringstream msg;
      msg << "sqrt_psd: eigenvalue " << lambda << " below -" << clamp;
      throw InvariantError(msg.str());
    }
    f[k] = std::sqrt(std::max(lambda, 0.0));
  }
  return spectral_apply(d.eigenvectors, f);
}

}  // namespace cqed
