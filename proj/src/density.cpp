#include "cqed/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqed/eigen.hpp"
#include "cqed/errors.hpp"

namespace cqed {

DensityMatrix make_density(ComplexMatrix m, Split split) {
  if (split.total() != m.dim()) {
    throw DimensionError("density matrix of dimension " + std::to_string(m.dim()) +
                         " cannot carry split " + std::to_string(split.dim_a) + "x" +
                         std::to_string(split.dim_b));
  }
  return DensityMatrix{std::move(m), split};
}

std::string density_violation(const DensityMatrix& rho, const DensityTolerances& tol) {
  std::ostringstream msg;
  if (rho.split.total() != rho.dim()) {
    msg << "split " << rho.split.dim_a << "x" << rho.split.dim_b << " does not match dimension "
        << rho.dim();
    return msg.str();
  }
  const double herm = rho.matrix.hermiticity_violation();
  if (herm > tol.hermiticity) {
    msg << "Hermiticity violated by " << herm;
    return msg.str();
  }
  const Complex tr = rho.matrix.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    msg << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i differs from 1";
    return msg.str();
  }
  const double min_eig = min_eigenvalue(rho);
  if (min_eig < tol.min_eigenvalue) {
    msg << "minimum eigenvalue " << min_eig << " below " << tol.min_eigenvalue;
    return msg.str();
  }
  return {};
}

void check_density(const DensityMatrix& rho, const DensityTolerances& tol) {
  if (auto why = density_violation(rho, tol); !why.empty()) throw InvariantError(why);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix, rho.split, keep);
  const std::size_t d = reduced.dim();
  return DensityMatrix{std::move(reduced), Split{d, 1}};
}

double min_eigenvalue(const DensityMatrix& rho) {
  return eigvalsh(rho.matrix.hermitian_part()).front();
}

DensityMatrix nearest_state(const DensityMatrix& rho) {
  EigenDecomposition d = eigh(rho.matrix.hermitian_part());
  if (d.eigenvalues.front() >= 0.0) return rho;
  double total = 0.0;
  for (double& l : d.eigenvalues) {
    l = std::max(l, 0.0);
    total += l;
  }
  for (double& l : d.eigenvalues) l /= total;
  return DensityMatrix{reconstruct(d).hermitian_part(), rho.split};
}

}  // namespace cqed
