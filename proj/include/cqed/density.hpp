#pragma once

#include <string>

#include "cqed/matrix.hpp"

namespace cqed {

/// Density matrix together with its tensor bipartition.
struct DensityMatrix {
  ComplexMatrix matrix;
  Split split;

  std::size_t dim() const noexcept { return matrix.dim(); }
};

struct DensityTolerances {
  double hermiticity = 1e-8;
  double trace = 1e-8;
  double min_eigenvalue = -1e-7;
};

/// Builds a DensityMatrix after checking the split matches the dimension.
DensityMatrix make_density(ComplexMatrix m, Split split);

/// Empty string when the invariants hold, otherwise a description of the
/// first violation.
std::string density_violation(const DensityMatrix& rho, const DensityTolerances& tol = {});

/// Throws InvariantError on violation.
void check_density(const DensityMatrix& rho, const DensityTolerances& tol = {});

DensityMatrix partial_trace(const DensityMatrix& rho, Side keep);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const DensityMatrix& rho);

/// Negative eigenvalues set to zero, then rescaled to unit trace. Returns
/// the input unchanged when it is already positive semidefinite.
DensityMatrix nearest_state(const DensityMatrix& rho);

}  // namespace cqed
