#pragma once

#include <vector>

#include "cqed/matrix.hpp"

namespace cqed {

/// Hermiticity tolerance accepted by eigh (max elementwise |h - h^dagger|).
inline constexpr double kHermitianTolerance = 1e-10;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
/// Throws InvariantError if h is not Hermitian within kHermitianTolerance.
EigenDecomposition eigh(const ComplexMatrix& h);

/// Eigenvalues only (ascending); skips accumulation of the rotations.
std::vector<double> eigvalsh(const ComplexMatrix& h);

/// V f(diag) V^dagger for a Hermitian decomposition.
ComplexMatrix reconstruct(const EigenDecomposition& d);

/// exp(-i h dt / hbar), exact through the spectral decomposition.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double dt, double hbar);

/// Principal square root of a positive semidefinite matrix; eigenvalues in
/// [-clamp, 0) are treated as zero.
ComplexMatrix sqrt_psd(const ComplexMatrix& h, double clamp);

}  // namespace cqed
