#pragma once

#include <array>
#include <optional>

#include "cqed/density.hpp"
#include "cqed/matrix.hpp"

namespace cqed {

/// Eigenvalues in [-kEigenClamp, 0) are treated as 0 by entropy and
/// concurrence; more negative values are a corrupted state.
inline constexpr double kEigenClamp = 1e-10;
/// Eigenvalues at or below this contribute nothing to the entropy.
inline constexpr double kEntropyCutoff = 1e-12;
/// Outcomes with probability at or below this are dropped.
inline constexpr double kOutcomeCutoff = 1e-12;

/// von Neumann entropy in bits.
double von_neumann_entropy(const ComplexMatrix& rho);
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix);
}

/// Hill-Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Rank-1 projective measurement on a qubit:
/// |b0> = cos t|0> + sin t e^{i p}|1>, |b1> = sin t e^{-i p}|0> - cos t|1>.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
  std::array<std::array<Complex, 2>, 2> vectors;
  std::array<ComplexMatrix, 2> projectors;
};

MeasurementBasis projective_basis(double theta, double phi);

struct Outcome {
  double probability = 0.0;
  std::optional<ComplexMatrix> state;  // absent when probability <= kOutcomeCutoff
};

/// Post-measurement ensemble of the unmeasured side.
std::array<Outcome, 2> conditional_ensemble(const DensityMatrix& rho,
                                            const MeasurementBasis& basis, Side measured);

/// sum_k p_k S(rho_k) for the basis (theta, phi).
double conditional_entropy(const DensityMatrix& rho, double theta, double phi, Side measured);

struct GridPoint {
  double value = 0.0;
  std::size_t theta_index = 0;
  std::size_t phi_index = 0;
};

/// Measurement-angle grid: 65 theta values over [0, pi/2], 129 phi over [0, 2 pi].
inline constexpr std::size_t kThetaPoints = 65;
inline constexpr std::size_t kPhiPoints = 129;
double grid_theta(std::size_t i);
double grid_phi(std::size_t j);

/// Exhaustive grid minimum of the conditional entropy (OpenMP when available).
/// Ties resolve to the smaller theta index, then the smaller phi index.
GridPoint grid_minimum(const DensityMatrix& rho, Side measured);
/// Single-threaded reference for grid_minimum.
GridPoint grid_minimum_serial(const DensityMatrix& rho, Side measured);

struct Minimum {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Coordinate-descent polish from a starting basis; never increases the value.
Minimum refine_minimum(const DensityMatrix& rho, Side measured, Minimum start);

struct ClassicalCorrelation {
  double bits = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double min_conditional_entropy = 0.0;
};

/// Maximal classical correlation obtained by measuring `measured` (a qubit).
ClassicalCorrelation classical_correlation(const DensityMatrix& rho, Side measured);

/// S(A) + S(B) - S(AB).
double mutual_information(const DensityMatrix& rho);

struct CorrelationReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  std::optional<double> concurrence;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double discord = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Side measured = Side::A;
};

/// Quantum discord (mutual information minus classical correlation) with
/// all intermediate quantities. Concurrence included for two qubits.
CorrelationReport discord(const DensityMatrix& rho, Side measured);

/// Empty when the report satisfies its internal consistency relations.
std::string report_violation(const CorrelationReport& r);

}  // namespace cqed
