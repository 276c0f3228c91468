#include "cqed/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "cqed/eigen.hpp"
#include "cqed/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqed {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kDiscordNoise = 1e-7;
constexpr double kRefineStep = 1e-7;

double clamped(double lambda, const char* where) {
  if (lambda < -kEigenClamp) {
    std::ostringstream msg;
    msg << where << ": eigenvalue " << lambda << " below -" << kEigenClamp;
    throw InvariantError(msg.str());
  }
  return std::max(lambda, 0.0);
}

// -lambda log2(lambda / scale) summed over the spectrum of an unnormalised
// block whose trace is `scale`.
double scaled_entropy(const std::vector<double>& spectrum, double scale) {
  double s = 0.0;
  for (double raw : spectrum) {
    const double lambda = clamped(raw, "entropy");
    if (lambda / scale <= kEntropyCutoff) continue;
    s -= lambda * std::log2(lambda / scale);
  }
  return s;
}

using Qubit = std::array<Complex, 2>;

Qubit basis_vector(double theta, double phi, std::size_t k) {
  const Complex e = std::polar(1.0, phi);
  if (k == 0) return {std::cos(theta), std::sin(theta) * e};
  return {std::sin(theta) * std::conj(e), -std::cos(theta)};
}

// <b| rho |b> on the measured factor, i.e. Tr_measured[(P x I) rho (P x I)].
ComplexMatrix measured_block(const DensityMatrix& rho, const Qubit& b, Side measured) {
  const std::size_t da = rho.split.dim_a;
  const std::size_t db = rho.split.dim_b;
  if (rho.split.total() != rho.dim()) throw DimensionError("state split does not match dimension");
  if (measured == Side::A) {
    if (da != 2) throw DimensionError("measured subsystem A must be a qubit");
    ComplexMatrix out(db);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t a2 = 0; a2 < 2; ++a2) {
        const Complex w = std::conj(b[a]) * b[a2];
        if (w == Complex{}) continue;
        for (std::size_t j = 0; j < db; ++j)
          for (std::size_t l = 0; l < db; ++l) out(j, l) += w * rho.matrix(a * db + j, a2 * db + l);
      }
    return out;
  }
  if (db != 2) throw DimensionError("measured subsystem B must be a qubit");
  ComplexMatrix out(da);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      const Complex w = std::conj(b[x]) * b[x2];
      if (w == Complex{}) continue;
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t i2 = 0; i2 < da; ++i2) out(i, i2) += w * rho.matrix(i * 2 + x, i2 * 2 + x2);
    }
  return out;
}

double unmeasured_entropy(const DensityMatrix& rho, Side measured) {
  const Side keep = measured == Side::A ? Side::B : Side::A;
  return von_neumann_entropy(partial_trace(rho.matrix, rho.split, keep));
}

double wrap_phi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0 ? phi + kTwoPi : phi;
}

bool better(const GridPoint& lhs, const GridPoint& rhs) {
  if (lhs.value != rhs.value) return lhs.value < rhs.value;
  if (lhs.theta_index != rhs.theta_index) return lhs.theta_index < rhs.theta_index;
  return lhs.phi_index < rhs.phi_index;
}

GridPoint evaluate_grid_point(const DensityMatrix& rho, Side measured, std::size_t flat) {
  const std::size_t i = flat / kPhiPoints;
  const std::size_t j = flat % kPhiPoints;
  return {conditional_entropy(rho, grid_theta(i), grid_phi(j), measured), i, j};
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
  return scaled_entropy(eigvalsh(rho), 1.0);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4 || rho.split != Split{2, 2}) {
    throw DimensionError("concurrence requires a two-qubit state");
  }
  // The square roots of the eigenvalues of rho (YY rho* YY) are the
  // singular values of sqrt(rho) YY sqrt(rho)*. They are read off the
  // Hermitian dilation [[0, M], [M^dag, 0]] (eigenvalues +-sigma), which
  // avoids square roots of roundoff-sized eigenvalues.
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix root = sqrt_psd(rho.matrix.hermitian_part(), kEigenClamp);
  const ComplexMatrix m = root * yy * root.conjugate();
  ComplexMatrix dilation(8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = m(i, j);
      dilation(4 + j, i) = std::conj(m(i, j));
    }
  const std::vector<double> spectrum = eigvalsh(dilation);
  std::vector<double> roots(spectrum.begin() + 4, spectrum.end());
  for (double& r : roots) r = std::max(r, 0.0);
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(roots[0] - roots[1] - roots[2] - roots[3], 0.0);
}

MeasurementBasis projective_basis(double theta, double phi) {
  MeasurementBasis m;
  m.theta = theta;
  m.phi = phi;
  for (std::size_t k = 0; k < 2; ++k) {
    m.vectors[k] = basis_vector(theta, phi, k);
    m.projectors[k] = ComplexMatrix::projector(m.vectors[k]);
  }
  return m;
}

std::array<Outcome, 2> conditional_ensemble(const DensityMatrix& rho,
                                            const MeasurementBasis& basis, Side measured) {
  std::array<Outcome, 2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    ComplexMatrix block = measured_block(rho, basis.vectors[k], measured);
    const double p = block.trace().real();
    out[k].probability = std::max(p, 0.0);
    if (p > kOutcomeCutoff) {
      block *= 1.0 / p;
      out[k].state = std::move(block);
    }
  }
  return out;
}

double conditional_entropy(const DensityMatrix& rho, double theta, double phi, Side measured) {
  double total = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const ComplexMatrix block = measured_block(rho, basis_vector(theta, phi, k), measured);
    const double p = block.trace().real();
    if (p <= kOutcomeCutoff) continue;
    total += scaled_entropy(eigvalsh(block), p);
  }
  return total;
}

double grid_theta(std::size_t i) {
  return kHalfPi * static_cast<double>(i) / static_cast<double>(kThetaPoints - 1);
}

double grid_phi(std::size_t j) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(kPhiPoints - 1);
}

GridPoint grid_minimum_serial(const DensityMatrix& rho, Side measured) {
  GridPoint best = evaluate_grid_point(rho, measured, 0);
  for (std::size_t flat = 1; flat < kThetaPoints * kPhiPoints; ++flat) {
    const GridPoint candidate = evaluate_grid_point(rho, measured, flat);
    if (better(candidate, best)) best = candidate;
  }
  return best;
}

GridPoint grid_minimum(const DensityMatrix& rho, Side measured) {
#ifdef _OPENMP
  if (omp_in_parallel() || omp_get_max_threads() == 1) return grid_minimum_serial(rho, measured);
  constexpr long long kTotal = static_cast<long long>(kThetaPoints * kPhiPoints);
  GridPoint best{std::numeric_limits<double>::infinity(), kThetaPoints, kPhiPoints};
  bool failed = false;
  std::string failure;
#pragma omp parallel
  {
    GridPoint local{std::numeric_limits<double>::infinity(), kThetaPoints, kPhiPoints};
#pragma omp for schedule(static)
    for (long long flat = 0; flat < kTotal; ++flat) {
      try {
        const GridPoint candidate = evaluate_grid_point(rho, measured, static_cast<std::size_t>(flat));
        if (better(candidate, local)) local = candidate;
      } catch (const std::exception& e) {
#pragma omp critical(cqed_grid_failure)
        {
          failed = true;
          failure = e.what();
        }
      }
    }
#pragma omp critical(cqed_grid_reduce)
    if (better(local, best)) best = local;
  }
  if (failed) throw InvariantError(failure);
  return best;
#else
  return grid_minimum_serial(rho, measured);
#endif
}

Minimum refine_minimum(const DensityMatrix& rho, Side measured, Minimum start) {
  double step_theta = kHalfPi / static_cast<double>(kThetaPoints - 1);
  double step_phi = kTwoPi / static_cast<double>(kPhiPoints - 1);
  Minimum best = start;
  for (int iter = 0; iter < 100000 && std::max(step_theta, step_phi) > kRefineStep; ++iter) {
    Minimum candidate = best;
    const std::array<std::pair<double, double>, 4> moves = {
        std::pair{step_theta, 0.0}, std::pair{-step_theta, 0.0}, std::pair{0.0, step_phi},
        std::pair{0.0, -step_phi}};
    for (auto [d_theta, d_phi] : moves) {
      const double theta = std::clamp(best.theta + d_theta, 0.0, kHalfPi);
      const double phi = wrap_phi(best.phi + d_phi);
      const double value = conditional_entropy(rho, theta, phi, measured);
      if (value < candidate.value) candidate = {value, theta, phi};
    }
    if (candidate.value < best.value) {
      best = candidate;
    } else {
      step_theta *= 0.5;
      step_phi *= 0.5;
    }
  }
  return best;
}

ClassicalCorrelation classical_correlation(const DensityMatrix& rho, Side measured) {
  const GridPoint coarse = grid_minimum(rho, measured);
  const Minimum fine = refine_minimum(
      rho, measured, {coarse.value, grid_theta(coarse.theta_index), grid_phi(coarse.phi_index)});
  const double s_unmeasured = unmeasured_entropy(rho, measured);
  return {s_unmeasured - fine.value, fine.theta, fine.phi, fine.value};
}

double mutual_information(const DensityMatrix& rho) {
  const double s_a = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::A));
  const double s_b = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::B));
  return s_a + s_b - von_neumann_entropy(rho.matrix);
}

CorrelationReport discord(const DensityMatrix& rho, Side measured) {
  CorrelationReport r;
  r.measured = measured;
  r.s_a = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::A));
  r.s_b = von_neumann_entropy(partial_trace(rho.matrix, rho.split, Side::B));
  r.s_ab = von_neumann_entropy(rho.matrix);
  r.mutual_info = r.s_a + r.s_b - r.s_ab;
  if (rho.dim() == 4 && rho.split == Split{2, 2}) r.concurrence = concurrence(rho);

  const ClassicalCorrelation cc = classical_correlation(rho, measured);
  r.classical_corr = cc.bits;
  r.theta = cc.theta;
  r.phi = cc.phi;
  r.discord = r.mutual_info - r.classical_corr;
  if (r.discord < 0.0) {
    if (r.discord < -kDiscordNoise) {
      std::ostringstream msg;
      msg << "discord " << r.discord << " is negative beyond optimiser noise";
      throw InvariantError(msg.str());
    }
    r.discord = 0.0;
    r.classical_corr = r.mutual_info;
  }
  return r;
}

std::string report_violation(const CorrelationReport& r) {
  std::ostringstream msg;
  if (std::abs(r.mutual_info - (r.s_a + r.s_b - r.s_ab)) > 1e-9) {
    msg << "mutual_info " << r.mutual_info << " != S_A + S_B - S_AB";
  } else if (std::abs(r.discord - (r.mutual_info - r.classical_corr)) > 1e-9) {
    msg << "discord " << r.discord << " != mutual_info - classical_corr";
  } else if (r.discord < -kDiscordNoise) {
    msg << "discord " << r.discord << " is negative";
  } else if (r.discord > (r.measured == Side::A ? r.s_a : r.s_b) + 1e-6) {
    msg << "discord " << r.discord << " exceeds the entropy of the measured side";
  } else if (r.concurrence && (*r.concurrence < 0.0 || *r.concurrence > 1.0 + 1e-9)) {
    msg << "concurrence " << *r.concurrence << " outside [0, 1]";
  }
  return msg.str();
}

}  // namespace cqed
