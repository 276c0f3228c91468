#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cqed/density.hpp"
#include "cqed/models.hpp"

namespace cqed {

struct IntegrationConfig {
  double dt = 0.0;     // s
  double t_max = 0.0;  // s
  std::size_t sample_every = 1;
  bool renormalize = true;
  double hbar = 1.0;
  /// Samples whose smallest eigenvalue falls below -positivity_tolerance
  /// abort the run.
  double positivity_tolerance = 1e-7;
};

/// Upper bound on g_max * dt / hbar.
inline constexpr double kSplittingGuard = 0.05;

/// Default time step: 1e-3 hbar / g_max.
double default_dt(const ModelSystem& model, double hbar);

/// Throws ConfigError when the config is invalid for this model.
void validate(const IntegrationConfig& cfg, const ModelSystem& model);

/// Number of integration steps implied by cfg (round(t_max / dt)).
std::size_t step_count(const IntegrationConfig& cfg);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<std::vector<double>> populations;
  std::vector<DensityMatrix> states;
  /// Largest |Tr rho - 1| seen before renormalisation.
  double max_trace_drift = 0.0;
  /// Smallest eigenvalue over all recorded samples.
  double min_eigenvalue = 0.0;
};

/// Lindblad dissipator sum_k gamma_k (A rho A^dag - {rho, A^dag A}/2).
ComplexMatrix lindblad_apply(const ComplexMatrix& rho, std::span<const JumpOperator> jumps);

namespace detail {
/// Jump operator with A^dag and A^dag A precomputed.
struct PreparedJump {
  ComplexMatrix op;
  ComplexMatrix op_adj;
  ComplexMatrix number;
  double rate = 0.0;
};
}  // namespace detail

/// Precomputed per-model propagation data for repeated steps.
class SplitStepper {
 public:
  SplitStepper(const ModelSystem& model, const IntegrationConfig& cfg);

  /// U rho U^dag followed by an explicit Euler step of the dissipator.
  /// Returns the trace deviation seen before renormalisation.
  double advance(ComplexMatrix& rho) const;

 private:
  ComplexMatrix unitary_;
  ComplexMatrix unitary_adj_;
  std::vector<detail::PreparedJump> jumps_;
  double dt_over_hbar_;
  bool renormalize_;
};

/// One splitting step (unitary part, then dissipative Euler step).
DensityMatrix step(const DensityMatrix& rho, const ModelSystem& model, const IntegrationConfig& cfg);

/// Repeated stepping from rho0, recording rho0 and every sample_every-th step.
/// Throws InvariantError with the step index on invariant breach.
TrajectoryRecord evolve(const DensityMatrix& rho0, const ModelSystem& model,
                        const IntegrationConfig& cfg);

/// Liouvillian superoperator acting on column-stacked vec(rho).
ComplexMatrix liouvillian(const ModelSystem& model, double hbar);

/// exp(m) by scaling and squaring with a Taylor kernel.
ComplexMatrix expm(const ComplexMatrix& m);

/// Reference solution unvec(exp(M t) vec rho0). dim <= 8.
DensityMatrix exact_oracle(const DensityMatrix& rho0, const ModelSystem& model, double t,
                           double hbar);

}  // namespace cqed
