#include "cqed/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cqed/eigen.hpp"
#include "cqed/errors.hpp"

namespace cqed {
namespace {

using namespace std::complex_literals;

constexpr std::size_t kMaxSteps = 100'000'000;
constexpr std::size_t kMaxOracleDim = 8;

void check_jump_dims(std::size_t dim, std::span<const JumpOperator> jumps) {
  for (const auto& j : jumps) {
    if (j.op.dim() != dim) {
      throw DimensionError("jump operator of dimension " + std::to_string(j.op.dim()) +
                           " applied to state of dimension " + std::to_string(dim));
    }
  }
}

using detail::PreparedJump;

std::vector<PreparedJump> prepare(std::span<const JumpOperator> jumps) {
  std::vector<PreparedJump> out;
  for (const auto& j : jumps) {
    if (j.rate == 0.0) continue;
    ComplexMatrix adj = j.op.adjoint();
    ComplexMatrix number = adj * j.op;
    out.push_back({j.op, std::move(adj), std::move(number), j.rate});
  }
  return out;
}

ComplexMatrix dissipator(const ComplexMatrix& rho, const std::vector<PreparedJump>& jumps) {
  ComplexMatrix out(rho.dim());
  for (const auto& j : jumps) {
    ComplexMatrix term = j.op * rho * j.op_adj;
    term -= 0.5 * (rho * j.number + j.number * rho);
    out += j.rate * term;
  }
  return out;
}

double one_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

std::string at_step(std::size_t step, const std::string& what) {
  return "step " + std::to_string(step) + ": " + what;
}

}  // namespace

double default_dt(const ModelSystem& model, double hbar) {
  double scale = model.max_coupling;
  if (scale <= 0.0) {
    for (const auto& z : model.hamiltonian.entries()) scale = std::max(scale, std::abs(z));
  }
  return scale > 0.0 ? 1e-3 * hbar / scale : 1e-3;
}

void validate(const IntegrationConfig& cfg, const ModelSystem& model) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(std::isfinite(cfg.dt) && cfg.dt > 0)) fail("dt must be > 0");
  if (!(std::isfinite(cfg.t_max) && cfg.t_max >= cfg.dt)) fail("t_max must be >= dt");
  if (cfg.sample_every == 0) fail("sample_every must be a positive integer");
  if (!(std::isfinite(cfg.hbar) && cfg.hbar > 0)) fail("hbar must be > 0");
  if (!(cfg.positivity_tolerance >= 0)) fail("positivity_tolerance must be >= 0");
  const double ratio = model.max_coupling * cfg.dt / cfg.hbar;
  if (ratio > kSplittingGuard * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "g_max*dt/hbar = " << ratio << " exceeds " << kSplittingGuard
        << " (splitting accuracy guard)";
    fail(msg.str());
  }
  if (cfg.t_max / cfg.dt > static_cast<double>(kMaxSteps)) {
    fail("t_max/dt exceeds the 1e8 step limit");
  }
}

std::size_t step_count(const IntegrationConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
}

ComplexMatrix lindblad_apply(const ComplexMatrix& rho, std::span<const JumpOperator> jumps) {
  check_jump_dims(rho.dim(), jumps);
  return dissipator(rho, prepare(jumps));
}

SplitStepper::SplitStepper(const ModelSystem& model, const IntegrationConfig& cfg)
    : unitary_(unitary_from_hamiltonian(model.hamiltonian, cfg.dt, cfg.hbar)),
      unitary_adj_(unitary_.adjoint()),
      dt_over_hbar_(cfg.dt / cfg.hbar),
      renormalize_(cfg.renormalize) {
  check_jump_dims(model.dim, model.jumps);
  jumps_ = prepare(model.jumps);
}

double SplitStepper::advance(ComplexMatrix& rho) const {
  ComplexMatrix rotated = unitary_ * rho * unitary_adj_;
  rotated += dt_over_hbar_ * dissipator(rotated, jumps_);
  const Complex tr = rotated.trace();
  const double drift = std::abs(tr - 1.0);
  if (renormalize_) {
    rotated *= 1.0 / tr;
    rotated = rotated.hermitian_part();
  }
  rho = std::move(rotated);
  return drift;
}

DensityMatrix step(const DensityMatrix& rho, const ModelSystem& model,
                   const IntegrationConfig& cfg) {
  if (rho.dim() != model.dim) throw DimensionError("step: state and model dimensions differ");
  SplitStepper stepper(model, cfg);
  DensityMatrix out = rho;
  stepper.advance(out.matrix);
  return out;
}

TrajectoryRecord evolve(const DensityMatrix& rho0, const ModelSystem& model,
                        const IntegrationConfig& cfg) {
  if (rho0.dim() != model.dim) throw DimensionError("evolve: state and model dimensions differ");
  validate(cfg, model);
  check_density(rho0);

  const std::size_t steps = step_count(cfg);
  TrajectoryRecord rec;
  const std::size_t samples = steps / cfg.sample_every + 1;
  rec.times.reserve(samples);
  rec.populations.reserve(samples);
  rec.states.reserve(samples);

  auto record = [&](std::size_t i, const DensityMatrix& rho) {
    rec.times.push_back(static_cast<double>(i) * cfg.dt);
    rec.populations.push_back(rho.matrix.real_diagonal());
    rec.states.push_back(rho);
  };
  record(0, rho0);

  const SplitStepper stepper(model, cfg);
  DensityTolerances tol;
  tol.min_eigenvalue = -std::numeric_limits<double>::infinity();
  DensityMatrix rho = rho0;
  for (std::size_t i = 1; i <= steps; ++i) {
    rec.max_trace_drift = std::max(rec.max_trace_drift, stepper.advance(rho.matrix));
    if (!cfg.renormalize && rho.matrix.hermiticity_violation() > tol.hermiticity) {
      rho.matrix = rho.matrix.hermitian_part();
    }
    if (std::abs(rho.matrix.trace() - 1.0) > tol.trace) {
      throw InvariantError(at_step(i, "trace drifted to " + std::to_string(rho.matrix.trace().real())));
    }
    if (i % cfg.sample_every == 0) {
      if (auto why = density_violation(rho, tol); !why.empty()) throw InvariantError(at_step(i, why));
      const double lowest = min_eigenvalue(rho);
      if (lowest < -cfg.positivity_tolerance) {
        std::ostringstream msg;
        msg << "minimum eigenvalue " << lowest << " below -" << cfg.positivity_tolerance;
        throw InvariantError(at_step(i, msg.str()));
      }
      rec.min_eigenvalue = std::min(rec.min_eigenvalue, lowest);
      record(i, rho);
    }
  }
  return rec;
}

ComplexMatrix liouvillian(const ModelSystem& model, double hbar) {
  const std::size_t d = model.dim;
  check_jump_dims(d, model.jumps);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix& h = model.hamiltonian;

  ComplexMatrix m = (-1i / hbar) * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& j : model.jumps) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix number = j.op.adjoint() * j.op;
    ComplexMatrix d_k = kron(j.op.conjugate(), j.op);
    d_k -= 0.5 * kron(id, number);
    d_k -= 0.5 * kron(number.transpose(), id);
    m += (j.rate / hbar) * d_k;
  }
  return m;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const double norm = one_norm(m);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix a = std::ldexp(1.0, -squarings) * m;

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = (1.0 / k) * (term * a);
    result += term;
    if (one_norm(term) < 1e-18 * one_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

DensityMatrix exact_oracle(const DensityMatrix& rho0, const ModelSystem& model, double t,
                           double hbar) {
  const std::size_t d = rho0.dim();
  if (d > kMaxOracleDim) throw DimensionError("exact_oracle: dimension above 8");
  if (d != model.dim) throw DimensionError("exact_oracle: state and model dimensions differ");
  if (t == 0.0) return rho0;

  const ComplexMatrix propagator = expm(t * liouvillian(model, hbar));
  std::vector<Complex> vec(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) vec[i + j * d] = rho0.matrix(i, j);

  DensityMatrix out{ComplexMatrix(d), rho0.split};
  for (std::size_t r = 0; r < d * d; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < d * d; ++c) s += propagator(r, c) * vec[c];
    out.matrix(r % d, r / d) = s;
  }
  return out;
}

}  // namespace cqed
