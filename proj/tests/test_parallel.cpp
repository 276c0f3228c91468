#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cqed/errors.hpp"
#include "cqed/measures.hpp"
#include "cqed/scenarios.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqed;

namespace {

const std::vector<int> kThreadCounts = {1, 2, 3, 4, 8};

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

bool same(const SampleMeasures& a, const SampleMeasures& b) {
  return same(a.s_a, b.s_a) && same(a.s_b, b.s_b) && same(a.s_ab, b.s_ab) &&
         same(a.concurrence, b.concurrence) && same(a.mutual_info, b.mutual_info) &&
         same(a.classical_corr, b.classical_corr) && same(a.discord, b.discord);
}

}  // namespace

TEST_CASE("grid minimum is identical to the serial reference for any thread count") {
  oracle::Random rng(50);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 6; ++i) states.push_back(make_density(rng.density(4, 1 + i % 4), {2, 2}));
  states.push_back(make_density(rng.density(8, 2), {2, 4}));
  // Degenerate objective: every grid point ties, so the tie-break decides.
  states.push_back(initial_state_jcm(std::numbers::pi / 4));
  states.push_back(make_density(0.25 * ComplexMatrix::identity(4), {2, 2}));

  for (const auto& rho : states) {
    const GridPoint ref = grid_minimum_serial(rho, Side::A);
    for (int n : kThreadCounts) {
      set_threads(n);
      const GridPoint par = grid_minimum(rho, Side::A);
      CHECK(par.value == ref.value);
      CHECK(par.theta_index == ref.theta_index);
      CHECK(par.phi_index == ref.phi_index);
    }
  }
}

TEST_CASE("per-sample measures match the serial reference") {
  const ScenarioConfig cfg = std::get<ScenarioConfig>(parse_config(
      "model = jcm\nalpha = pi/10\ngamma = g\nt_max = 6/g\nsample_every = 200\npositivity_tolerance = 1e-3\n"));
  const ScenarioResult base = run_scenario(cfg);
  const double tol = cfg.integration.positivity_tolerance;
  const auto ref = evaluate_trajectory_serial(base.record, cfg.measures, cfg.measured_side, tol);
  for (int n : kThreadCounts) {
    set_threads(n);
    const auto par = evaluate_trajectory(base.record, cfg.measures, cfg.measured_side, tol);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(same(par[i], ref[i]));
  }
}

TEST_CASE("first failing sample is reported regardless of scheduling") {
  TrajectoryRecord rec;
  for (int i = 0; i < 12; ++i) {
    rec.times.push_back(i);
    DensityMatrix rho = initial_state_jcm(0.1);
    if (i == 5 || i == 9) {
      rho.matrix(0, 0) = -0.5;
      rho.matrix(3, 3) = 0.5;
    }
    rec.populations.push_back(rho.matrix.real_diagonal());
    rec.states.push_back(rho);
  }
  for (int n : kThreadCounts) {
    set_threads(n);
    try {
      (void)evaluate_trajectory(rec, {Measure::Entropy}, Side::A);
      FAIL("expected failure");
    } catch (const InvariantError& e) {
      CHECK(std::string(e.what()).rfind("sample 5:", 0) == 0);
    }
  }
}

TEST_CASE("sweep output is byte-identical across thread counts") {
  const SweepConfig cfg = std::get<SweepConfig>(parse_config(
      "model = jcm\nalpha = 0\nt_max = 10/g\nsample_every = 500\npositivity_tolerance = 1e-3\n"
      "sweep_axis = gamma\nsweep_values = 0.5g, g, 2g, 4g\n"));
  set_threads(1);
  const auto ref = run_sweep(cfg);
  for (int n : kThreadCounts) {
    set_threads(n);
    const auto runs = run_sweep(cfg);
    REQUIRE(runs.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      REQUIRE(runs[i].result);
      CHECK(format_csv(runs[i].result->record, runs[i].result->measures, runs[i].result->model.basis_labels) ==
            format_csv(ref[i].result->record, ref[i].result->measures, ref[i].result->model.basis_labels));
      CHECK(same(runs[i].min_discord, ref[i].min_discord));
      CHECK(same(runs[i].time_to_settle, ref[i].time_to_settle));
    }
  }
}
