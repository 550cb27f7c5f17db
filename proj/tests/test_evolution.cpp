#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cll/evolution.hpp"
#include "test_util.hpp"

using namespace cll;
using namespace cll::testutil;

namespace {

constexpr cd kI{0.0, 1.0};

Potential soliton_plus_radiation(const SpatialGrid& g, cd lam1, double eps) {
  const Potential sol = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, g);
  std::vector<cd> q = sol.q;
  for (int k = 0; k < g.n_points; ++k) {
    const double x = g.x(k);
    q[k] += eps * std::exp(-x * x / 4.0) * std::exp(cd(0.0, 0.3 * x));
  }
  return Potential::reduced_from(g, std::move(q));
}

}  // namespace

TEST_CASE("reflection evolution: identity, modulus, group law") {
  ReflectionSamples l0;
  l0.lambda = {cd(0.5, 0), cd(1.7, 0), cd(0, 0.8), cd(0, 2.1)};
  l0.l = {cd(0.3, -0.2), cd(-0.1, 0.05), cd(0.2, 0.9), cd(0.01, -0.4)};

  const ReflectionSamples at0 = evolve_reflection(l0, 0.0);
  for (std::size_t j = 0; j < l0.l.size(); ++j) CHECK(at0.l[j] == l0.l[j]);

  const ReflectionSamples at = evolve_reflection(l0, 0.37);
  for (std::size_t j = 0; j < l0.l.size(); ++j)
    CHECK(std::abs(std::abs(at.l[j]) - std::abs(l0.l[j])) <= 1e-14);

  const ReflectionSamples two_step = evolve_reflection(evolve_reflection(l0, 0.21), 0.16);
  for (std::size_t j = 0; j < l0.l.size(); ++j)
    CHECK(std::abs(two_step.l[j] - at.l[j]) <= 1e-14);
}

TEST_CASE("time-dependent seed solves the vacuum time equation") {
  const cd lam1(0.8, 0.6);
  const cd l4 = std::pow(lam1, 4);
  const double t = 0.3, delta = 1e-3;

  auto seed_at = [&](double tt) { return time_dependent_seed(lam1, cd(1, 0), cd(0.4, 0.7), tt, kGrid); };
  const DarbouxSeed base = seed_at(t);
  const DarbouxSeed p1 = seed_at(t + delta), m1 = seed_at(t - delta);
  const DarbouxSeed p2 = seed_at(t + delta / 2), m2 = seed_at(t - delta / 2);

  double worst = 0.0;
  for (int k = 0; k < kGrid.n_points; k += 17) {
    // Richardson-extrapolated central differences in t
    const cd d1a = (p1.phi.c1[k] - m1.phi.c1[k]) / (2.0 * delta);
    const cd d2a = (p2.phi.c1[k] - m2.phi.c1[k]) / delta;
    const cd dta = (4.0 * d2a - d1a) / 3.0;
    const cd d1b = (p1.phi.c2[k] - m1.phi.c2[k]) / (2.0 * delta);
    const cd d2b = (p2.phi.c2[k] - m2.phi.c2[k]) / delta;
    const cd dtb = (4.0 * d2b - d1b) / 3.0;
    // vacuum V reduces to -2 i lambda^4 sigma3
    const cd ra = -2.0 * kI * l4 * base.phi.c1[k];
    const cd rb = 2.0 * kI * l4 * base.phi.c2[k];
    const double scale = 1.0 + std::abs(base.phi.c1[k]) + std::abs(base.phi.c2[k]);
    worst = std::max(worst, std::max(std::abs(dta - ra), std::abs(dtb - rb)) / scale);
  }
  CHECK(worst <= 1e-10);

  // t = 0 reduces to the static seed; scaling both constants changes nothing
  const DarbouxSeed st = time_dependent_seed(lam1, cd(1, 0), cd(0.4, 0.7), 0.0, kGrid);
  const DarbouxSeed vac = DarbouxSeed::vacuum(kGrid, lam1, cd(1, 0), cd(0.4, 0.7));
  CHECK(field_sup_diff(st.phi.c1, vac.phi.c1) == 0.0);

  const cd c(1.7, -2.2);
  const Potential s1 = soliton_solution(lam1, cd(1, 0), cd(0.4, 0.7), 0.25, kGrid);
  const Potential s2 =
      apply_dt(Potential::zero(kGrid),
               time_dependent_seed(lam1, c * cd(1, 0), c * cd(0.4, 0.7), 0.25, kGrid));
  CHECK(field_sup_diff(s1.q, s2.q) <= 1e-14);

  CHECK_THROWS_AS(time_dependent_seed(cd(0.8, 0.0), cd(1, 0), cd(1, 0), 0.0, kGrid), Error);
}

TEST_CASE("soliton is a traveling profile with conserved invariants") {
  const cd lam1(0.8, 0.6);
  const Potential s0 = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, kGrid);

  // |q| depends on x only through x - vt with v = -2 Im(l^4)/Im(l^2). Pick t
  // so the displacement is exactly 16 grid cells; the sampled modulus profile
  // then translates exactly and the sampling artifact drops out.
  const double beta = (lam1 * lam1).imag();
  const double beta4 = std::pow(lam1, 4).imag();
  const double v = -2.0 * beta4 / beta;
  const int cells = 16;
  const double t1 = cells * kGrid.spacing() / std::abs(v);
  const int shift = v < 0 ? cells : -cells;

  const Potential s1 = soliton_solution(lam1, cd(1, 0), cd(1, 0), t1, kGrid);
  double worst = 0.0;
  for (int k = 200; k < kGrid.n_points - 200; ++k)
    worst = std::max(worst, std::abs(std::abs(s1.q[k]) - std::abs(s0.q[k + shift])));
  CHECK(worst <= 1e-10);
  CHECK(std::abs(s1.sup_norm() - s0.sup_norm()) <= 1e-10);

  for (double t : {0.5, 1.0}) {
    const Potential s = soliton_solution(lam1, cd(1, 0), cd(1, 0), t, kGrid);
    CHECK(std::abs(s.mass() - s0.mass()) <= 1e-8 * s0.mass());
    // isospectrality of the analytic family
    const cd z = refine_eigenvalue(s, lam1);
    CHECK(std::abs(z - lam1) <= 1e-4);
  }
}

TEST_CASE("pde_step: vacuum fixed point and CFL guard") {
  const Potential vac = Potential::zero(kGrid);
  const double dt = 0.5 * max_stable_dt(kGrid);
  const Potential next = pde_step(vac, dt);
  CHECK(next.sup_norm() == 0.0);
  CHECK_THROWS_AS(pde_step(vac, 10.0 * max_stable_dt(kGrid)), Error);
  CHECK_THROWS_AS(pde_step(vac, -1.0), Error);
}

TEST_CASE("pde_step: temporal self-convergence order") {
  // strong enough that truncation dominates roundoff; dt dividing T exactly
  const Potential q0 = sampled(kGrid, [](double x) {
    return 1.2 * std::exp(-x * x / 2.0) * std::exp(cd(0.0, 1.5 * x));
  });
  const double T = 0.05, dt0 = 5e-4;
  auto advance = [&](double dt) {
    Potential p = q0;
    const int n = static_cast<int>(std::round(T / dt));
    for (int s = 0; s < n; ++s) p = pde_step(p, dt);
    return p;
  };
  const Potential a = advance(dt0), b = advance(dt0 / 2), c = advance(dt0 / 4);
  const double e1 = field_sup_diff(a.q, b.q), e2 = field_sup_diff(b.q, c.q);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.8);
}

TEST_CASE("evolved soliton tracks the analytic family") {
  const cd lam1(0.8, 0.6);
  const Potential q0 = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, kGrid);
  const double T = 0.1, dt = 1e-3;
  EvolveOptions opt;
  const Trajectory traj = run_evolution(q0, T, dt, opt);
  REQUIRE(traj.completed);
  const Potential expect = soliton_solution(lam1, cd(1, 0), cd(1, 0), T, kGrid);
  CHECK(field_sup_diff(traj.snapshots.back().q, expect.q) <= 1e-3);

  // mass drift of the converged run
  const double m0 = traj.diagnostics.front().mass;
  const double m1 = traj.diagnostics.back().mass;
  CHECK(std::abs(m1 - m0) <= 1e-8 * m0);
}

TEST_CASE("blow-up stops the run early with a partial trajectory") {
  // amplitude far beyond the advective stability of the chosen step
  const Potential q0 = sampled(kGrid, [](double x) {
    return 3e4 * std::exp(-x * x / 4.0);
  });
  EvolveOptions opt;
  opt.pde.enforce_decay = false;
  const Trajectory traj = run_evolution(q0, 0.05, 1e-3, opt);
  CHECK_FALSE(traj.completed);
  CHECK(!traj.stop_reason.empty());
  CHECK(traj.steps < 50);
  CHECK(!traj.snapshots.empty());
}

TEST_CASE("vacuum trajectory is identically zero") {
  const Trajectory traj = run_evolution(Potential::zero(kGrid), 0.05, 1e-3, {});
  REQUIRE(traj.completed);
  for (const auto& row : traj.diagnostics) {
    CHECK(row.mass == 0.0);
    CHECK(row.sup_norm == 0.0);
  }
}

TEST_CASE("reflection coefficient follows the evolution law") {
  const cd lam1(0.8, 0.6);
  const Potential q0 = soliton_plus_radiation(kGrid, lam1, 0.05);
  const double T = 0.2, dt = 1e-3;

  // evolved fields carry dealiasing ringing ~1e-9 at the grid ends
  Tolerances tol;
  tol.decay_tol = 1e-7;

  const ContourSpec spec{ContourSpec::Kind::Real, 0.4, 2.0, 8};
  const std::vector<cd> contour = spec.points();
  const ScatteringCurve c0 = scattering_curve(q0, contour, tol);
  const ReflectionSamples l0 = reflection_coefficient(c0);
  const ReflectionSamples predicted = evolve_reflection(l0, T);

  const Trajectory traj = run_evolution(q0, T, dt, {});
  REQUIRE(traj.completed);
  CHECK(traj.snapshots.back().end_amplitude() <= 1e-8);
  const ScatteringCurve cT = scattering_curve(traj.snapshots.back(), contour, tol);
  const ReflectionSamples measured = reflection_coefficient(cT);

  REQUIRE(measured.l.size() == predicted.l.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < measured.l.size(); ++j)
    worst = std::max(worst, std::abs(measured.l[j] - predicted.l[j]));
  CHECK(worst <= 1e-3);
}

TEST_CASE("removal commutes with the flow") {
  const cd lam1(0.8, 0.6);
  const Potential q0 = soliton_plus_radiation(kGrid, lam1, 0.05);
  const double T = 0.2, dt = 1e-3;

  Tolerances tol;
  tol.decay_tol = 1e-7;
  JostOptions jopt;
  jopt.decay_tol = 1e-7;

  // remove first, then evolve
  const cd z0 = refine_eigenvalue(q0, lam1, tol);
  const Potential removed0 =
      apply_dt(q0, eigenvalue_seed(q0, SpectralPoint::make(z0), tol.eigen_tol, jopt));
  const Trajectory pathA = run_evolution(removed0, T, dt, {});
  REQUIRE(pathA.completed);

  // evolve first, then remove with the time-dependent seed
  const Trajectory pathB = run_evolution(q0, T, dt, {});
  REQUIRE(pathB.completed);
  const Potential& evolved = pathB.snapshots.back();
  const cd zT = refine_eigenvalue(evolved, z0, tol);
  CHECK(std::abs(zT - z0) <= 1e-3);  // isospectral drift of the integrator
  const Potential removedT =
      apply_dt(evolved, eigenvalue_seed(evolved, SpectralPoint::make(zT), tol.eigen_tol, jopt));

  CHECK(field_sup_diff(pathA.snapshots.back().q, removedT.q) <= 1e-3);
}
