#include "cll/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "cll/darboux.hpp"
#include "cll/evolution.hpp"
#include "cll/io.hpp"
#include "cll/jost.hpp"
#include "cll/scattering.hpp"

namespace cll {

namespace {

constexpr cd kI{0.0, 1.0};

using Profile = std::function<cd(double)>;

Potential sampled(const SpatialGrid& g, const Profile& f) {
  std::vector<cd> q(g.n_points);
  for (int k = 0; k < g.n_points; ++k) q[k] = f(g.x(k));
  return Potential::reduced_from(g, std::move(q));
}

Profile random_smooth_profile(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 0.7), pos(-4.0, 4.0), width(1.5, 3.0),
      freq(0.2, 1.2), ph(0.0, 6.28);
  struct Bump {
    double a, x0, w, f, p;
  };
  std::vector<Bump> bumps;
  for (int i = 0; i < 3; ++i) bumps.push_back({amp(rng), pos(rng), width(rng), freq(rng), ph(rng)});
  return [bumps](double x) {
    cd v(0.0, 0.0);
    for (const auto& b : bumps)
      v += b.a * std::exp(-(x - b.x0) * (x - b.x0) / (b.w * b.w)) *
           std::exp(cd(0.0, b.f * x + b.p));
    return v;
  };
}

double sup_diff(const std::vector<cd>& u, const std::vector<cd>& v) {
  double m = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, std::abs(u[k] - v[k]));
  return m;
}

Potential soliton_plus_radiation(const SpatialGrid& g, cd lam1, double eps) {
  const Potential sol = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, g);
  std::vector<cd> q = sol.q;
  for (int k = 0; k < g.n_points; ++k) {
    const double x = g.x(k);
    q[k] += eps * std::exp(-x * x / 4.0) * std::exp(cd(0.0, 0.3 * x));
  }
  return Potential::reduced_from(g, std::move(q));
}

struct Harness {
  std::vector<CheckResult> results;

  void run(const std::string& name, double tol,
           const std::function<double(std::string*)>& body) {
    CheckResult r;
    r.name = name;
    r.tol = tol;
    try {
      std::string detail;
      r.residual = body(&detail);
      r.pass = r.residual <= tol;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::infinity();
      r.pass = false;
      r.detail = e.what();
    }
    results.push_back(r);
  }
};

}  // namespace

std::vector<CheckResult> run_acceptance(const RunConfig& cfg) {
  Harness h;
  const Tolerances& tol = cfg.tol;
  const SpatialGrid grid = SpatialGrid::make(30.0, 1024);
  const cd lam1(0.8, 0.6);

  // 1. vacuum identity on a 64-point contour
  h.run("vacuum_identity", 1e-10, [&](std::string*) {
    const Potential vac = Potential::zero(grid);
    const ContourSpec spec{ContourSpec::Kind::Real, 0.1, 3.0, 64};
    const ScatteringCurve c = scattering_curve(vac, spec.points(), tol, cfg.threads);
    double worst = 0.0;
    for (const auto& s : c.samples)
      worst = std::max({worst, std::abs(s.a - cd(1, 0)), std::abs(s.b)});
    return worst;
  });

  // 2. unitarity on real contours for three random smooth potentials
  h.run("unitarity", 1e-6, [&](std::string*) {
    double worst = 0.0;
    const ContourSpec spec{ContourSpec::Kind::Real, 0.3, 2.5, 24};
    for (unsigned seed : {101u, 102u, 103u}) {
      const Potential pot = sampled(grid, random_smooth_profile(seed));
      const ScatteringCurve c = scattering_curve(pot, spec.points(), tol, cfg.threads);
      for (const auto& s : c.samples)
        worst = std::max(worst, std::abs(std::norm(s.a) + std::norm(s.b) - 1.0));
    }
    return worst;
  });

  // 3. conjugation symmetry and lambda -> -lambda parity of the Jost columns
  h.run("symmetry_parity", 1e-8, [&](std::string*) {
    double worst = 0.0;
    for (unsigned seed : {101u, 102u, 103u}) {
      const Potential pot = sampled(grid, random_smooth_profile(seed));
      for (Side side : {Side::Minus, Side::Plus}) {
        const cd lam(1.0, 1.0);
        const JostPair at = solve_jost(pot, SpectralPoint::make(lam), side);
        const JostPair conj_at = solve_jost(pot, SpectralPoint::make(std::conj(lam)), side);
        const ComplexVec2Field image = conjugate_symmetry_image(conj_at.column_2);
        for (int k = 0; k < grid.n_points; ++k) {
          const double s = 1.0 + std::abs(image.c1[k]) + std::abs(image.c2[k]);
          worst = std::max(worst, std::max(std::abs(at.column_1.c1[k] - image.c1[k]),
                                           std::abs(at.column_1.c2[k] - image.c2[k])) /
                                      s);
        }
      }
      const cd lam(0.8, 0.6);
      const JostPair plus = solve_jost(pot, SpectralPoint::make(lam), Side::Minus);
      const JostPair minus = solve_jost(pot, SpectralPoint::make(-lam), Side::Minus);
      for (int k = 0; k < grid.n_points; ++k) {
        const double s = 1.0 + std::abs(plus.column_1.c1[k]) + std::abs(plus.column_1.c2[k]);
        worst = std::max(worst, std::abs(plus.column_1.c1[k] - minus.column_1.c1[k]) / s);
        worst = std::max(worst, std::abs(plus.column_1.c2[k] + minus.column_1.c2[k]) / s);
      }
    }
    return worst;
  });

  // 4. |C| = 1 for 100 random seeds
  h.run("unit_modulus_C", 1e-12, [&](std::string*) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const SpatialGrid small = SpatialGrid::make(10.0, 64);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
      const cd l1(std::abs(u(rng)) + 0.05, std::abs(u(rng)) + 0.05);
      const cd f(u(rng), u(rng)), g(u(rng), u(rng));
      if (std::abs(f) + std::abs(g) < 0.1) continue;
      ComplexVec2Field phi;
      phi.grid = small;
      phi.c1.assign(small.n_points, f);
      phi.c2.assign(small.n_points, g);
      const DTCoefficients co = dt_coefficients(
          DarbouxSeed::from_field(l1, phi, SeedProvenance::VacuumExplicit), tol.m_floor);
      for (const cd& c : co.C) worst = std::max(worst, std::abs(std::abs(c) - 1.0));
      ++done;
    }
    return worst;
  });

  // 5. removal/re-addition round trip on a one-eigenvalue sech-type potential
  h.run("dt_round_trip", 1e-6, [&](std::string* detail) {
    const Potential pot =
        sampled(grid, [](double x) { return cd(1.6 / std::cosh(x), 0.0); });
    const auto recs = find_eigenvalues(pot, BoxSpec{0.06, 0.06, 3.0, 3.0}, tol);
    if (recs.size() != 1)
      throw Error(ErrorKind::Numerical,
                  "expected one eigenvalue, found " + std::to_string(recs.size()));
    const SpectralPoint z = recs[0].lambda;
    *detail = "eigenvalue " + std::to_string(z.lambda.real()) + "+" +
              std::to_string(z.lambda.imag()) + "i";
    const DarbouxSeed seed = eigenvalue_seed(pot, z, tol.eigen_tol);
    const Potential removed = apply_dt(pot, seed, tol.m_floor);
    const ComplexVec2Field inv = inverse_dt_seed(seed, tol.m_floor);
    const Potential restored = apply_dt(
        removed, DarbouxSeed::from_field(z.lambda, inv, SeedProvenance::InverseFormula),
        tol.m_floor);
    return sup_diff(restored.q, pot.q);
  });

  // 6. scattering-data map against direct scattering of the emitted potential
  h.run("scattering_map", 1e-6, [&](std::string*) {
    const Potential pot =
        sampled(grid, [](double x) { return cd(1.6 / std::cosh(x), 0.0); });
    const auto recs = find_eigenvalues(pot, BoxSpec{0.06, 0.06, 3.0, 3.0}, tol);
    const cd z = recs.at(0).lambda.lambda;
    const Potential removed =
        apply_dt(pot, eigenvalue_seed(pot, recs[0].lambda, tol.eigen_tol), tol.m_floor);
    const ContourSpec spec{ContourSpec::Kind::Real, 0.3, 2.2, 32};
    const ScatteringCurve before = scattering_curve(pot, spec.points(), tol, cfg.threads);
    const ScatteringCurve predicted =
        map_scattering_data(before, z, MapDirection::Remove, tol.resonance_tol);
    const ScatteringCurve after = scattering_curve(removed, spec.points(), tol, cfg.threads);
    double worst = 0.0;
    for (std::size_t j = 0; j < after.samples.size(); ++j) {
      worst = std::max(worst, std::abs(predicted.samples[j].a - after.samples[j].a));
      worst = std::max(worst, std::abs(predicted.samples[j].b - after.samples[j].b));
    }
    return worst;
  });

  // 7. eigenvalue add/remove bookkeeping: Z1 -> Z0 and Z2 construction
  h.run("eigenvalue_bookkeeping", 1e-4, [&](std::string* detail) {
    const BoxSpec box{0.1, 0.1, 2.0, 2.0};
    const Potential sol = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, grid);
    const auto recs = find_eigenvalues(sol, box, tol);
    if (recs.size() != 1)
      throw Error(ErrorKind::Numerical,
                  "Z1 field produced " + std::to_string(recs.size()) + " records");
    double worst = std::abs(recs[0].lambda.lambda - lam1);

    const Potential removed =
        apply_dt(sol, eigenvalue_seed(sol, recs[0].lambda, tol.eigen_tol), tol.m_floor);
    if (!find_eigenvalues(removed, box, tol).empty())
      throw Error(ErrorKind::Numerical, "removal left an eigenvalue behind");

    // two separated additions
    const cd lam2(1.1, 0.35);
    const cd c2_1(std::exp(-9.6), 0.0), c2_2(std::exp(7.7), 0.0);
    const Potential one = soliton_solution(lam1, cd(1, 0), c2_1, 0.0, grid);
    const DarbouxSeed first = time_dependent_seed(lam1, cd(1, 0), c2_1, 0.0, grid);
    const DarbouxSeed vac2 = time_dependent_seed(lam2, cd(1, 0), c2_2, 0.0, grid);
    const ComplexVec2Field pushed = transform_solution(vac2.phi, lam2, first);
    const Potential two = apply_dt(
        one, DarbouxSeed::from_field(lam2, pushed, SeedProvenance::VacuumExplicit),
        tol.m_floor);
    const auto recs2 = find_eigenvalues(two, box, tol);
    if (recs2.size() != 2)
      throw Error(ErrorKind::Numerical,
                  "Z2 field produced " + std::to_string(recs2.size()) + " records");
    worst = std::max(worst, std::abs(recs2[0].lambda.lambda - lam1));
    worst = std::max(worst, std::abs(recs2[1].lambda.lambda - lam2));
    *detail = "counts 1 -> 0 and 2 as expected";
    return worst;
  });

  // 8. removable singularities: new-Jost sup norms on shrinking rings
  h.run("removable_singularities", 10.0, [&](std::string*) {
    const Potential sol = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, grid);
    const cd z = refine_eigenvalue(sol, lam1, tol);
    const DarbouxSeed seed = eigenvalue_seed(sol, SpectralPoint::make(z), tol.eigen_tol);
    std::vector<double> sups;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      double sup = 0.0;
      for (int j = 0; j < 8; ++j) {
        const cd lam = z + eps * std::exp(kI * (2.0 * kPi * j / 8));
        const JostPair bg = solve_jost(sol, SpectralPoint::make(lam), Side::Minus);
        const JostPair out = transform_jost(bg, seed);
        for (int k = 0; k < grid.n_points; k += 7)
          sup = std::max({sup, std::abs(out.column_1.c1[k]), std::abs(out.column_1.c2[k])});
      }
      sups.push_back(sup);
    }
    const double r1 = sups[1] / sups[0], r2 = sups[2] / sups[1];
    return std::max({r1, 1.0 / r1, r2, 1.0 / r2});
  });

  // 9. reflection-coefficient evolution law at t = 0.5
  h.run("reflection_evolution_law", 1e-3, [&](std::string*) {
    Tolerances probe = tol;
    probe.decay_tol = 1e-7;  // dealiasing ringing at the ends of evolved fields
    const Potential q0 = soliton_plus_radiation(grid, lam1, 0.05);
    const double T = 0.5, dt = 1.25e-3;
    const ContourSpec spec{ContourSpec::Kind::Real, 0.3, 2.0, 32};
    const std::vector<cd> contour = spec.points();

    const ReflectionSamples l0 =
        reflection_coefficient(scattering_curve(q0, contour, probe, cfg.threads),
                               tol.resonance_tol);
    const ReflectionSamples predicted = evolve_reflection(l0, T);

    const Trajectory traj = run_evolution(q0, T, dt, {});
    if (!traj.completed) throw Error(ErrorKind::Blowup, traj.stop_reason);
    const ReflectionSamples measured = reflection_coefficient(
        scattering_curve(traj.snapshots.back(), contour, probe, cfg.threads),
        tol.resonance_tol);
    double worst = 0.0;
    for (std::size_t j = 0; j < measured.l.size(); ++j)
      worst = std::max(worst, std::abs(measured.l[j] - predicted.l[j]));
    return worst;
  });

  // 10. dynamical soliton oracle: analytic family, mass drift, temporal order
  h.run("soliton_dynamics", 1e-3, [&](std::string* detail) {
    const Potential q0 = soliton_solution(lam1, cd(1, 0), cd(1, 0), 0.0, grid);
    const double T = 0.25, dt = 1.25e-3;
    const Trajectory traj = run_evolution(q0, T, dt, {});
    if (!traj.completed) throw Error(ErrorKind::Blowup, traj.stop_reason);
    const Potential expect = soliton_solution(lam1, cd(1, 0), cd(1, 0), T, grid);
    const double sup_err = sup_diff(traj.snapshots.back().q, expect.q);

    const double m0 = traj.diagnostics.front().mass, m1 = traj.diagnostics.back().mass;
    const double drift = std::abs(m1 - m0) / m0;
    if (drift > 1e-8)
      throw Error(ErrorKind::Numerical, "mass drift " + std::to_string(drift));

    const Potential c0 = sampled(grid, [](double x) {
      return 1.2 * std::exp(-x * x / 2.0) * std::exp(cd(0.0, 1.5 * x));
    });
    auto advance = [&](double dtc) {
      Potential p = c0;
      const int n = static_cast<int>(std::round(0.05 / dtc));
      for (int s = 0; s < n; ++s) p = pde_step(p, dtc);
      return p;
    };
    const Potential a = advance(5e-4), b = advance(2.5e-4), c = advance(1.25e-4);
    const double order = std::log2(sup_diff(a.q, b.q) / sup_diff(b.q, c.q));
    if (order < 3.8)
      throw Error(ErrorKind::Numerical, "temporal order " + std::to_string(order));
    *detail = "mass drift " + std::to_string(drift) + ", temporal order " +
              std::to_string(order);
    return sup_err;
  });

  // 11. commutation square: remove-then-evolve vs evolve-then-remove
  h.run("commutation_square", 1e-3, [&](std::string*) {
    Tolerances probe = tol;
    probe.decay_tol = 1e-7;
    JostOptions jopt;
    jopt.decay_tol = 1e-7;
    const Potential q0 = soliton_plus_radiation(grid, lam1, 0.05);
    const double T = 0.5, dt = 1.25e-3;

    const cd z0 = refine_eigenvalue(q0, lam1, probe);
    const Potential removed0 =
        apply_dt(q0, eigenvalue_seed(q0, SpectralPoint::make(z0), tol.eigen_tol, jopt),
                 tol.m_floor);
    const Trajectory pathA = run_evolution(removed0, T, dt, {});
    if (!pathA.completed) throw Error(ErrorKind::Blowup, pathA.stop_reason);

    const Trajectory pathB = run_evolution(q0, T, dt, {});
    if (!pathB.completed) throw Error(ErrorKind::Blowup, pathB.stop_reason);
    const Potential& evolved = pathB.snapshots.back();
    const cd zT = refine_eigenvalue(evolved, z0, probe);
    const Potential removedT = apply_dt(
        evolved, eigenvalue_seed(evolved, SpectralPoint::make(zT), tol.eigen_tol, jopt),
        tol.m_floor);
    return sup_diff(pathA.snapshots.back().q, removedT.q);
  });

  return h.results;
}

std::vector<CheckResult> run_verify(const RunConfig& cfg) {
  Harness h;
  h.results = run_acceptance(cfg);
  const Tolerances& tol = cfg.tol;
  const SpatialGrid grid = SpatialGrid::make(30.0, 1024);

  h.run("quadrant_partition", 0.0, [&](std::string*) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
      const cd z(u(rng), u(rng));
      if (z == cd(0, 0)) continue;
      SpectralPoint::make(z);  // throws on any gap in the partition
    }
    return 0.0;
  });

  h.run("bilinear_values", 1e-14, [&](std::string*) {
    const cd lam(0.8, 0.6);
    double worst = std::abs(bilinear_m(lam, cd(1, 0), cd(0, 0), cd(1, 0), cd(0, 0)) - lam);
    worst = std::max(worst, std::abs(bilinear_m(lam, cd(0, 0), cd(1, 0), cd(0, 0), cd(1, 0)) -
                                     std::conj(lam)));
    worst = std::max(worst,
                     std::abs(bilinear_m(cd(0, 1), cd(1, 0), cd(1, 0), cd(1, 0), cd(1, 0))));
    return worst;
  });

  h.run("reflection_identity", 1e-6, [&](std::string*) {
    const Potential pot =
        sampled(grid, [](double x) { return cd(2.0 / std::cosh(x), 0.0); });
    const ContourSpec spec{ContourSpec::Kind::Real, 0.4, 2.0, 12};
    const ScatteringCurve c = scattering_curve(pot, spec.points(), tol, cfg.threads);
    const ReflectionSamples refl = reflection_coefficient(c, tol.resonance_tol);
    double worst = 0.0;
    for (std::size_t j = 0; j < refl.l.size(); ++j)
      worst = std::max(worst, std::abs(std::norm(refl.l[j]) -
                                       (1.0 / std::norm(c.samples[j].a) - 1.0)));
    return worst;
  });

  h.run("reflection_group_law", 1e-14, [&](std::string*) {
    ReflectionSamples l0;
    l0.lambda = {cd(0.5, 0), cd(1.7, 0), cd(0, 0.8)};
    l0.l = {cd(0.3, -0.2), cd(-0.1, 0.05), cd(0.2, 0.9)};
    const ReflectionSamples two = evolve_reflection(evolve_reflection(l0, 0.21), 0.16);
    const ReflectionSamples one = evolve_reflection(l0, 0.37);
    double worst = 0.0;
    for (std::size_t j = 0; j < l0.l.size(); ++j) {
      worst = std::max(worst, std::abs(two.l[j] - one.l[j]));
      worst = std::max(worst, std::abs(std::abs(one.l[j]) - std::abs(l0.l[j])));
    }
    return worst;
  });

  h.run("map_remove_add_identity", 1e-14, [&](std::string*) {
    const Potential pot =
        sampled(grid, [](double x) { return cd(1.6 / std::cosh(x), 0.0); });
    const ContourSpec spec{ContourSpec::Kind::Real, 0.4, 2.0, 8};
    const ScatteringCurve c = scattering_curve(pot, spec.points(), tol, cfg.threads);
    const cd z(0.37, 0.15);
    const ScatteringCurve fwd = map_scattering_data(c, z, MapDirection::Remove);
    const ScatteringCurve back = map_scattering_data(fwd, z, MapDirection::Add);
    double worst = 0.0;
    for (std::size_t j = 0; j < c.samples.size(); ++j) {
      worst = std::max(worst, std::abs(back.samples[j].a - c.samples[j].a));
      worst = std::max(worst, std::abs(back.samples[j].b - c.samples[j].b));
    }
    return worst;
  });

  return h.results;
}

}  // namespace cll
