#include "cll/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace cll {

namespace {
constexpr cd kI{0.0, 1.0};
}

ReflectionSamples evolve_reflection(const ReflectionSamples& l0, double t) {
  // The phase sign follows from the time Lax matrix at infinity
  // (V -> -2 i lambda^4 sigma3) applied to the scattering relation, and is
  // confirmed by the Born limit of the integrator: b(t) = b(0) e^{+4 i l^4 t}
  // while a is constant.
  ReflectionSamples out = l0;
  for (std::size_t j = 0; j < out.l.size(); ++j) {
    const cd l4 = std::pow(out.lambda[j], 4);
    out.l[j] *= std::exp(4.0 * kI * l4 * t);
  }
  return out;
}

DarbouxSeed time_dependent_seed(cd lambda1, cd c1, cd c2, double t, const SpatialGrid& grid) {
  SpectralPoint p = SpectralPoint::make(lambda1);
  if (p.quadrant != Quadrant::CI)
    throw Error(ErrorKind::Precondition, "soliton seed requires lambda1 in C_I");
  return DarbouxSeed::vacuum(grid, lambda1, c1, c2, t);
}

Potential soliton_solution(cd lambda1, cd c1, cd c2, double t, const SpatialGrid& grid) {
  return apply_dt(Potential::zero(grid), time_dependent_seed(lambda1, c1, c2, t, grid));
}

namespace {

struct Stepper {
  const SpatialGrid grid;
  PdeOptions opt;
  Fft fft;
  std::vector<double> k;     // wavenumbers
  std::vector<double> mask;  // 2/3-rule truncation
  std::vector<cd> qh, dqh, work, qx, qxx;

  explicit Stepper(const SpatialGrid& g, const PdeOptions& o)
      : grid(g), opt(o), fft(g.n_points) {
    const int n = g.n_points;
    k.resize(n);
    mask.resize(n);
    const double dk = kPi / g.half_width;
    const int kmax_idx = n / 2;
    for (int j = 0; j < n; ++j) {
      const int m = j <= n / 2 ? j : j - n;
      k[j] = dk * m;
      mask[j] = (!opt.dealias || std::abs(m) <= (2 * kmax_idx) / 3) ? 1.0 : 0.0;
    }
    qh.resize(n);
    dqh.resize(n);
    work.resize(n);
    qx.resize(n);
    qxx.resize(n);
  }

  double kmax() const {
    const int n = grid.n_points;
    const int used = opt.dealias ? (2 * (n / 2)) / 3 : n / 2;
    return kPi / grid.half_width * used;
  }

  // rhs = i q_xx - |q|^2 q_x with filtered spectra
  void rhs(const std::vector<cd>& q, std::vector<cd>* out) {
    const int n = grid.n_points;
    fft.forward(q.data(), qh.data());
    for (int j = 0; j < n; ++j) qh[j] *= mask[j];
    for (int j = 0; j < n; ++j) dqh[j] = kI * k[j] * qh[j];
    fft.inverse(dqh.data(), qx.data());
    for (int j = 0; j < n; ++j) dqh[j] = -k[j] * k[j] * qh[j];
    fft.inverse(dqh.data(), qxx.data());
    fft.inverse(qh.data(), work.data());  // filtered q
    for (int j = 0; j < n; ++j)
      (*out)[j] = kI * qxx[j] - std::norm(work[j]) * qx[j];
  }

  void filter_state(std::vector<cd>* q) {
    if (!opt.dealias) return;
    fft.forward(q->data(), qh.data());
    for (int j = 0; j < grid.n_points; ++j) qh[j] *= mask[j];
    fft.inverse(qh.data(), q->data());
  }

  std::vector<cd> step(const std::vector<cd>& q, double dt) {
    const int n = grid.n_points;
    std::vector<cd> k1(n), k2(n), k3(n), k4(n), tmp(n), out(n);
    rhs(q, &k1);
    for (int j = 0; j < n; ++j) tmp[j] = q[j] + 0.5 * dt * k1[j];
    rhs(tmp, &k2);
    for (int j = 0; j < n; ++j) tmp[j] = q[j] + 0.5 * dt * k2[j];
    rhs(tmp, &k3);
    for (int j = 0; j < n; ++j) tmp[j] = q[j] + dt * k3[j];
    rhs(tmp, &k4);
    for (int j = 0; j < n; ++j)
      out[j] = q[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    filter_state(&out);
    return out;
  }
};

void check_state(const std::vector<cd>& q, double blowup_sup, int step_index) {
  for (const cd& z : q) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > blowup_sup)
      throw Error(ErrorKind::Blowup,
                  "field blew up at step " + std::to_string(step_index));
  }
}

}  // namespace

double max_stable_dt(const SpatialGrid& grid, const PdeOptions& opt) {
  Stepper s(grid, opt);
  const double kmax = s.kmax();
  // RK4 imaginary-axis stability limit 2*sqrt(2) against the i k^2 symbol.
  return opt.cfl_safety * 2.8284271247461903 / (kmax * kmax);
}

Potential pde_step(const Potential& pot, double dt, const PdeOptions& opt) {
  if (!pot.reduced)
    throw Error(ErrorKind::Precondition, "pde_step integrates the reduced equation");
  if (opt.enforce_decay && pot.end_amplitude() > opt.decay_tol)
    throw Error(ErrorKind::Precondition,
                "field does not meet the periodic-compatible decay tolerance");
  if (!(dt > 0.0)) throw Error(ErrorKind::Precondition, "dt must be positive");
  if (dt > max_stable_dt(pot.grid, opt))
    throw Error(ErrorKind::Cfl, "dt = " + std::to_string(dt) + " exceeds the stable limit " +
                                    std::to_string(max_stable_dt(pot.grid, opt)));
  Stepper s(pot.grid, opt);
  std::vector<cd> q = s.step(pot.q, dt);
  check_state(q, opt.blowup_sup, 0);
  return Potential::reduced_from(pot.grid, std::move(q));
}

cd refine_eigenvalue(const Potential& pot, cd guess, const Tolerances& tol) {
  JostOptions jopt;
  jopt.decay_tol = tol.decay_tol;
  auto a = [&](cd z) { return jost_a_coefficient(pot, SpectralPoint::make(z), jopt); };
  cd z = guess;
  const double dstep = 1e-5;
  for (int it = 0; it < 60; ++it) {
    const cd f = a(z);
    if (std::abs(f) <= 1e-9) return z;
    const cd fp = z.real() <= 10.0 * dstep
                      ? (a(z + cd(0.0, dstep)) - a(z - cd(0.0, dstep))) / cd(0.0, 2.0 * dstep)
                      : (a(z + dstep) - a(z - dstep)) / (2.0 * dstep);
    if (std::abs(fp) < 1e-14)
      throw Error(ErrorKind::Numerical, "eigenvalue refinement stalled (a' ~ 0)");
    z -= f / fp;
    if (!(z.real() > 1e-4 && z.imag() > 1e-4))
      throw Error(ErrorKind::Numerical, "eigenvalue refinement left C_I");
  }
  throw Error(ErrorKind::Numerical, "eigenvalue refinement did not converge");
}

Trajectory run_evolution(const Potential& q0, double T, double dt, const EvolveOptions& opt) {
  if (!(T >= 0.0) || !(dt > 0.0))
    throw Error(ErrorKind::Precondition, "need T >= 0 and dt > 0");
  if (dt > max_stable_dt(q0.grid, opt.pde))
    throw Error(ErrorKind::Cfl, "dt exceeds the stable limit " +
                                    std::to_string(max_stable_dt(q0.grid, opt.pde)));
  Stepper stepper(q0.grid, opt.pde);

  Trajectory traj;
  const int n_steps = static_cast<int>(std::ceil(T / dt - 1e-12));

  auto diagnose = [&](const Potential& p, double t) {
    DiagnosticsRow row;
    row.t = t;
    row.mass = p.mass();
    row.sup_norm = p.sup_norm();
    if (!opt.probe_lambdas.empty()) {
      const ScatteringCurve c = scattering_curve(p, opt.probe_lambdas, opt.tol);
      for (const auto& s : c.samples) row.detS_probe = std::max(row.detS_probe, s.detS_residual);
    }
    if (opt.track_eigenvalue) {
      const cd z = refine_eigenvalue(p, opt.eigen_reference, opt.tol);
      row.eigen_drift = std::abs(z - opt.eigen_reference);
    }
    traj.diagnostics.push_back(row);
  };

  auto snapshot = [&](const Potential& p, double t) {
    traj.snapshot_times.push_back(t);
    traj.snapshots.push_back(p);
    diagnose(p, t);
  };

  Potential cur = q0;
  snapshot(cur, 0.0);
  double t = 0.0;
  try {
    for (int step = 0; step < n_steps; ++step) {
      const double this_dt = std::min(dt, T - t);
      if (this_dt <= 0.0) break;
      std::vector<cd> q = stepper.step(cur.q, this_dt);
      check_state(q, opt.pde.blowup_sup, step);
      cur = Potential::reduced_from(q0.grid, std::move(q));
      t += this_dt;
      ++traj.steps;
      if (opt.snap_every > 0 && (step + 1) % opt.snap_every == 0 && step + 1 < n_steps)
        snapshot(cur, t);
    }
    snapshot(cur, t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Blowup) throw;
    traj.completed = false;
    traj.stop_reason = e.what();
    snapshot(cur, t);  // last finite state
  }
  return traj;
}

}  // namespace cll
