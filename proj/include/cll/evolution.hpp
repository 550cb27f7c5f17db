#pragma once

#include <vector>

#include "cll/darboux.hpp"
#include "cll/scattering.hpp"
#include "cll/types.hpp"

namespace cll {

// l(t, lambda) = l(0, lambda) e^{4 i lambda^4 t}; lambda^4 is real on the
// continuous spectrum so the factor is a pure phase there.
ReflectionSamples evolve_reflection(const ReflectionSamples& l0, double t);

// Vacuum-background seed f = c1 e^{-i(l1^2 x + 2 l1^4 t)},
// g = c2 e^{+i(l1^2 x + 2 l1^4 t)}; solves both vacuum Lax equations.
DarbouxSeed time_dependent_seed(cd lambda1, cd c1, cd c2, double t, const SpatialGrid& grid);

// One-soliton field: the Darboux map applied to the vacuum with the
// time-dependent seed.
Potential soliton_solution(cd lambda1, cd c1, cd c2, double t, const SpatialGrid& grid);

struct PdeOptions {
  double cfl_safety = 0.8;
  bool dealias = true;      // 2/3-rule truncation
  double blowup_sup = 1e8;  // sup-norm abort threshold
  // Looser than the scattering default: the 2/3-rule truncation itself leaves
  // ringing around 1e-10 at the grid ends.
  double decay_tol = 1e-8;
  bool enforce_decay = true;
};

// Largest time step the RK4 stability region admits for this grid.
double max_stable_dt(const SpatialGrid& grid, const PdeOptions& opt = {});

// One method-of-lines step of q_t = i q_xx - |q|^2 q_x: Fourier derivatives
// on the periodic extension, classical RK4 in time.
Potential pde_step(const Potential& pot, double dt, const PdeOptions& opt = {});

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;        // trapezoid of |q|^2
  double sup_norm = 0.0;
  double detS_probe = 0.0;  // worst det-S residual over the probe contour
  double eigen_drift = 0.0; // |refined eigenvalue - reference|, when tracked
};

struct EvolveOptions {
  PdeOptions pde;
  int snap_every = 0;  // snapshot/diagnostic cadence in steps; 0 = ends only
  std::vector<cd> probe_lambdas;
  bool track_eigenvalue = false;
  cd eigen_reference{0.0, 0.0};
  Tolerances tol;
};

struct Trajectory {
  std::vector<double> snapshot_times;
  std::vector<Potential> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  bool completed = true;  // false when stopped early on blow-up
  int steps = 0;
  std::string stop_reason;
};

Trajectory run_evolution(const Potential& q0, double T, double dt,
                         const EvolveOptions& opt = {});

// Newton refinement of an isolated zero of a near the guess (|a| <= 1e-9).
cd refine_eigenvalue(const Potential& pot, cd guess, const Tolerances& tol = {});

}  // namespace cll
