#pragma once

#include <functional>

#include "cll/jost.hpp"
#include "cll/types.hpp"

// Test-only reference computations, kept independent of the solver paths they
// audit: the Jost oracle iterates the raw Volterra equations with Simpson
// quadrature instead of marching the ODE, and the closed forms come from
// substituting exponential seeds into the transformation formulas by hand.
namespace cll::oracle {

using Profile = std::function<cd(double)>;

struct VolterraResult {
  ComplexVec2Field column_1;
  ComplexVec2Field column_2;
  int iterations = 0;
};

// Picard iteration of
//   psi_-(x) = I + Int_{-L}^x e^{-i l^2 (x-y) ad sigma3} Utilde(y) psi_-(y) dy
// (mirrored for the plus side) on a grid refined by `refine`, sampled back on
// the base grid.
VolterraResult volterra_jost(const SpatialGrid& base, const Profile& q, const Profile& r,
                             cd lambda, Side side, int refine);

// Richardson extrapolation of the refine-2 and refine-4 solutions (both
// fourth order) for a sixth-order reference.
VolterraResult volterra_jost_richardson(const SpatialGrid& base, const Profile& q,
                                        const Profile& r, cd lambda, Side side);

// First Born approximation b ~ -lambda Int e^{-2 i lambda^2 y} r(y) dy by
// composite Simpson on a refined grid.
cd born_b(const SpatialGrid& grid, const Profile& r, cd lambda, int refine = 4);

// Vacuum one-soliton value at (t, x) from the exponential seed substituted
// into q -> C q - 2i D with q = 0.
cd vacuum_soliton_value(cd lambda1, cd c1, cd c2, double t, double x);

// Two distinct exponential seeds substituted into the general two-fold map on
// the vacuum; returns (q1, r1) at x.
std::pair<cd, cd> vacuum_two_seed_value(cd lambda1, cd c1a, cd c2a, cd lambda2, cd c1b,
                                        cd c2b, double x);

// Composite Simpson of a complex integrand over [-L, L-h] on a refined grid.
cd simpson(const SpatialGrid& grid, const std::function<cd(double)>& f, int refine = 4);

}  // namespace cll::oracle
