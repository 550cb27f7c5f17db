#pragma once

#include "cll/types.hpp"

namespace cll {

enum class Side { Minus, Plus };

const char* to_string(Side s);

// Normalized Jost solutions of the gauge-transformed spectral problem
//   psi_x + i lambda^2 [sigma3, psi] = ( (i/4) q r sigma3 + lambda Q ) psi,
// integrated from the grid end where psi_side tends to the identity.
// column_1 holds the varphi column, column_2 the phi column; c1/c2 of each
// field are the vector components at every sample.
struct JostPair {
  SpectralPoint lambda;
  Side side;
  ComplexVec2Field column_1;
  ComplexVec2Field column_2;
  double residual = 0.0;  // step-halving estimate of the march error
  // Off the continuous spectrum only one column of each family is analytic
  // and trusted; the other is computed but may grow exponentially.
  bool column_1_analytic = true;
  bool column_2_analytic = true;
};

struct JostOptions {
  double bc_tol = 1e-8;
  double decay_tol = 1e-10;
  bool enforce_decay = true;
  int substeps = 0;  // 0: chosen from the per-cell phase 2|lambda|^2 h
  double blowup_limit = 1e150;
  bool with_residual = true;  // march twice (m and 2m substeps) for the estimate
};

JostPair solve_jost(const Potential& pot, SpectralPoint lambda, Side side,
                    const JostOptions& opt = {});

// March a single column (1 or 2). Used where the complementary column would
// grow exponentially, e.g. a(lambda) evaluations deep in C_I.
ComplexVec2Field solve_jost_column(const Potential& pot, SpectralPoint lambda, Side side,
                                   int column, const JostOptions& opt = {});

// a(lambda) read off the right-end limit of the minus-side varphi column.
// Valid on the continuous spectrum and in C_I u C_III.
cd jost_a_coefficient(const Potential& pot, SpectralPoint lambda, const JostOptions& opt = {});

// Sup over interior samples of |y' - RHS| for a candidate gauged column,
// derivatives by 6th-order centered differences. column_index selects the
// commutator pattern (1: varphi-type, 2: phi-type).
double lax_residual(const ComplexVec2Field& column, const Potential& pot, cd lambda,
                    int column_index);

struct EigenRatio {
  cd gamma;         // varphi_-(x) e^{-i l1^2 x} = gamma phi_+(x) e^{+i l1^2 x}
  double residual;  // relative sup-norm proportionality defect over the interior
};

// Norming constant at an eigenvalue, fitted as a weighted least-squares ratio
// over the trust region where both one-sided columns carry the bound state.
// Requires |a(lambda1)| <= eigen_tol.
EigenRatio jost_eigenvalue_ratio(const Potential& pot, SpectralPoint lambda1,
                                 double eigen_tol = 1e-6, const JostOptions& opt = {});

// Bound state at a refined eigenvalue assembled piecewise from the two
// one-sided marches (each used on the side where its growing admixture has
// not yet been amplified), matched through gamma.
ComplexVec2Field assemble_bound_state(const Potential& pot, SpectralPoint lambda1, cd gamma,
                                      const JostOptions& opt = {});

// (f, g) -> (conj(g), -conj(f)); maps a solution of the spectral problem at
// lambda to one at conj(lambda) under the reduction r = conj(q).
ComplexVec2Field conjugate_symmetry_image(const ComplexVec2Field& v);

}  // namespace cll
