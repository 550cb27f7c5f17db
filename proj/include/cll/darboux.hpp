#pragma once

#include <utility>
#include <vector>

#include "cll/jost.hpp"
#include "cll/scattering.hpp"
#include "cll/types.hpp"

namespace cll {

enum class SeedProvenance { VacuumExplicit, JostMinus, JostPlus, InverseFormula };

// Vector solution Phi1 = (f1, g1)^T of the ungauged spectral problem at
// lambda1, the object that parameterizes a two-fold Darboux transformation.
// Seeds are defined up to scaling (constant or common x-dependent factor);
// the coefficient fields below only see the projective content.
struct DarbouxSeed {
  SpectralPoint lambda1;  // off the continuous spectrum
  ComplexVec2Field phi;
  SeedProvenance provenance = SeedProvenance::VacuumExplicit;
  cd c1{1.0, 0.0}, c2{1.0, 0.0};  // recorded for vacuum-explicit seeds

  // f1 = c1 e^{-i(l1^2 x + 2 l1^4 t)}, g1 = c2 e^{+i(l1^2 x + 2 l1^4 t)}
  static DarbouxSeed vacuum(const SpatialGrid& grid, cd lambda1, cd c1, cd c2, double t = 0.0);
  // Fold the gauge factor into the requested column of a Jost pair.
  static DarbouxSeed from_jost(const JostPair& jp, int column);
  static DarbouxSeed from_field(cd lambda1, ComplexVec2Field phi, SeedProvenance prov);
};

// Solution at conj(lambda1) under the reduction: (f,g) -> (conj g, -conj f).
DarbouxSeed symmetry_image_seed(const DarbouxSeed& seed);

// Removal seed at a refined eigenvalue: the piecewise bound state assembled
// from both one-sided Jost marches. The raw one-sided column alone carries an
// exponentially amplified admixture of the growing solution near its far end
// (|a| at the refined zero is ~1e-9, not 0) and would leave a parasitic
// soliton behind.
DarbouxSeed eigenvalue_seed(const Potential& pot, SpectralPoint lambda1,
                            double eigen_tol = 1e-6, const JostOptions& jopt = {});

// m_lambda(f, g) = lambda f1 conj(g1) + conj(lambda) f2 conj(g2)
cd bilinear_m(cd lambda, cd f1, cd f2, cd g1, cd g2);

struct DTCoefficients {
  SpatialGrid grid;
  std::vector<cd> C;  // m_{conj l1} / m_{l1}, unit modulus
  std::vector<cd> D;  // A / m_{l1}
  std::vector<cd> A;  // (l1^2 - conj(l1)^2) f1 conj(g1)
};

DTCoefficients dt_coefficients(const DarbouxSeed& seed, double m_floor = 1e-12);

// q -> C q - 2i D on the same grid; keeps the reduction.
Potential apply_dt(const Potential& pot, const DarbouxSeed& seed, double m_floor = 1e-12);

// General coupled two-fold map with independent seeds at lambda1, lambda2;
// returns the pair (q1, r1).
std::pair<std::vector<cd>, std::vector<cd>> general_two_fold_dt(
    const Potential& pot, const ComplexVec2Field& phi1, const ComplexVec2Field& phi2,
    cd lambda1, cd lambda2, double denom_floor = 1e-12);

struct Mat2Field {
  SpatialGrid grid;
  std::vector<cd> t11, t12, t21, t22;
};

struct DarbouxMatrixOptions {
  double sing_eps = 1e-6;
  double m_floor = 1e-12;
  bool anchor_left = true;  // half-angle branch anchored at the left grid end
  bool regularize = false;  // project lambda onto the sing_eps ring instead of failing
};

// Boundary-normalized Darboux matrix T(Phi1, lambda, lambda1). The square
// root of C is taken as the half-angle of the phase-unwrapped C along x with
// the anchor angle in (-pi, pi]; the overall sign of T is fixed by that
// choice and is reported nowhere else.
Mat2Field darboux_matrix(const DarbouxSeed& seed, cd lambda,
                         const DarbouxMatrixOptions& opt = {});

// Push any ungauged solution at mu through the transformation.
ComplexVec2Field transform_solution(const ComplexVec2Field& sol, cd mu,
                                    const DarbouxSeed& seed,
                                    const DarbouxMatrixOptions& opt = {});

// New Jost pair for the transformed potential. The seed must come from the
// background Jost family matching the pair's side (at an eigenvalue the two
// families are proportional and either works). Columns are sign-normalized
// to +e1/+e2 at their boundary end.
JostPair transform_jost(const JostPair& background, const DarbouxSeed& seed,
                        const DarbouxMatrixOptions& opt = {});

// Inverse seed by the explicit conjugate-swap formula; a solution of the
// spectral problem for the transformed potential at lambda1.
ComplexVec2Field inverse_dt_seed(const DarbouxSeed& seed, double m_floor = 1e-12);

// Inverse seed rebuilt from the new Jost functions and the norming constant.
ComplexVec2Field inverse_seed_from_new_jost(const ComplexVec2Field& new_varphi_minus,
                                            const ComplexVec2Field& new_phi_plus,
                                            cd lambda1, cd gamma, cd a1);

// One-parameter family used when adding a soliton on a general background.
ComplexVec2Field add_seed_from_jost(const ComplexVec2Field& varphi_minus,
                                    const ComplexVec2Field& phi_plus, cd lambda1, cd alpha1);

enum class MapDirection { Remove, Add };

// a-factor (l1/conj l1)(l^2-conj(l1)^2)/(l^2-l1^2) for removal; reciprocal
// for addition. Unit modulus on the continuous spectrum.
cd scattering_a_factor(cd lambda, cd lambda1, MapDirection dir);

ScatteringCurve map_scattering_data(const ScatteringCurve& curve, cd lambda1,
                                    MapDirection dir, double resonance_tol = 1e-6);

}  // namespace cll
