#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cll/config.hpp"
#include "cll/jost.hpp"
#include "cll/types.hpp"

namespace cll {

struct ScatteringPoint {
  SpectralPoint lambda;
  cd a;
  cd b;
  cd l;                      // b / a, only meaningful when l_valid
  double detS_residual;      // |a(l) conj(a(lbar)) + b(l) conj(b(lbar)) - 1|
  bool l_valid;
};

struct ScatteringCurve {
  std::vector<ScatteringPoint> samples;
};

// Contour on the continuous spectrum R u iR avoiding 0.
struct ContourSpec {
  enum class Kind { Real, Imaginary, Mixed };
  Kind kind = Kind::Real;
  double lo = 0.1;
  double hi = 3.0;
  int count = 64;

  std::vector<cd> points() const;
  // "real:0.1:3:64", "imag:0.1:3:64", "mixed:0.1:3:64"
  static ContourSpec parse(const std::string& spec);
};

struct ScatteringResult {
  cd a;
  std::optional<cd> b;  // only on the continuous spectrum
};

// a from the right-end limit of the minus-side march, cross-checked against
// the Wronskian form at x = 0; b likewise when lambda is on the continuous
// spectrum. The cross-check failing beyond xindep_tol is a numerical error.
ScatteringResult scattering_coefficients(const Potential& pot, SpectralPoint lambda,
                                         const Tolerances& tol = {},
                                         double xindep_tol = 1e-7);

ScatteringCurve scattering_curve(const Potential& pot, const std::vector<cd>& contour,
                                 const Tolerances& tol = {}, int threads = 1);

struct ReflectionSamples {
  std::vector<cd> lambda;
  std::vector<cd> l;
  std::vector<cd> dropped;  // contour points lost to |a| <= resonance_tol
};

ReflectionSamples reflection_coefficient(const ScatteringCurve& curve,
                                         double resonance_tol = 1e-6);

struct EigenvalueRecord {
  SpectralPoint lambda;  // refined zero of a in C_I
  double a_abs;          // |a| at the refined point
  cd a_prime;            // central-difference derivative, step 1e-5
  cd gamma;              // norming constant from the Jost proportionality
  bool simple;           // |a'| > simple_tol
};

struct BoxSpec {
  double re_lo, im_lo, re_hi, im_hi;
};

// Argument-principle count over the box boundary followed by Newton
// refinement of each isolated zero; the two counts must agree.
std::vector<EigenvalueRecord> find_eigenvalues(const Potential& pot, const BoxSpec& box,
                                               const Tolerances& tol = {});

// Winding number of a around the box boundary (adaptive trapezoid phase sum).
int winding_number(const Potential& pot, const BoxSpec& box, const Tolerances& tol = {});

// Z_N classification: N = number of eigenvalue records in the box.
int z_n_tag(const Potential& pot, const BoxSpec& box, const Tolerances& tol = {});

}  // namespace cll
