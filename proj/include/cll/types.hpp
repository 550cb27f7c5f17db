#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cll {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  Parse,         // malformed input file
  Io,            // filesystem failure
  Precondition,  // caller violated an operation contract
  Degenerate,    // vanishing denominator / degenerate seed
  NotEigenvalue, // |a(lambda)| above eigen_tol where a zero was required
  Numerical,     // internal consistency check failed
  Cfl,           // time step too large for the spatial resolution
  Blowup         // non-finite values during integration
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Uniform lattice x_k = -L + k h with h = 2L/n; n is even so the lattice is
// FFT-compatible and x = 0 is a sample.
struct SpatialGrid {
  double half_width = 30.0;
  int n_points = 1024;

  double spacing() const { return 2.0 * half_width / n_points; }
  double x(int k) const { return -half_width + k * spacing(); }
  std::vector<double> samples() const;
  bool operator==(const SpatialGrid& o) const {
    return half_width == o.half_width && n_points == o.n_points;
  }

  // Validates n >= 16, n even, L > 0.
  static SpatialGrid make(double half_width, int n_points);
};

enum class Quadrant { CI, CII, CIII, CIV, Continuous };

const char* to_string(Quadrant q);

// Nonzero spectral parameter with its quadrant tag. Points within axis_tol of
// the real or imaginary axis are tagged as continuous spectrum.
struct SpectralPoint {
  cd lambda;
  Quadrant quadrant;

  static constexpr double axis_tol = 1e-12;

  bool on_continuous_spectrum() const { return quadrant == Quadrant::Continuous; }
  static SpectralPoint make(cd lambda);
};

// Two complex components sampled over a grid; holds 2-vector solutions of the
// spectral problem and Jost columns.
struct ComplexVec2Field {
  SpatialGrid grid;
  std::vector<cd> c1, c2;

  static ComplexVec2Field zeros(const SpatialGrid& g);
  // Validates lengths and finiteness.
  static ComplexVec2Field make(const SpatialGrid& g, std::vector<cd> c1, std::vector<cd> c2);
};

// Complex field q (and r) on a grid. With the reduction flag set, r_k is kept
// equal to conj(q_k) exactly and is never stored independently wrong.
struct Potential {
  SpatialGrid grid;
  std::vector<cd> q;
  std::vector<cd> r;
  bool reduced = true;

  double end_amplitude() const;  // max |q| over the two boundary samples
  double sup_norm() const;
  double mass() const;           // trapezoid of |q|^2

  static Potential zero(const SpatialGrid& g);
  static Potential reduced_from(const SpatialGrid& g, std::vector<cd> q);
  static Potential coupled(const SpatialGrid& g, std::vector<cd> q, std::vector<cd> r);
};

bool all_finite(const std::vector<cd>& v);

}  // namespace cll
