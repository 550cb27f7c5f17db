#include "cll/types.hpp"

#include <cmath>

namespace cll {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NotEigenvalue: return "not_eigenvalue";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Cfl: return "cfl";
    case ErrorKind::Blowup: return "blowup";
  }
  return "unknown";
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::CI: return "C_I";
    case Quadrant::CII: return "C_II";
    case Quadrant::CIII: return "C_III";
    case Quadrant::CIV: return "C_IV";
    case Quadrant::Continuous: return "continuous";
  }
  return "unknown";
}

std::vector<double> SpatialGrid::samples() const {
  std::vector<double> xs(n_points);
  for (int k = 0; k < n_points; ++k) xs[k] = x(k);
  return xs;
}

SpatialGrid SpatialGrid::make(double half_width, int n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorKind::Precondition, "grid half-width must be positive and finite");
  if (n_points < 16 || n_points % 2 != 0)
    throw Error(ErrorKind::Precondition,
                "n_points must be even and at least 16, got " + std::to_string(n_points));
  return SpatialGrid{half_width, n_points};
}

SpectralPoint SpectralPoint::make(cd lambda) {
  if (lambda == cd(0.0, 0.0))
    throw Error(ErrorKind::Precondition, "spectral parameter lambda must be nonzero");
  const double re = lambda.real(), im = lambda.imag();
  Quadrant q;
  if (std::abs(re) <= axis_tol || std::abs(im) <= axis_tol) {
    q = Quadrant::Continuous;
  } else if (re > 0.0) {
    q = im > 0.0 ? Quadrant::CI : Quadrant::CIV;
  } else {
    q = im > 0.0 ? Quadrant::CII : Quadrant::CIII;
  }
  return SpectralPoint{lambda, q};
}

bool all_finite(const std::vector<cd>& v) {
  for (const cd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexVec2Field ComplexVec2Field::zeros(const SpatialGrid& g) {
  ComplexVec2Field f;
  f.grid = g;
  f.c1.assign(g.n_points, cd(0.0, 0.0));
  f.c2.assign(g.n_points, cd(0.0, 0.0));
  return f;
}

ComplexVec2Field ComplexVec2Field::make(const SpatialGrid& g, std::vector<cd> c1,
                                        std::vector<cd> c2) {
  if (static_cast<int>(c1.size()) != g.n_points || static_cast<int>(c2.size()) != g.n_points)
    throw Error(ErrorKind::Precondition, "field component length does not match grid");
  if (!all_finite(c1) || !all_finite(c2))
    throw Error(ErrorKind::Precondition, "field contains non-finite samples");
  ComplexVec2Field f;
  f.grid = g;
  f.c1 = std::move(c1);
  f.c2 = std::move(c2);
  return f;
}

double Potential::end_amplitude() const {
  return std::max(std::abs(q.front()), std::abs(q.back()));
}

double Potential::sup_norm() const {
  double s = 0.0;
  for (const cd& z : q) s = std::max(s, std::abs(z));
  return s;
}

double Potential::mass() const {
  // Trapezoid over [-L, L - h]; the field decays so the missing end cell is
  // below decay tolerance anyway.
  const double h = grid.spacing();
  double s = 0.0;
  for (int k = 0; k < grid.n_points; ++k) {
    const double w = (k == 0 || k == grid.n_points - 1) ? 0.5 : 1.0;
    s += w * std::norm(q[k]);
  }
  return s * h;
}

Potential Potential::zero(const SpatialGrid& g) {
  return reduced_from(g, std::vector<cd>(g.n_points, cd(0.0, 0.0)));
}

Potential Potential::reduced_from(const SpatialGrid& g, std::vector<cd> q) {
  if (static_cast<int>(q.size()) != g.n_points)
    throw Error(ErrorKind::Precondition, "potential length does not match grid");
  if (!all_finite(q))
    throw Error(ErrorKind::Precondition, "potential contains non-finite samples");
  Potential p;
  p.grid = g;
  p.r.resize(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) p.r[k] = std::conj(q[k]);
  p.q = std::move(q);
  p.reduced = true;
  return p;
}

Potential Potential::coupled(const SpatialGrid& g, std::vector<cd> q, std::vector<cd> r) {
  if (static_cast<int>(q.size()) != g.n_points || static_cast<int>(r.size()) != g.n_points)
    throw Error(ErrorKind::Precondition, "potential length does not match grid");
  if (!all_finite(q) || !all_finite(r))
    throw Error(ErrorKind::Precondition, "potential contains non-finite samples");
  Potential p;
  p.grid = g;
  p.q = std::move(q);
  p.r = std::move(r);
  p.reduced = false;
  return p;
}

}  // namespace cll
