#include "cll/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace cll {

namespace {

constexpr cd kI{0.0, 1.0};

std::string cplx(cd z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

std::vector<cd> ContourSpec::points() const {
  if (!(lo > 0.0) || !(hi > lo) || count < 1)
    throw Error(ErrorKind::Precondition, "contour requires 0 < lo < hi and count >= 1");
  std::vector<cd> pts;
  auto linspace = [&](int m, bool imag_axis) {
    for (int j = 0; j < m; ++j) {
      const double v = m == 1 ? lo : lo + (hi - lo) * j / (m - 1);
      pts.push_back(imag_axis ? cd(0.0, v) : cd(v, 0.0));
    }
  };
  switch (kind) {
    case Kind::Real: linspace(count, false); break;
    case Kind::Imaginary: linspace(count, true); break;
    case Kind::Mixed:
      linspace(count - count / 2, false);
      linspace(count / 2, true);
      break;
  }
  return pts;
}

ContourSpec ContourSpec::parse(const std::string& spec) {
  ContourSpec c;
  std::istringstream is(spec);
  std::string kind, tok;
  if (!std::getline(is, kind, ':'))
    throw Error(ErrorKind::Parse, "contour spec: expected kind:lo:hi:count");
  if (kind == "real") c.kind = Kind::Real;
  else if (kind == "imag") c.kind = Kind::Imaginary;
  else if (kind == "mixed") c.kind = Kind::Mixed;
  else throw Error(ErrorKind::Parse, "contour kind must be real, imag or mixed");
  try {
    std::getline(is, tok, ':'); c.lo = std::stod(tok);
    std::getline(is, tok, ':'); c.hi = std::stod(tok);
    std::getline(is, tok, ':'); c.count = std::stoi(tok);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "contour spec: expected kind:lo:hi:count, got " + spec);
  }
  return c;
}

ScatteringResult scattering_coefficients(const Potential& pot, SpectralPoint lambda,
                                         const Tolerances& tol, double xindep_tol) {
  JostOptions jopt;
  jopt.decay_tol = tol.decay_tol;

  const cd lam = lambda.lambda;
  const double im2 = (lam * lam).imag();
  const bool on_spectrum = lambda.quadrant == Quadrant::Continuous;
  if (!on_spectrum && im2 < 0.0)
    throw Error(ErrorKind::Precondition,
                "a(lambda) requires lambda in C_I u C_III or on the continuous spectrum");

  const ComplexVec2Field varphi_m = solve_jost_column(pot, lambda, Side::Minus, 1, jopt);
  const ComplexVec2Field phi_p = solve_jost_column(pot, lambda, Side::Plus, 2, jopt);

  const int n = pot.grid.n_points;
  const int k0 = n / 2;  // x = 0 sample
  const double x_last = pot.grid.x(n - 1);

  const cd a = varphi_m.c1.back();
  // Wronskian at x = 0; the gauge factors are unity there.
  const cd a_det = varphi_m.c1[k0] * phi_p.c2[k0] - varphi_m.c2[k0] * phi_p.c1[k0];
  if (std::abs(a - a_det) > xindep_tol)
    throw Error(ErrorKind::Numerical, "x-independence check failed for a(lambda): |" +
                                          cplx(a) + " - " + cplx(a_det) + "| = " +
                                          std::to_string(std::abs(a - a_det)));

  ScatteringResult res;
  res.a = a;
  if (on_spectrum) {
    const cd b = std::exp(-2.0 * kI * lam * lam * x_last) * varphi_m.c2.back();
    const ComplexVec2Field varphi_p = solve_jost_column(pot, lambda, Side::Plus, 1, jopt);
    const cd b_det = varphi_p.c1[k0] * varphi_m.c2[k0] - varphi_p.c2[k0] * varphi_m.c1[k0];
    if (std::abs(b - b_det) > xindep_tol)
      throw Error(ErrorKind::Numerical, "x-independence check failed for b(lambda): |" +
                                            cplx(b) + " - " + cplx(b_det) + "| = " +
                                            std::to_string(std::abs(b - b_det)));
    res.b = b;
  }
  return res;
}

namespace {

// det S = a(l) conj(a(lbar)) + b(l) conj(b(lbar)). On the real axis lbar = l;
// on the imaginary axis lbar = -l and the column parity gives a(-l) = a(l),
// b(-l) = -b(l).
double detS_residual_at(SpectralPoint lambda, cd a, cd b) {
  const bool imag_axis = std::abs(lambda.lambda.real()) <= SpectralPoint::axis_tol;
  const double s = imag_axis ? -1.0 : 1.0;
  return std::abs(std::norm(a) + s * std::norm(b) - 1.0);
}

}  // namespace

ScatteringCurve scattering_curve(const Potential& pot, const std::vector<cd>& contour,
                                 const Tolerances& tol, int threads) {
  for (cd z : contour) {
    SpectralPoint p = SpectralPoint::make(z);
    if (p.quadrant != Quadrant::Continuous)
      throw Error(ErrorKind::Precondition,
                  "contour point " + cplx(z) + " is off the continuous spectrum");
  }
  ScatteringCurve curve;
  curve.samples.resize(contour.size());
  std::vector<std::string> failures(contour.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      try {
        const SpectralPoint p = SpectralPoint::make(contour[j]);
        const ScatteringResult sc = scattering_coefficients(pot, p, tol);
        ScatteringPoint& out = curve.samples[j];
        out.lambda = p;
        out.a = sc.a;
        out.b = *sc.b;
        out.detS_residual = detS_residual_at(p, out.a, out.b);
        out.l_valid = std::abs(out.a) > tol.resonance_tol;
        out.l = out.l_valid ? out.b / out.a : cd(0.0, 0.0);
      } catch (const Error& e) {
        failures[j] = "lambda = " + cplx(contour[j]) + ": " + e.what();
      }
    }
  };

  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(contour.size())));
  if (nt == 1) {
    work(0, contour.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (contour.size() + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t b = t * chunk, e = std::min(contour.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (!f.empty()) throw Error(ErrorKind::Numerical, f);
  return curve;
}

ReflectionSamples reflection_coefficient(const ScatteringCurve& curve, double resonance_tol) {
  ReflectionSamples out;
  for (const ScatteringPoint& s : curve.samples) {
    if (std::abs(s.a) <= resonance_tol) {
      out.dropped.push_back(s.lambda.lambda);
      continue;
    }
    out.lambda.push_back(s.lambda.lambda);
    out.l.push_back(s.b / s.a);
  }
  return out;
}

namespace {

struct AEval {
  const Potential& pot;
  const Tolerances& tol;
  mutable long evals = 0;

  cd operator()(cd lambda) const {
    ++evals;
    JostOptions jopt;
    jopt.decay_tol = tol.decay_tol;
    return jost_a_coefficient(pot, SpectralPoint::make(lambda), jopt);
  }
};

void check_box(const BoxSpec& box, const Tolerances& tol) {
  if (!(box.re_lo < box.re_hi) || !(box.im_lo < box.im_hi))
    throw Error(ErrorKind::Precondition, "eigenvalue box is empty");
  if (box.re_lo < tol.margin_min || box.im_lo < tol.margin_min)
    throw Error(ErrorKind::Precondition,
                "eigenvalue box must keep margin_min distance from the continuous spectrum");
}

// Accumulated principal phase increments of a around the box boundary.
// Doubles the sampling until every increment is below pi/2 and the winding is
// integer-stable within 0.1.
int winding_of(const AEval& a, const BoxSpec& box) {
  int per_edge = 64;
  for (int attempt = 0; attempt < 5; ++attempt) {
    std::vector<cd> pts;
    pts.reserve(4 * per_edge);
    for (int j = 0; j < per_edge; ++j)
      pts.emplace_back(box.re_lo + (box.re_hi - box.re_lo) * j / per_edge, box.im_lo);
    for (int j = 0; j < per_edge; ++j)
      pts.emplace_back(box.re_hi, box.im_lo + (box.im_hi - box.im_lo) * j / per_edge);
    for (int j = 0; j < per_edge; ++j)
      pts.emplace_back(box.re_hi - (box.re_hi - box.re_lo) * j / per_edge, box.im_hi);
    for (int j = 0; j < per_edge; ++j)
      pts.emplace_back(box.re_lo, box.im_hi - (box.im_hi - box.im_lo) * j / per_edge);

    double total = 0.0;
    bool refine = false;
    cd prev = a(pts[0]);
    const cd first = prev;
    if (std::abs(prev) < 1e-12)
      throw Error(ErrorKind::Numerical, "a vanishes on the box boundary");
    for (std::size_t j = 1; j <= pts.size(); ++j) {
      const cd cur = j == pts.size() ? first : a(pts[j]);
      if (j < pts.size() && std::abs(cur) < 1e-12)
        throw Error(ErrorKind::Numerical, "a vanishes on the box boundary");
      const double d = std::arg(cur / prev);
      if (std::abs(d) > 1.5707963267948966) {
        refine = true;
        break;
      }
      total += d;
      prev = cur;
    }
    if (!refine) {
      const double w = total / (2.0 * kPi);
      const double nearest = std::round(w);
      if (std::abs(w - nearest) <= 0.1) return static_cast<int>(nearest);
    }
    per_edge *= 2;
  }
  throw Error(ErrorKind::Numerical, "winding number failed to stabilize over the box");
}

// Central-difference derivative of the analytic a along whichever axis keeps
// both evaluation points inside C_I.
cd a_derivative(const AEval& a, cd z, double dstep) {
  if (z.real() <= 10.0 * dstep)
    return (a(z + cd(0.0, dstep)) - a(z - cd(0.0, dstep))) / cd(0.0, 2.0 * dstep);
  return (a(z + dstep) - a(z - dstep)) / (2.0 * dstep);
}

bool newton_refine(const AEval& a, cd start, const BoxSpec& box, cd* zero) {
  const double dstep = 1e-5;
  cd z = start;
  const double pad_re = 0.15 * (box.re_hi - box.re_lo);
  const double pad_im = 0.15 * (box.im_hi - box.im_lo);
  for (int it = 0; it < 60; ++it) {
    const cd f = a(z);
    if (std::abs(f) <= 1e-9) {
      // Accept only zeros that stayed in (a slightly padded copy of) this
      // box; wandering into a neighboring basin means the box must split.
      if (z.real() < box.re_lo - pad_re || z.real() > box.re_hi + pad_re ||
          z.imag() < box.im_lo - pad_im || z.imag() > box.im_hi + pad_im)
        return false;
      *zero = z;
      return true;
    }
    const cd fp = a_derivative(a, z, dstep);
    if (std::abs(fp) < 1e-14)
      throw Error(ErrorKind::Numerical, "Newton stalled: a' ~ 0 near " + cplx(z));
    cd step = f / fp;
    cd next = z - step;
    int halvings = 0;
    while ((next.real() < box.re_lo - pad_re || next.real() > box.re_hi + pad_re ||
            next.imag() < box.im_lo - pad_im || next.imag() > box.im_hi + pad_im ||
            next.real() <= 1e-4 || next.imag() <= 1e-4) &&
           halvings < 20) {
      step *= 0.5;
      next = z - step;
      ++halvings;
    }
    if (halvings == 20) return false;  // pinned to the wall: zero not in here
    z = next;
  }
  throw Error(ErrorKind::Numerical, "Newton failed to converge from " + cplx(start));
}

void split_box(const AEval& a, const BoxSpec& box, BoxSpec* lo, BoxSpec* hi) {
  *lo = box;
  *hi = box;
  const double wre = box.re_hi - box.re_lo, wim = box.im_hi - box.im_lo;
  if (wre >= wim) {
    double mid = 0.5 * (box.re_lo + box.re_hi);
    if (std::abs(a(cd(mid, 0.5 * (box.im_lo + box.im_hi)))) < 1e-6) mid += 1e-3 * wre;
    lo->re_hi = mid;
    hi->re_lo = mid;
  } else {
    double mid = 0.5 * (box.im_lo + box.im_hi);
    if (std::abs(a(cd(0.5 * (box.re_lo + box.re_hi), mid))) < 1e-6) mid += 1e-3 * wim;
    lo->im_hi = mid;
    hi->im_lo = mid;
  }
}

void collect_zeros(const AEval& a, const BoxSpec& box, int depth, std::vector<cd>* found) {
  const int w = winding_of(a, box);
  if (w == 0) return;
  const double wre = box.re_hi - box.re_lo, wim = box.im_hi - box.im_lo;
  if (w == 1) {
    cd z;
    if (newton_refine(a, cd(0.5 * (box.re_lo + box.re_hi), 0.5 * (box.im_lo + box.im_hi)),
                      box, &z)) {
      found->push_back(z);
      return;
    }
    // Newton escaped the box: shrink around the zero until it cooperates.
  }
  if (depth >= 14 || std::max(wre, wim) < 1e-7)
    throw Error(ErrorKind::Numerical,
                "clustered zeros: winding " + std::to_string(w) +
                    " in a box too small to split further");
  BoxSpec lo, hi;
  split_box(a, box, &lo, &hi);
  collect_zeros(a, lo, depth + 1, found);
  collect_zeros(a, hi, depth + 1, found);
}

}  // namespace

int winding_number(const Potential& pot, const BoxSpec& box, const Tolerances& tol) {
  check_box(box, tol);
  AEval a{pot, tol};
  return winding_of(a, box);
}

std::vector<EigenvalueRecord> find_eigenvalues(const Potential& pot, const BoxSpec& box,
                                               const Tolerances& tol) {
  check_box(box, tol);
  AEval a{pot, tol};
  const int w = winding_of(a, box);
  std::vector<cd> zeros;
  if (w > 0) collect_zeros(a, box, 0, &zeros);

  // Coincident Newton limits mean a zero that is not simple at this
  // resolution.
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (std::abs(zeros[i] - zeros[j]) < 1e-6)
        throw Error(ErrorKind::Degenerate,
                    "two Newton iterates converged within 1e-6 of " + cplx(zeros[i]) +
                        ": non-simple zero");

  if (static_cast<int>(zeros.size()) != w)
    throw Error(ErrorKind::Numerical,
                "winding count " + std::to_string(w) + " does not match " +
                    std::to_string(zeros.size()) + " refined zeros");

  std::sort(zeros.begin(), zeros.end(), [](cd u, cd v) {
    return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
  });

  std::vector<EigenvalueRecord> records;
  const double dstep = 1e-5;
  for (cd z : zeros) {
    EigenvalueRecord rec;
    rec.lambda = SpectralPoint::make(z);
    rec.a_abs = std::abs(a(z));
    rec.a_prime = a_derivative(a, z, dstep);
    rec.simple = std::abs(rec.a_prime) > tol.simple_tol;
    if (!rec.simple)
      throw Error(ErrorKind::Degenerate,
                  "non-simple zero at " + cplx(z) + ": |a'| = " +
                      std::to_string(std::abs(rec.a_prime)));
    JostOptions jopt;
    jopt.decay_tol = tol.decay_tol;
    rec.gamma = jost_eigenvalue_ratio(pot, rec.lambda, tol.eigen_tol, jopt).gamma;
    records.push_back(rec);
  }
  return records;
}

int z_n_tag(const Potential& pot, const BoxSpec& box, const Tolerances& tol) {
  return static_cast<int>(find_eigenvalues(pot, box, tol).size());
}

}  // namespace cll
