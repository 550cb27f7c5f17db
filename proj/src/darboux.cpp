#include "cll/darboux.hpp"

#include <algorithm>
#include <cmath>

namespace cll {

namespace {

constexpr cd kI{0.0, 1.0};

void require_off_spectrum(SpectralPoint p) {
  if (p.quadrant == Quadrant::Continuous)
    throw Error(ErrorKind::Precondition,
                "Darboux parameter must lie off the continuous spectrum (the map "
                "degenerates to +-identity there)");
}

double seed_scale(cd f, cd g) { return std::norm(f) + std::norm(g); }

}  // namespace

DarbouxSeed DarbouxSeed::vacuum(const SpatialGrid& grid, cd lambda1, cd c1, cd c2, double t) {
  SpectralPoint p = SpectralPoint::make(lambda1);
  require_off_spectrum(p);
  const cd l2 = lambda1 * lambda1;
  const cd l4 = l2 * l2;
  ComplexVec2Field phi;
  phi.grid = grid;
  phi.c1.resize(grid.n_points);
  phi.c2.resize(grid.n_points);
  for (int k = 0; k < grid.n_points; ++k) {
    const cd theta = l2 * grid.x(k) + 2.0 * l4 * t;
    phi.c1[k] = c1 * std::exp(-kI * theta);
    phi.c2[k] = c2 * std::exp(kI * theta);
  }
  DarbouxSeed s;
  s.lambda1 = p;
  s.phi = std::move(phi);
  s.provenance = SeedProvenance::VacuumExplicit;
  s.c1 = c1;
  s.c2 = c2;
  return s;
}

DarbouxSeed DarbouxSeed::from_jost(const JostPair& jp, int column) {
  if (column != 1 && column != 2)
    throw Error(ErrorKind::Precondition, "column must be 1 or 2");
  require_off_spectrum(jp.lambda);
  const cd l2 = jp.lambda.lambda * jp.lambda.lambda;
  const ComplexVec2Field& col = column == 1 ? jp.column_1 : jp.column_2;
  // varphi columns carry e^{-i l^2 x}, phi columns e^{+i l^2 x}.
  const double sign = column == 1 ? -1.0 : 1.0;
  ComplexVec2Field phi;
  phi.grid = col.grid;
  phi.c1.resize(col.c1.size());
  phi.c2.resize(col.c2.size());
  for (std::size_t k = 0; k < col.c1.size(); ++k) {
    const cd gauge = std::exp(sign * kI * l2 * col.grid.x(static_cast<int>(k)));
    phi.c1[k] = col.c1[k] * gauge;
    phi.c2[k] = col.c2[k] * gauge;
  }
  DarbouxSeed s;
  s.lambda1 = jp.lambda;
  s.phi = std::move(phi);
  s.provenance = column == 1 ? SeedProvenance::JostMinus : SeedProvenance::JostPlus;
  return s;
}

DarbouxSeed DarbouxSeed::from_field(cd lambda1, ComplexVec2Field phi, SeedProvenance prov) {
  SpectralPoint p = SpectralPoint::make(lambda1);
  require_off_spectrum(p);
  DarbouxSeed s;
  s.lambda1 = p;
  s.phi = std::move(phi);
  s.provenance = prov;
  return s;
}

DarbouxSeed symmetry_image_seed(const DarbouxSeed& seed) {
  DarbouxSeed s;
  s.lambda1 = SpectralPoint::make(std::conj(seed.lambda1.lambda));
  s.phi = conjugate_symmetry_image(seed.phi);
  s.provenance = seed.provenance;
  return s;
}

DarbouxSeed eigenvalue_seed(const Potential& pot, SpectralPoint lambda1, double eigen_tol,
                            const JostOptions& jopt) {
  const EigenRatio ratio = jost_eigenvalue_ratio(pot, lambda1, eigen_tol, jopt);
  DarbouxSeed s;
  s.lambda1 = lambda1;
  s.phi = assemble_bound_state(pot, lambda1, ratio.gamma, jopt);
  s.provenance = SeedProvenance::JostMinus;
  return s;
}

cd bilinear_m(cd lambda, cd f1, cd f2, cd g1, cd g2) {
  return lambda * f1 * std::conj(g1) + std::conj(lambda) * f2 * std::conj(g2);
}

DTCoefficients dt_coefficients(const DarbouxSeed& seed, double m_floor) {
  require_off_spectrum(seed.lambda1);
  const cd l1 = seed.lambda1.lambda;
  const cd ampl = l1 * l1 - std::conj(l1) * std::conj(l1);
  const int n = seed.phi.grid.n_points;
  DTCoefficients co;
  co.grid = seed.phi.grid;
  co.C.resize(n);
  co.D.resize(n);
  co.A.resize(n);
  for (int k = 0; k < n; ++k) {
    const cd f = seed.phi.c1[k], g = seed.phi.c2[k];
    const cd m = bilinear_m(l1, f, g, f, g);  // l1 |f|^2 + conj(l1) |g|^2
    const double scale = seed_scale(f, g);
    if (std::abs(m) < m_floor * scale || scale == 0.0)
      throw Error(ErrorKind::Degenerate,
                  "degenerate seed: |m_{lambda1}| below floor at x = " +
                      std::to_string(co.grid.x(k)));
    co.C[k] = std::conj(m) / m;
    co.A[k] = ampl * f * std::conj(g);
    co.D[k] = co.A[k] / m;
  }
  return co;
}

Potential apply_dt(const Potential& pot, const DarbouxSeed& seed, double m_floor) {
  if (!pot.reduced)
    throw Error(ErrorKind::Precondition,
                "apply_dt acts on reduced potentials; use general_two_fold_dt for "
                "independent (q, r)");
  if (!(pot.grid == seed.phi.grid))
    throw Error(ErrorKind::Precondition, "potential and seed grids differ");
  const DTCoefficients co = dt_coefficients(seed, m_floor);
  std::vector<cd> q1(pot.q.size());
  for (std::size_t k = 0; k < pot.q.size(); ++k)
    q1[k] = co.C[k] * pot.q[k] - 2.0 * kI * co.D[k];
  return Potential::reduced_from(pot.grid, std::move(q1));
}

std::pair<std::vector<cd>, std::vector<cd>> general_two_fold_dt(
    const Potential& pot, const ComplexVec2Field& phi1, const ComplexVec2Field& phi2,
    cd lambda1, cd lambda2, double denom_floor) {
  if (!(pot.grid == phi1.grid) || !(pot.grid == phi2.grid))
    throw Error(ErrorKind::Precondition, "potential and seed grids differ");
  if (lambda1 == cd(0.0, 0.0) || lambda2 == cd(0.0, 0.0))
    throw Error(ErrorKind::Precondition, "spectral parameters must be nonzero");
  const int n = pot.grid.n_points;
  const cd dl2 = lambda1 * lambda1 - lambda2 * lambda2;
  std::vector<cd> q1(n), r1(n);
  for (int k = 0; k < n; ++k) {
    const cd f1 = phi1.c1[k], g1 = phi1.c2[k];
    const cd f2 = phi2.c1[k], g2 = phi2.c2[k];
    const cd den_q = lambda1 * f1 * g2 - lambda2 * f2 * g1;  // d2 entry of T2
    const cd den_r = lambda1 * g1 * f2 - lambda2 * g2 * f1;  // a2 entry of T2
    const double scale = std::abs(lambda1) * (std::abs(f1 * g2) + std::abs(g1 * f2)) +
                         std::abs(lambda2) * (std::abs(f2 * g1) + std::abs(g2 * f1));
    if (scale == 0.0 || std::abs(den_q) < denom_floor * scale ||
        std::abs(den_r) < denom_floor * scale)
      throw Error(ErrorKind::Degenerate,
                  "two-fold map denominator vanishes at x = " +
                      std::to_string(pot.grid.x(k)) +
                      " (lambda1 = lambda2 with proportional seeds?)");
    q1[k] = (den_r / den_q) * pot.q[k] - 2.0 * kI * (f1 * f2 * dl2) / den_q;
    r1[k] = (den_q / den_r) * pot.r[k] - 2.0 * kI * (g1 * g2 * dl2) / den_r;
  }
  return {std::move(q1), std::move(r1)};
}

namespace {

// Phase-unwrapped C^(1/2): accumulate principal increments of arg C along x
// starting from the anchor end with its angle in (-pi, pi].
std::vector<cd> half_phase(const std::vector<cd>& C, bool anchor_left) {
  const int n = static_cast<int>(C.size());
  std::vector<double> theta(n);
  if (anchor_left) {
    theta[0] = std::arg(C[0]);
    for (int k = 1; k < n; ++k) theta[k] = theta[k - 1] + std::arg(C[k] / C[k - 1]);
  } else {
    theta[n - 1] = std::arg(C[n - 1]);
    for (int k = n - 2; k >= 0; --k) theta[k] = theta[k + 1] + std::arg(C[k] / C[k + 1]);
  }
  std::vector<cd> half(n);
  for (int k = 0; k < n; ++k) half[k] = std::exp(kI * (0.5 * theta[k]));
  return half;
}

cd ring_project(cd lambda, cd center, double eps) {
  const cd d = lambda - center;
  const double r = std::abs(d);
  if (r == 0.0) return center + cd(eps, 0.0);
  return center + d * (eps / r);
}

}  // namespace

Mat2Field darboux_matrix(const DarbouxSeed& seed, cd lambda, const DarbouxMatrixOptions& opt) {
  const cd l1 = seed.lambda1.lambda;
  const cd sing[4] = {l1, -l1, std::conj(l1), -std::conj(l1)};
  for (cd s : sing) {
    if (std::abs(lambda - s) < opt.sing_eps) {
      if (!opt.regularize)
        throw Error(ErrorKind::Precondition,
                    "lambda within sing_eps of a Darboux singularity; enable "
                    "regularization to evaluate on the ring");
      lambda = ring_project(lambda, s, opt.sing_eps);
    }
  }

  const DTCoefficients co = dt_coefficients(seed, opt.m_floor);
  const std::vector<cd> half = half_phase(co.C, opt.anchor_left);
  const int n = co.grid.n_points;
  const cd l2 = lambda * lambda;
  const double abs2 = std::norm(l1);
  const cd pref = (l1 / std::abs(l1)) / (l2 - l1 * l1);

  Mat2Field T;
  T.grid = co.grid;
  T.t11.resize(n);
  T.t12.resize(n);
  T.t21.resize(n);
  T.t22.resize(n);
  for (int k = 0; k < n; ++k) {
    const cd ch = half[k], chb = std::conj(half[k]);
    const cd D = co.D[k], Db = std::conj(co.D[k]);
    T.t11[k] = pref * (ch * l2 - abs2 * chb);
    T.t12[k] = pref * (-D * chb * lambda);
    T.t21[k] = pref * (Db * ch * lambda);
    T.t22[k] = pref * (chb * l2 - abs2 * ch);
  }
  return T;
}

ComplexVec2Field transform_solution(const ComplexVec2Field& sol, cd mu,
                                    const DarbouxSeed& seed, const DarbouxMatrixOptions& opt) {
  if (!(sol.grid == seed.phi.grid))
    throw Error(ErrorKind::Precondition, "solution and seed grids differ");
  const Mat2Field T = darboux_matrix(seed, mu, opt);
  ComplexVec2Field out;
  out.grid = sol.grid;
  const int n = sol.grid.n_points;
  out.c1.resize(n);
  out.c2.resize(n);
  for (int k = 0; k < n; ++k) {
    out.c1[k] = T.t11[k] * sol.c1[k] + T.t12[k] * sol.c2[k];
    out.c2[k] = T.t21[k] * sol.c1[k] + T.t22[k] * sol.c2[k];
  }
  return out;
}

namespace {

// Flip the column sign if its boundary value sits closer to -target.
void sign_normalize(ComplexVec2Field* col, int end_index, int target_component) {
  const cd v = target_component == 1 ? col->c1[end_index] : col->c2[end_index];
  if (std::abs(v - cd(1.0, 0.0)) > std::abs(v + cd(1.0, 0.0))) {
    for (auto& z : col->c1) z = -z;
    for (auto& z : col->c2) z = -z;
  }
}

}  // namespace

JostPair transform_jost(const JostPair& background, const DarbouxSeed& seed,
                        const DarbouxMatrixOptions& opt) {
  const cd lambda = background.lambda.lambda;
  // Each column transforms with the T built from its own family: the given
  // seed at lambda1 for the like-side column, its conjugate symmetry image at
  // conj(lambda1) for the partner column.
  const DarbouxSeed conj_seed = symmetry_image_seed(seed);

  DarbouxMatrixOptions o1 = opt, o2 = opt;
  const bool minus = background.side == Side::Minus;
  // Anchor the half-angle branch at each seed family's own decay end so the
  // normalized columns tend to +e1/+e2 there before sign cleanup.
  o1.anchor_left = minus;
  o2.anchor_left = minus;

  JostPair out;
  out.lambda = background.lambda;
  out.side = background.side;
  out.residual = background.residual;
  out.column_1_analytic = background.column_1_analytic;
  out.column_2_analytic = background.column_2_analytic;

  if (minus) {
    out.column_1 = transform_solution(background.column_1, lambda, seed, o1);
    out.column_2 = transform_solution(background.column_2, lambda, conj_seed, o2);
  } else {
    out.column_1 = transform_solution(background.column_1, lambda, conj_seed, o1);
    out.column_2 = transform_solution(background.column_2, lambda, seed, o2);
  }
  const int end = minus ? 0 : background.column_1.grid.n_points - 1;
  sign_normalize(&out.column_1, end, 1);
  sign_normalize(&out.column_2, end, 2);
  return out;
}

ComplexVec2Field inverse_dt_seed(const DarbouxSeed& seed, double m_floor) {
  require_off_spectrum(seed.lambda1);
  const cd l1 = seed.lambda1.lambda;
  const int n = seed.phi.grid.n_points;
  ComplexVec2Field out;
  out.grid = seed.phi.grid;
  out.c1.resize(n);
  out.c2.resize(n);
  for (int k = 0; k < n; ++k) {
    const cd f = seed.phi.c1[k], g = seed.phi.c2[k];
    const cd m = bilinear_m(l1, f, g, f, g);
    const double scale = seed_scale(f, g);
    if (scale == 0.0 || std::abs(m) < m_floor * scale)
      throw Error(ErrorKind::Degenerate,
                  "degenerate seed in inverse formula at x = " +
                      std::to_string(out.grid.x(k)));
    const cd mb = std::conj(m);
    out.c1[k] = std::conj(g) * (1.0 / m - 1.0 / mb);
    out.c2[k] = std::conj(f) * (1.0 / mb - 1.0 / m);
  }
  return out;
}

ComplexVec2Field inverse_seed_from_new_jost(const ComplexVec2Field& new_varphi_minus,
                                            const ComplexVec2Field& new_phi_plus,
                                            cd lambda1, cd gamma, cd a1) {
  if (gamma == cd(0.0, 0.0))
    throw Error(ErrorKind::Precondition, "norming constant gamma must be nonzero");
  if (std::abs(a1) < 1e-12)
    throw Error(ErrorKind::Precondition, "a^(1)(lambda1) vanishes; nothing to invert");
  const cd coef = 1.0 / std::conj(lambda1) - 1.0 / lambda1;
  // The relative sign of the two pieces is pinned by requiring the rebuilt
  // potential to undo the removal; the opposite sign adds the sign-flipped
  // soliton instead.
  const cd s1 = coef / (gamma * a1);
  const cd s2 = -coef / a1;
  ComplexVec2Field out;
  out.grid = new_varphi_minus.grid;
  const int n = out.grid.n_points;
  out.c1.resize(n);
  out.c2.resize(n);
  const cd l2 = lambda1 * lambda1;
  for (int k = 0; k < n; ++k) {
    const cd em = std::exp(-kI * l2 * out.grid.x(k));
    const cd ep = 1.0 / em;
    out.c1[k] = s1 * em * new_varphi_minus.c1[k] + s2 * ep * new_phi_plus.c1[k];
    out.c2[k] = s1 * em * new_varphi_minus.c2[k] + s2 * ep * new_phi_plus.c2[k];
  }
  return out;
}

ComplexVec2Field add_seed_from_jost(const ComplexVec2Field& varphi_minus,
                                    const ComplexVec2Field& phi_plus, cd lambda1, cd alpha1) {
  ComplexVec2Field out;
  out.grid = varphi_minus.grid;
  const int n = out.grid.n_points;
  out.c1.resize(n);
  out.c2.resize(n);
  const cd l2 = lambda1 * lambda1;
  for (int k = 0; k < n; ++k) {
    const cd em = std::exp(-kI * l2 * out.grid.x(k));
    const cd ep = 1.0 / em;
    out.c1[k] = em * varphi_minus.c1[k] + alpha1 * ep * phi_plus.c1[k];
    out.c2[k] = em * varphi_minus.c2[k] + alpha1 * ep * phi_plus.c2[k];
  }
  return out;
}

cd scattering_a_factor(cd lambda, cd lambda1, MapDirection dir) {
  const cd l2 = lambda * lambda;
  const cd l1c = std::conj(lambda1);
  const cd remove = (lambda1 / l1c) * (l2 - l1c * l1c) / (l2 - lambda1 * lambda1);
  return dir == MapDirection::Remove ? remove : 1.0 / remove;
}

ScatteringCurve map_scattering_data(const ScatteringCurve& curve, cd lambda1,
                                    MapDirection dir, double resonance_tol) {
  SpectralPoint p1 = SpectralPoint::make(lambda1);
  if (p1.quadrant != Quadrant::CI)
    throw Error(ErrorKind::Precondition, "map_scattering_data requires lambda1 in C_I");
  ScatteringCurve out = curve;
  for (ScatteringPoint& s : out.samples) {
    s.a = s.a * scattering_a_factor(s.lambda.lambda, lambda1, dir);
    // b is unchanged by the transformation.
    s.l_valid = std::abs(s.a) > resonance_tol;
    s.l = s.l_valid ? s.b / s.a : cd(0.0, 0.0);
    const bool imag_axis = std::abs(s.lambda.lambda.real()) <= SpectralPoint::axis_tol;
    const double sg = imag_axis ? -1.0 : 1.0;
    s.detS_residual = std::abs(std::norm(s.a) + sg * std::norm(s.b) - 1.0);
  }
  return out;
}

}  // namespace cll
