#include "oracles.hpp"

#include <cmath>

namespace cll::oracle {

namespace {

constexpr cd kI{0.0, 1.0};

struct Mat {
  cd a11, a12, a21, a22;
};

}  // namespace

VolterraResult volterra_jost(const SpatialGrid& base, const Profile& q, const Profile& r,
                             cd lambda, Side side, int refine) {
  const int n = base.n_points;
  const int M = refine * (n - 1);  // refined intervals over [-L, L-h]
  const double h = base.spacing() / refine;
  const double x0 = -base.half_width;
  const cd l2 = lambda * lambda;

  std::vector<cd> qv(M + 1), rv(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double x = x0 + j * h;
    qv[j] = q(x);
    rv[j] = r(x);
  }

  // Phase weights for the factorized kernel entries.
  std::vector<cd> wp(M + 1), wm(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double x = x0 + j * h;
    wp[j] = std::exp(2.0 * kI * l2 * x);
    wm[j] = 1.0 / wp[j];
  }

  std::vector<Mat> psi(M + 1, Mat{1, 0, 0, 1});
  std::vector<Mat> g(M + 1), cum(M + 1);

  const bool minus = side == Side::Minus;

  auto cumulative = [&](int idx_from_start) -> void {
    // Cumulative Simpson along the integration direction; odd nodes use the
    // 3-point right-open rule.
    cum[0] = Mat{0, 0, 0, 0};
    for (int j = 1; j <= M; ++j) {
      if (j % 2 == 0) {
        const Mat &g0 = g[j - 2], &g1 = g[j - 1], &g2 = g[j];
        cum[j] = Mat{cum[j - 2].a11 + h / 3.0 * (g0.a11 + 4.0 * g1.a11 + g2.a11),
                     cum[j - 2].a12 + h / 3.0 * (g0.a12 + 4.0 * g1.a12 + g2.a12),
                     cum[j - 2].a21 + h / 3.0 * (g0.a21 + 4.0 * g1.a21 + g2.a21),
                     cum[j - 2].a22 + h / 3.0 * (g0.a22 + 4.0 * g1.a22 + g2.a22)};
      } else {
        const Mat &g0 = g[j - 1], &g1 = g[j], &g2 = g[std::min(j + 1, M)];
        cum[j] = Mat{cum[j - 1].a11 + h / 12.0 * (5.0 * g0.a11 + 8.0 * g1.a11 - g2.a11),
                     cum[j - 1].a12 + h / 12.0 * (5.0 * g0.a12 + 8.0 * g1.a12 - g2.a12),
                     cum[j - 1].a21 + h / 12.0 * (5.0 * g0.a21 + 8.0 * g1.a21 - g2.a21),
                     cum[j - 1].a22 + h / 12.0 * (5.0 * g0.a22 + 8.0 * g1.a22 - g2.a22)};
      }
    }
    (void)idx_from_start;
  };

  int iter = 0;
  for (; iter < 200; ++iter) {
    // g = phase-weighted Utilde psi at every refined node, in integration order.
    for (int j = 0; j <= M; ++j) {
      const int idx = minus ? j : M - j;
      const cd qq = qv[idx], rr = rv[idx];
      const Mat& P = psi[idx];
      const cd u11 = 0.25 * kI * qq * rr;
      // F = Utilde * psi
      const Mat F{u11 * P.a11 + lambda * qq * P.a21, u11 * P.a12 + lambda * qq * P.a22,
                  -lambda * rr * P.a11 - u11 * P.a21, -lambda * rr * P.a12 - u11 * P.a22};
      // entry weights: (1,2) integrand carries e^{+2 i l^2 y}, (2,1) the
      // reciprocal; the outer factor is applied after the cumulative sum.
      g[j] = Mat{F.a11, wp[idx] * F.a12, wm[idx] * F.a21, F.a22};
    }
    cumulative(0);

    double delta = 0.0;
    for (int j = 0; j <= M; ++j) {
      const int idx = minus ? j : M - j;
      const double sgn = minus ? 1.0 : -1.0;
      // psi_+(x) = I - Int_x^{L} ...
      Mat nv{cd(1, 0) + sgn * cum[j].a11, sgn * wm[idx] * cum[j].a12,
             sgn * wp[idx] * cum[j].a21, cd(1, 0) + sgn * cum[j].a22};
      const Mat& old = psi[idx];
      const double scale = 1.0 + std::max({std::abs(nv.a11), std::abs(nv.a12),
                                           std::abs(nv.a21), std::abs(nv.a22)});
      delta = std::max(delta, std::max({std::abs(nv.a11 - old.a11), std::abs(nv.a12 - old.a12),
                                        std::abs(nv.a21 - old.a21),
                                        std::abs(nv.a22 - old.a22)}) /
                                  scale);
      psi[idx] = nv;
    }
    if (delta < 1e-14) break;
  }

  VolterraResult res;
  res.iterations = iter;
  res.column_1.grid = base;
  res.column_2.grid = base;
  res.column_1.c1.resize(n);
  res.column_1.c2.resize(n);
  res.column_2.c1.resize(n);
  res.column_2.c2.resize(n);
  for (int k = 0; k < n; ++k) {
    const Mat& P = psi[k * refine];
    res.column_1.c1[k] = P.a11;
    res.column_1.c2[k] = P.a21;
    res.column_2.c1[k] = P.a12;
    res.column_2.c2[k] = P.a22;
  }
  return res;
}

VolterraResult volterra_jost_richardson(const SpatialGrid& base, const Profile& q,
                                        const Profile& r, cd lambda, Side side) {
  VolterraResult r2 = volterra_jost(base, q, r, lambda, side, 2);
  VolterraResult r4 = volterra_jost(base, q, r, lambda, side, 4);
  auto combine = [](std::vector<cd>& fine, const std::vector<cd>& coarse) {
    for (std::size_t k = 0; k < fine.size(); ++k)
      fine[k] = (16.0 * fine[k] - coarse[k]) / 15.0;
  };
  combine(r4.column_1.c1, r2.column_1.c1);
  combine(r4.column_1.c2, r2.column_1.c2);
  combine(r4.column_2.c1, r2.column_2.c1);
  combine(r4.column_2.c2, r2.column_2.c2);
  return r4;
}

cd simpson(const SpatialGrid& grid, const std::function<cd(double)>& f, int refine) {
  const int M = refine * (grid.n_points - 1);
  const double h = (grid.x(grid.n_points - 1) - grid.x(0)) / M;
  cd s = f(grid.x(0)) + f(grid.x(grid.n_points - 1));
  for (int j = 1; j < M; ++j) s += (j % 2 ? 4.0 : 2.0) * f(grid.x(0) + j * h);
  return s * (h / 3.0);
}

cd born_b(const SpatialGrid& grid, const Profile& r, cd lambda, int refine) {
  const cd l2 = lambda * lambda;
  return -lambda *
         simpson(grid, [&](double y) { return std::exp(-2.0 * kI * l2 * y) * r(y); }, refine);
}

cd vacuum_soliton_value(cd lambda1, cd c1, cd c2, double t, double x) {
  const cd l2 = lambda1 * lambda1;
  const cd theta = l2 * x + 2.0 * l2 * l2 * t;
  const cd f = c1 * std::exp(-kI * theta);
  const cd g = c2 * std::exp(kI * theta);
  const cd m = lambda1 * std::norm(f) + std::conj(lambda1) * std::norm(g);
  const cd A = (l2 - std::conj(l2)) * f * std::conj(g);
  return -2.0 * kI * A / m;
}

std::pair<cd, cd> vacuum_two_seed_value(cd lambda1, cd c1a, cd c2a, cd lambda2, cd c1b,
                                        cd c2b, double x) {
  const cd t1 = lambda1 * lambda1 * x;
  const cd t2 = lambda2 * lambda2 * x;
  const cd f1 = c1a * std::exp(-kI * t1), g1 = c2a * std::exp(kI * t1);
  const cd f2 = c1b * std::exp(-kI * t2), g2 = c2b * std::exp(kI * t2);
  const cd dl2 = lambda1 * lambda1 - lambda2 * lambda2;
  const cd den_q = lambda1 * f1 * g2 - lambda2 * f2 * g1;
  const cd den_r = lambda1 * g1 * f2 - lambda2 * g2 * f1;
  const cd q1 = -2.0 * kI * f1 * f2 * dl2 / den_q;
  const cd r1 = -2.0 * kI * g1 * g2 * dl2 / den_r;
  return {q1, r1};
}

}  // namespace cll::oracle
