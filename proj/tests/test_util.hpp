#pragma once

#include <cmath>
#include <random>

#include "cll/types.hpp"
#include "oracles.hpp"

namespace cll::testutil {

inline const SpatialGrid kGrid = SpatialGrid::make(30.0, 1024);

inline Potential sampled(const SpatialGrid& g, const oracle::Profile& f) {
  std::vector<cd> q(g.n_points);
  for (int k = 0; k < g.n_points; ++k) q[k] = f(g.x(k));
  return Potential::reduced_from(g, std::move(q));
}

inline oracle::Profile sech_profile(double amp) {
  return [amp](double x) { return cd(amp / std::cosh(x), 0.0); };
}

// Smooth decaying potential with a few random bumps; deterministic per seed.
inline oracle::Profile random_smooth_profile(unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 0.7), pos(-4.0, 4.0), width(1.5, 3.0),
      freq(0.2, 1.2);
  struct Bump {
    double a, x0, w, f, phase;
  };
  std::vector<Bump> bumps;
  std::uniform_real_distribution<double> ph(0.0, 6.28);
  for (int i = 0; i < 3; ++i)
    bumps.push_back({amp(rng) * scale, pos(rng), width(rng), freq(rng), ph(rng)});
  return [bumps](double x) {
    cd v(0.0, 0.0);
    for (const auto& b : bumps)
      v += b.a * std::exp(-(x - b.x0) * (x - b.x0) / (b.w * b.w)) *
           std::exp(cd(0.0, b.f * x + b.phase));
    return v;
  };
}

inline double field_sup_diff(const std::vector<cd>& u, const std::vector<cd>& v) {
  double m = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, std::abs(u[k] - v[k]));
  return m;
}

}  // namespace cll::testutil
