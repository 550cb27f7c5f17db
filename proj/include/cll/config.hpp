#pragma once

#include <string>

#include "cll/types.hpp"

namespace cll {

// Every threshold used across the pipeline, with its documented default.
// Error thresholds for the Jost solver scale with ||q||_inf * L at the call
// sites that march the spectral problem.
struct Tolerances {
  double bc_tol = 1e-8;         // Jost boundary-condition mismatch at the start end
  double eigen_tol = 1e-6;      // |a(lambda)| below this counts as an eigenvalue
  double detS_tol = 1e-6;       // det S residual on the continuous spectrum
  double sing_eps = 1e-6;       // exclusion radius around +-lambda1, +-conj(lambda1)
  double m_floor = 1e-12;       // |m| floor relative to local seed magnitude
  double decay_tol = 1e-10;     // |q| at the grid ends for scattering preconditions
  double margin_min = 0.05;     // eigenvalue box margin from the continuous spectrum
  double simple_tol = 1e-6;     // |a'(lambda)| above this counts as a simple zero
  double resonance_tol = 1e-6;  // |a| floor when forming l = b/a

  void validate() const;
};

struct RunConfig {
  SpatialGrid grid{30.0, 1024};
  Tolerances tol;
  std::string out_dir = ".";
  int threads = 1;

  void validate() const;
  static RunConfig from_json_file(const std::string& path);
  std::string to_json_string() const;
};

}  // namespace cll
