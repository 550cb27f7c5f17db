#pragma once

#include <string>
#include <vector>

#include "cll/types.hpp"

namespace cll {

struct LoadReport {
  bool decay_warning = false;
  double end_amplitude = 0.0;
};

// Potential file schema: JSON object
//   { "L": number, "n": integer, "q_re": [..], "q_im": [..],
//     optional "r_re": [..], "r_im": [..] }
// Arrays of length n. Without r the reduction r = conj(q) is implied.
Potential load_potential(const std::string& path, LoadReport* report = nullptr,
                         double decay_tol = 1e-10);
void save_potential(const Potential& pot, const std::string& path);

// CSV writers; complex values become two columns (re, im). All numeric output
// uses 17 significant digits so a round trip through text is bit-exact.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace cll
