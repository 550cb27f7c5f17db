#include "cll/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cll {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

static std::vector<double> get_array(const json& j, const char* key, int n) {
  if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field ") + key);
  const json& a = j.at(key);
  if (!a.is_array() || static_cast<int>(a.size()) != n)
    throw Error(ErrorKind::Parse, std::string(key) + " must be an array of length n");
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) {
    if (!a[k].is_number()) throw Error(ErrorKind::Parse, std::string(key) + " has a non-numeric entry");
    v[k] = a[k].get<double>();
  }
  return v;
}

Potential load_potential(const std::string& path, LoadReport* report, double decay_tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "invalid JSON in " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("L") || !j.contains("n"))
    throw Error(ErrorKind::Parse, path + ": expected object with L and n");
  const double L = j.at("L").get<double>();
  if (!j.at("n").is_number_integer())
    throw Error(ErrorKind::Parse, path + ": n must be an integer");
  const int n = j.at("n").get<int>();
  SpatialGrid grid = SpatialGrid::make(L, n);

  const auto q_re = get_array(j, "q_re", n);
  const auto q_im = get_array(j, "q_im", n);
  std::vector<cd> q(n);
  for (int k = 0; k < n; ++k) q[k] = cd(q_re[k], q_im[k]);
  if (!all_finite(q)) throw Error(ErrorKind::Parse, path + ": non-finite value in q");

  Potential pot;
  if (j.contains("r_re") || j.contains("r_im")) {
    const auto r_re = get_array(j, "r_re", n);
    const auto r_im = get_array(j, "r_im", n);
    std::vector<cd> r(n);
    for (int k = 0; k < n; ++k) r[k] = cd(r_re[k], r_im[k]);
    if (!all_finite(r)) throw Error(ErrorKind::Parse, path + ": non-finite value in r");
    pot = Potential::coupled(grid, std::move(q), std::move(r));
  } else {
    pot = Potential::reduced_from(grid, std::move(q));
  }

  if (report) {
    report->end_amplitude = pot.end_amplitude();
    report->decay_warning = report->end_amplitude > decay_tol;
  }
  return pot;
}

void save_potential(const Potential& pot, const std::string& path) {
  json j;
  j["L"] = pot.grid.half_width;
  j["n"] = pot.grid.n_points;
  json q_re = json::array(), q_im = json::array();
  for (const cd& z : pot.q) {
    q_re.push_back(z.real());
    q_im.push_back(z.imag());
  }
  j["q_re"] = std::move(q_re);
  j["q_im"] = std::move(q_im);
  if (!pot.reduced) {
    json r_re = json::array(), r_im = json::array();
    for (const cd& z : pot.r) {
      r_re.push_back(z.real());
      r_im.push_back(z.imag());
    }
    j["r_re"] = std::move(r_re);
    j["r_im"] = std::move(r_im);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << j.dump(1) << "\n";
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  for (std::size_t c = 0; c < header.size(); ++c)
    out << header[c] << (c + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace cll
