#include "cll/config.hpp"

#include <fstream>

#include <json.hpp>

namespace cll {

using nlohmann::json;

void Tolerances::validate() const {
  const double vals[] = {bc_tol,    eigen_tol,  detS_tol,   sing_eps,     m_floor,
                         decay_tol, margin_min, simple_tol, resonance_tol};
  for (double v : vals)
    if (!(v > 0.0))
      throw Error(ErrorKind::Precondition, "all tolerances must be positive");
}

void RunConfig::validate() const {
  tol.validate();
  SpatialGrid::make(grid.half_width, grid.n_points);
  if (threads < 1) throw Error(ErrorKind::Precondition, "threads must be >= 1");
}

static void read_if(const json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "invalid config JSON: " + std::string(e.what()));
  }
  RunConfig cfg;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    double L = cfg.grid.half_width;
    int n = cfg.grid.n_points;
    if (g.contains("L")) L = g.at("L").get<double>();
    if (g.contains("n")) n = g.at("n").get<int>();
    cfg.grid = SpatialGrid::make(L, n);
  }
  read_if(j, "bc_tol", cfg.tol.bc_tol);
  read_if(j, "eigen_tol", cfg.tol.eigen_tol);
  read_if(j, "detS_tol", cfg.tol.detS_tol);
  read_if(j, "sing_eps", cfg.tol.sing_eps);
  read_if(j, "m_floor", cfg.tol.m_floor);
  read_if(j, "decay_tol", cfg.tol.decay_tol);
  read_if(j, "margin_min", cfg.tol.margin_min);
  read_if(j, "simple_tol", cfg.tol.simple_tol);
  read_if(j, "resonance_tol", cfg.tol.resonance_tol);
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  cfg.validate();
  return cfg;
}

std::string RunConfig::to_json_string() const {
  json j;
  j["grid"] = {{"L", grid.half_width}, {"n", grid.n_points}};
  j["bc_tol"] = tol.bc_tol;
  j["eigen_tol"] = tol.eigen_tol;
  j["detS_tol"] = tol.detS_tol;
  j["sing_eps"] = tol.sing_eps;
  j["m_floor"] = tol.m_floor;
  j["decay_tol"] = tol.decay_tol;
  j["margin_min"] = tol.margin_min;
  j["simple_tol"] = tol.simple_tol;
  j["resonance_tol"] = tol.resonance_tol;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  return j.dump(1);
}

}  // namespace cll
