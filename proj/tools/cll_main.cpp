// Command-line surface for the Chen-Lee-Liu direct-scattering / Darboux
// pipeline: scattering sweeps, eigenvalue search, soliton addition/removal,
// soliton generation, PDE evolution runs, and the verification suite.
//
// Errors leave as structured JSON on stderr and a nonzero exit status; the
// human summary goes to stdout.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cll/config.hpp"
#include "cll/darboux.hpp"
#include "cll/evolution.hpp"
#include "cll/io.hpp"
#include "cll/jost.hpp"
#include "cll/scattering.hpp"
#include "cll/types.hpp"
#include "cll/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cll;

namespace {

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

cd parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw Error(ErrorKind::Parse, "expected re,im, got " + s);
  if (is >> comma) {
    if (comma != ',' || !(is >> im))
      throw Error(ErrorKind::Parse, "expected re,im, got " + s);
  }
  return cd(re, im);
}

BoxSpec parse_box(const std::string& s) {
  std::istringstream is(s);
  BoxSpec box{};
  char c1 = 0, c2 = 0, c3 = 0;
  if (!(is >> box.re_lo >> c1 >> box.im_lo >> c2 >> box.re_hi >> c3 >> box.im_hi) ||
      c1 != ',' || c2 != ',' || c3 != ',')
    throw Error(ErrorKind::Parse, "expected re_lo,im_lo,re_hi,im_hi, got " + s);
  return box;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << j.dump(1) << "\n";
}

void write_curve_csv(const RunConfig& cfg, const std::string& name,
                     const ScatteringCurve& curve) {
  std::vector<std::vector<double>> rows;
  for (const auto& s : curve.samples)
    rows.push_back({s.lambda.lambda.real(), s.lambda.lambda.imag(), s.a.real(), s.a.imag(),
                    s.b.real(), s.b.imag(), s.l.real(), s.l.imag(), s.detS_residual});
  write_csv(out_path(cfg, name),
            {"lambda_re", "lambda_im", "a_re", "a_im", "b_re", "b_im", "l_re", "l_im",
             "detS_residual"},
            rows);
}

json eigen_record_json(const EigenvalueRecord& r) {
  return json{{"lambda", complex_json(r.lambda.lambda)},
              {"a_abs", r.a_abs},
              {"a_prime", complex_json(r.a_prime)},
              {"gamma", complex_json(r.gamma)},
              {"simple", r.simple}};
}

struct GlobalArgs {
  double grid_L = 30.0;
  int grid_n = 1024;
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_json_file(config_path);
    cfg.grid = SpatialGrid::make(grid_L, grid_n);
    cfg.out_dir = out_dir;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
  }
};

Potential load_with_warning(const std::string& path, const RunConfig& cfg) {
  LoadReport rep;
  Potential pot = load_potential(path, &rep, cfg.tol.decay_tol);
  if (rep.decay_warning)
    std::printf("warning: |q| = %.3e at the grid ends exceeds decay_tol %.1e\n",
                rep.end_amplitude, cfg.tol.decay_tol);
  return pot;
}

// Remove-direction seed near the requested parameter: counts zeros in a small
// box first so an empty neighborhood fails cleanly.
SpectralPoint locate_eigenvalue(const Potential& pot, cd lambda1, const RunConfig& cfg) {
  const double halo = 0.25;
  BoxSpec box{std::max(cfg.tol.margin_min, lambda1.real() - halo),
              std::max(cfg.tol.margin_min, lambda1.imag() - halo), lambda1.real() + halo,
              lambda1.imag() + halo};
  if (winding_number(pot, box, cfg.tol) == 0)
    throw Error(ErrorKind::NotEigenvalue,
                "no eigenvalue in box around lambda1; nothing to remove");
  return SpectralPoint::make(refine_eigenvalue(pot, lambda1, cfg.tol));
}

int cmd_scatter(const GlobalArgs& gargs, const std::string& pot_path,
                const std::string& contour_spec, const std::string& box_spec,
                const std::string& jost_lambda_s, const std::string& jost_side_s) {
  const RunConfig cfg = gargs.resolve();
  const Potential pot = load_with_warning(pot_path, cfg);
  const ContourSpec contour = ContourSpec::parse(contour_spec);
  const ScatteringCurve curve = scattering_curve(pot, contour.points(), cfg.tol, cfg.threads);
  write_curve_csv(cfg, "scatter_curve.csv", curve);

  if (!jost_lambda_s.empty()) {
    const Side side = jost_side_s == "plus" ? Side::Plus : Side::Minus;
    const SpectralPoint lam = SpectralPoint::make(parse_complex(jost_lambda_s));
    JostOptions jopt;
    jopt.decay_tol = cfg.tol.decay_tol;
    const JostPair jp = solve_jost(pot, lam, side, jopt);
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < pot.grid.n_points; ++k)
      rows.push_back({pot.grid.x(k), jp.column_1.c1[k].real(), jp.column_1.c1[k].imag(),
                      jp.column_1.c2[k].real(), jp.column_1.c2[k].imag(),
                      jp.column_2.c1[k].real(), jp.column_2.c1[k].imag(),
                      jp.column_2.c2[k].real(), jp.column_2.c2[k].imag()});
    write_csv(out_path(cfg, "jost_columns.csv"),
              {"x", "col1_c1_re", "col1_c1_im", "col1_c2_re", "col1_c2_im", "col2_c1_re",
               "col2_c1_im", "col2_c2_re", "col2_c2_im"},
              rows);
    std::printf("scatter: Jost columns at lambda = %s (%s side) written, residual %.3e\n",
                jost_lambda_s.c_str(), to_string(side), jp.residual);
  }

  json summary;
  summary["n_samples"] = curve.samples.size();
  double worst_detS = 0.0;
  for (const auto& s : curve.samples) worst_detS = std::max(worst_detS, s.detS_residual);
  summary["max_detS_residual"] = worst_detS;
  if (!box_spec.empty()) {
    const BoxSpec box = parse_box(box_spec);
    const auto recs = find_eigenvalues(pot, box, cfg.tol);
    summary["z_n"] = recs.size();
    json list = json::array();
    for (const auto& r : recs) list.push_back(eigen_record_json(r));
    summary["eigenvalues"] = std::move(list);
  }
  write_json(out_path(cfg, "scatter_summary.json"), summary);
  std::printf("scatter: %zu samples, max detS residual %.3e\n", curve.samples.size(),
              worst_detS);
  if (summary.contains("z_n"))
    std::printf("scatter: Z_%d in the requested box\n", summary["z_n"].get<int>());
  return 0;
}

int cmd_eigen(const GlobalArgs& gargs, const std::string& pot_path,
              const std::string& box_spec) {
  const RunConfig cfg = gargs.resolve();
  const Potential pot = load_with_warning(pot_path, cfg);
  const auto recs = find_eigenvalues(pot, parse_box(box_spec), cfg.tol);
  json list = json::array();
  for (const auto& r : recs) list.push_back(eigen_record_json(r));
  write_json(out_path(cfg, "eigenvalues.json"), list);
  std::printf("eigen: %zu record(s) written\n", recs.size());
  for (const auto& r : recs)
    std::printf("  lambda = %.12g%+.12gi  |a'| = %.3e  gamma = %.6g%+.6gi\n",
                r.lambda.lambda.real(), r.lambda.lambda.imag(), std::abs(r.a_prime),
                r.gamma.real(), r.gamma.imag());
  return 0;
}

struct DtArgs {
  std::string seed_spec_path;
  std::string lambda1 = "0.8,0.6";
  std::string mode = "remove";
  std::string alpha1 = "1,0";
  std::string c1 = "1,0";
  std::string c2 = "1,0";
  bool check_roundtrip = false;
};

int cmd_dt(const GlobalArgs& gargs, const std::string& pot_path, const DtArgs& args) {
  const RunConfig cfg = gargs.resolve();
  const Potential pot = load_with_warning(pot_path, cfg);

  cd lambda1 = parse_complex(args.lambda1);
  cd alpha1 = parse_complex(args.alpha1);
  cd c1 = parse_complex(args.c1), c2 = parse_complex(args.c2);
  std::string mode = args.mode;
  if (!args.seed_spec_path.empty()) {
    std::ifstream in(args.seed_spec_path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + args.seed_spec_path);
    json spec;
    try {
      in >> spec;
    } catch (const std::exception& e) {
      throw Error(ErrorKind::Parse, "invalid seed spec: " + std::string(e.what()));
    }
    if (spec.contains("lambda1"))
      lambda1 = cd(spec["lambda1"][0].get<double>(), spec["lambda1"][1].get<double>());
    if (spec.contains("mode")) mode = spec["mode"].get<std::string>();
    if (spec.contains("alpha1"))
      alpha1 = cd(spec["alpha1"][0].get<double>(), spec["alpha1"][1].get<double>());
    if (spec.contains("c1")) c1 = cd(spec["c1"][0].get<double>(), spec["c1"][1].get<double>());
    if (spec.contains("c2")) c2 = cd(spec["c2"][0].get<double>(), spec["c2"][1].get<double>());
  }
  if (mode != "remove" && mode != "add")
    throw Error(ErrorKind::Precondition, "mode must be remove or add");

  const BoxSpec report_box{cfg.tol.margin_min, cfg.tol.margin_min,
                           std::max(2.0, lambda1.real() + 1.0),
                           std::max(2.0, lambda1.imag() + 1.0)};
  json report;
  report["mode"] = mode;
  {
    json before = json::array();
    for (const auto& r : find_eigenvalues(pot, report_box, cfg.tol))
      before.push_back(eigen_record_json(r));
    report["eigenvalues_before"] = std::move(before);
  }

  Potential out = pot;
  if (mode == "remove") {
    const SpectralPoint z = locate_eigenvalue(pot, lambda1, cfg);
    const DarbouxSeed seed = eigenvalue_seed(pot, z, cfg.tol.eigen_tol);
    out = apply_dt(pot, seed, cfg.tol.m_floor);
    report["lambda1"] = complex_json(z.lambda);
    if (args.check_roundtrip) {
      const ComplexVec2Field inv = inverse_dt_seed(seed, cfg.tol.m_floor);
      const Potential back = apply_dt(
          out, DarbouxSeed::from_field(z.lambda, inv, SeedProvenance::InverseFormula),
          cfg.tol.m_floor);
      double res = 0.0;
      for (int k = 0; k < pot.grid.n_points; ++k)
        res = std::max(res, std::abs(back.q[k] - pot.q[k]));
      report["roundtrip_residual"] = res;
    }
  } else {
    const SpectralPoint p1 = SpectralPoint::make(lambda1);
    if (p1.quadrant != Quadrant::CI)
      throw Error(ErrorKind::Precondition, "lambda1 must lie in C_I");
    if (pot.sup_norm() == 0.0) {
      // vacuum background: explicit exponential seed with the c-constants
      out = apply_dt(pot, DarbouxSeed::vacuum(pot.grid, lambda1, c1, c2), cfg.tol.m_floor);
    } else {
      const cd a1 = jost_a_coefficient(pot, p1);
      if (std::abs(a1) <= cfg.tol.eigen_tol)
        throw Error(ErrorKind::Precondition,
                    "background already has an eigenvalue at lambda1");
      const ComplexVec2Field vm = solve_jost_column(pot, p1, Side::Minus, 1);
      const ComplexVec2Field pp = solve_jost_column(pot, p1, Side::Plus, 2);
      const ComplexVec2Field seed_field = add_seed_from_jost(vm, pp, lambda1, alpha1);
      out = apply_dt(pot, DarbouxSeed::from_field(lambda1, seed_field,
                                                  SeedProvenance::InverseFormula),
                     cfg.tol.m_floor);
    }
    report["lambda1"] = complex_json(lambda1);
    if (args.check_roundtrip) {
      const SpectralPoint z = locate_eigenvalue(out, lambda1, cfg);
      const Potential back =
          apply_dt(out, eigenvalue_seed(out, z, cfg.tol.eigen_tol), cfg.tol.m_floor);
      double res = 0.0;
      for (int k = 0; k < pot.grid.n_points; ++k)
        res = std::max(res, std::abs(back.q[k] - pot.q[k]));
      report["roundtrip_residual"] = res;
    }
  }

  {
    json after = json::array();
    for (const auto& r : find_eigenvalues(out, report_box, cfg.tol))
      after.push_back(eigen_record_json(r));
    report["eigenvalues_after"] = std::move(after);
  }
  save_potential(out, out_path(cfg, "dt_potential.json"));
  write_json(out_path(cfg, "dt_report.json"), report);
  std::printf("dt %s: %zu -> %zu eigenvalue(s) in the report box\n", mode.c_str(),
              report["eigenvalues_before"].size(), report["eigenvalues_after"].size());
  if (report.contains("roundtrip_residual"))
    std::printf("dt: round-trip residual %.3e\n",
                report["roundtrip_residual"].get<double>());
  return 0;
}

int cmd_soliton(const GlobalArgs& gargs, const std::string& lambda1_s, const std::string& c1_s,
                const std::string& c2_s, double t, const std::string& out_name) {
  const RunConfig cfg = gargs.resolve();
  const cd lambda1 = parse_complex(lambda1_s);
  const Potential sol =
      soliton_solution(lambda1, parse_complex(c1_s), parse_complex(c2_s), t, cfg.grid);
  const std::string path = out_path(cfg, out_name);
  save_potential(sol, path);
  std::printf("soliton: |q|_sup = %.6f written to %s\n", sol.sup_norm(), path.c_str());
  return 0;
}

int cmd_evolve(const GlobalArgs& gargs, const std::string& pot_path, double T, double dt,
               int snap_every, const std::string& probes_s, const std::string& track_s) {
  const RunConfig cfg = gargs.resolve();
  const Potential q0 = load_with_warning(pot_path, cfg);

  EvolveOptions opt;
  opt.snap_every = snap_every;
  opt.tol = cfg.tol;
  opt.tol.decay_tol = std::max(opt.tol.decay_tol, 1e-7);  // dealiasing ringing
  if (!probes_s.empty()) {
    std::istringstream is(probes_s);
    std::string tok;
    while (std::getline(is, tok, ',')) opt.probe_lambdas.push_back(cd(std::stod(tok), 0.0));
  }
  if (!track_s.empty()) {
    opt.track_eigenvalue = true;
    opt.eigen_reference = parse_complex(track_s);
  }
  if (dt <= 0.0) dt = 0.7 * max_stable_dt(q0.grid, opt.pde);

  const Trajectory traj = run_evolution(q0, T, dt, opt);

  std::vector<std::vector<double>> rows;
  for (const auto& d : traj.diagnostics)
    rows.push_back({d.t, d.mass, d.sup_norm, d.detS_probe, d.eigen_drift});
  write_csv(out_path(cfg, "diagnostics.csv"),
            {"t", "mass", "sup_norm", "detS_probe", "eigen_drift"}, rows);
  for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06zu.json", j);
    save_potential(traj.snapshots[j], out_path(cfg, name));
  }
  std::printf("evolve: %d step(s), %zu snapshot(s), %s\n", traj.steps, traj.snapshots.size(),
              traj.completed ? "completed" : ("stopped early: " + traj.stop_reason).c_str());
  const double m0 = traj.diagnostics.front().mass;
  if (m0 > 0.0)
    std::printf("evolve: relative mass drift %.3e\n",
                std::abs(traj.diagnostics.back().mass - m0) / m0);
  return traj.completed ? 0 : 1;
}

int cmd_verify(const GlobalArgs& gargs) {
  const RunConfig cfg = gargs.resolve();
  const auto results = run_verify(cfg);
  json checks = json::array();
  bool ok = true;
  for (const auto& r : results) {
    checks.push_back(json{{"name", r.name},
                          {"residual", r.residual},
                          {"tol", r.tol},
                          {"pass", r.pass},
                          {"detail", r.detail}});
    std::printf("[%s] %-28s residual %.3e (tol %.1e)\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.residual, r.tol);
    ok = ok && r.pass;
  }
  json report;
  report["checks"] = std::move(checks);
  report["pass"] = ok;
  write_json(out_path(cfg, "verify_report.json"), report);
  std::printf("verify: %s\n", ok ? "all checks passed" : "FAILURES present");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct scattering and Darboux transformations for the Chen-Lee-Liu equation"};
  app.require_subcommand(1);

  GlobalArgs gargs;
  app.add_option("--grid-L", gargs.grid_L, "half-width of the spatial grid");
  app.add_option("--grid-n", gargs.grid_n, "number of grid points (even)");
  app.add_option("--config", gargs.config_path, "JSON config with tolerances");
  app.add_option("--out-dir", gargs.out_dir, "output directory");
  app.add_option("--threads", gargs.threads, "threads for contour sweeps");

  std::string pot_path, contour = "real:0.1:3:64", box_spec, jost_lambda, jost_side = "minus";
  auto* scatter = app.add_subcommand("scatter", "scattering coefficients along a contour");
  scatter->add_option("potential", pot_path, "potential JSON file")->required();
  scatter->add_option("--contour", contour, "kind:lo:hi:count (real|imag|mixed)");
  scatter->add_option("--box", box_spec, "eigenvalue box re_lo,im_lo,re_hi,im_hi");
  scatter->add_option("--jost-lambda", jost_lambda, "also emit Jost columns at re,im");
  scatter->add_option("--jost-side", jost_side, "minus | plus");

  std::string eigen_pot, eigen_box = "0.1,0.1,2.0,2.0";
  auto* eigen = app.add_subcommand("eigen", "locate eigenvalues in a box in C_I");
  eigen->add_option("potential", eigen_pot, "potential JSON file")->required();
  eigen->add_option("--box", eigen_box, "re_lo,im_lo,re_hi,im_hi");

  std::string dt_pot;
  DtArgs dt_args;
  auto* dt = app.add_subcommand("dt", "add or remove one soliton");
  dt->add_option("potential", dt_pot, "potential JSON file")->required();
  dt->add_option("--seed-spec", dt_args.seed_spec_path, "JSON seed spec");
  dt->add_option("--lambda1", dt_args.lambda1, "spectral parameter re,im");
  dt->add_option("--mode", dt_args.mode, "remove | add");
  dt->add_option("--alpha1", dt_args.alpha1, "norming parameter for add, re,im");
  dt->add_option("--c1", dt_args.c1, "vacuum seed constant re,im");
  dt->add_option("--c2", dt_args.c2, "vacuum seed constant re,im");
  dt->add_flag("--check-roundtrip", dt_args.check_roundtrip, "verify the inverse map");

  std::string sol_lambda = "0.8,0.6", sol_c1 = "1,0", sol_c2 = "1,0",
              sol_out = "soliton.json";
  double sol_t = 0.0;
  auto* soliton = app.add_subcommand("soliton", "write a one-soliton potential");
  soliton->add_option("--lambda1", sol_lambda, "eigenvalue re,im in C_I");
  soliton->add_option("--c1", sol_c1, "seed constant re,im");
  soliton->add_option("--c2", sol_c2, "seed constant re,im");
  soliton->add_option("--t", sol_t, "time of the analytic family");
  soliton->add_option("--out", sol_out, "output filename");

  std::string ev_pot, ev_probes, ev_track;
  double ev_T = 0.5, ev_dt = 0.0;
  int ev_snap = 0;
  auto* evolve = app.add_subcommand("evolve", "integrate the equation in time");
  evolve->add_option("potential", ev_pot, "potential JSON file")->required();
  evolve->add_option("--T", ev_T, "final time")->required();
  evolve->add_option("--dt", ev_dt, "time step (default from the CFL bound)");
  evolve->add_option("--snap-every", ev_snap, "snapshot cadence in steps");
  evolve->add_option("--probe-lambdas", ev_probes, "comma list of real probe lambdas");
  evolve->add_option("--track-eigen", ev_track, "eigenvalue to track, re,im");

  auto* verify = app.add_subcommand("verify", "run the full invariant suite");

  try {
    app.parse(argc, argv);
    if (scatter->parsed())
      return cmd_scatter(gargs, pot_path, contour, box_spec, jost_lambda, jost_side);
    if (eigen->parsed()) return cmd_eigen(gargs, eigen_pot, eigen_box);
    if (dt->parsed()) return cmd_dt(gargs, dt_pot, dt_args);
    if (soliton->parsed()) return cmd_soliton(gargs, sol_lambda, sol_c1, sol_c2, sol_t, sol_out);
    if (evolve->parsed())
      return cmd_evolve(gargs, ev_pot, ev_T, ev_dt, ev_snap, ev_probes, ev_track);
    if (verify->parsed()) return cmd_verify(gargs);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    json err{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    std::printf("error (%s): %s\n", to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    std::printf("internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
