#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cll/config.hpp"
#include "cll/darboux.hpp"
#include "cll/evolution.hpp"
#include "cll/io.hpp"
#include "cll/jost.hpp"
#include "cll/scattering.hpp"
#include "cll/types.hpp"
#include "cll/verify.hpp"

namespace py = pybind11;
using namespace cll;

namespace {

Side side_from(const std::string& s) {
  if (s == "minus") return Side::Minus;
  if (s == "plus") return Side::Plus;
  throw Error(ErrorKind::Precondition, "side must be 'minus' or 'plus'");
}

}  // namespace

PYBIND11_MODULE(_cll, m) {
  m.doc() = "Direct scattering and Darboux-transformation machinery for the "
            "Chen-Lee-Liu equation";

  py::register_exception<Error>(m, "CllError");

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init(&SpatialGrid::make), py::arg("half_width"), py::arg("n_points"))
      .def_readonly("half_width", &SpatialGrid::half_width)
      .def_readonly("n_points", &SpatialGrid::n_points)
      .def_property_readonly("spacing", &SpatialGrid::spacing)
      .def("samples", &SpatialGrid::samples);

  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero, py::arg("grid"))
      .def_static("reduced_from", &Potential::reduced_from, py::arg("grid"), py::arg("q"))
      .def_static("coupled", &Potential::coupled, py::arg("grid"), py::arg("q"), py::arg("r"))
      .def_readonly("grid", &Potential::grid)
      .def_readonly("q", &Potential::q)
      .def_readonly("r", &Potential::r)
      .def_readonly("reduced", &Potential::reduced)
      .def_property_readonly("sup_norm", &Potential::sup_norm)
      .def_property_readonly("mass", &Potential::mass)
      .def_property_readonly("end_amplitude", &Potential::end_amplitude);

  m.def(
      "load_potential",
      [](const std::string& path, double decay_tol) {
        LoadReport rep;
        Potential p = load_potential(path, &rep, decay_tol);
        return py::make_tuple(p, rep.decay_warning);
      },
      py::arg("path"), py::arg("decay_tol") = 1e-10,
      "Load a potential JSON file; returns (potential, decay_warning).");
  m.def("save_potential", &save_potential, py::arg("potential"), py::arg("path"));

  py::class_<ComplexVec2Field>(m, "ComplexVec2Field")
      .def_readonly("grid", &ComplexVec2Field::grid)
      .def_readonly("c1", &ComplexVec2Field::c1)
      .def_readonly("c2", &ComplexVec2Field::c2);

  py::class_<JostPair>(m, "JostPair")
      .def_property_readonly("lam", [](const JostPair& j) { return j.lambda.lambda; })
      .def_property_readonly("side", [](const JostPair& j) { return std::string(to_string(j.side)); })
      .def_readonly("column_1", &JostPair::column_1)
      .def_readonly("column_2", &JostPair::column_2)
      .def_readonly("residual", &JostPair::residual)
      .def_readonly("column_1_analytic", &JostPair::column_1_analytic)
      .def_readonly("column_2_analytic", &JostPair::column_2_analytic);

  m.def(
      "solve_jost",
      [](const Potential& pot, cd lambda, const std::string& side) {
        return solve_jost(pot, SpectralPoint::make(lambda), side_from(side));
      },
      py::arg("potential"), py::arg("lam"), py::arg("side") = "minus");

  m.def(
      "scattering_coefficients",
      [](const Potential& pot, cd lambda) {
        const ScatteringResult r = scattering_coefficients(pot, SpectralPoint::make(lambda));
        return py::make_tuple(r.a, r.b ? py::cast(*r.b) : py::none());
      },
      py::arg("potential"), py::arg("lam"),
      "Returns (a, b); b is None off the continuous spectrum.");

  py::class_<ScatteringPoint>(m, "ScatteringPoint")
      .def_property_readonly("lam", [](const ScatteringPoint& s) { return s.lambda.lambda; })
      .def_readonly("a", &ScatteringPoint::a)
      .def_readonly("b", &ScatteringPoint::b)
      .def_readonly("l", &ScatteringPoint::l)
      .def_readonly("detS_residual", &ScatteringPoint::detS_residual)
      .def_readonly("l_valid", &ScatteringPoint::l_valid);

  m.def(
      "scattering_curve",
      [](const Potential& pot, const std::vector<cd>& contour, int threads) {
        return scattering_curve(pot, contour, Tolerances{}, threads).samples;
      },
      py::arg("potential"), py::arg("contour"), py::arg("threads") = 1);

  py::class_<EigenvalueRecord>(m, "EigenvalueRecord")
      .def_property_readonly("lam", [](const EigenvalueRecord& r) { return r.lambda.lambda; })
      .def_readonly("a_abs", &EigenvalueRecord::a_abs)
      .def_readonly("a_prime", &EigenvalueRecord::a_prime)
      .def_readonly("gamma", &EigenvalueRecord::gamma)
      .def_readonly("simple", &EigenvalueRecord::simple);

  m.def(
      "find_eigenvalues",
      [](const Potential& pot, double re_lo, double im_lo, double re_hi, double im_hi) {
        return find_eigenvalues(pot, BoxSpec{re_lo, im_lo, re_hi, im_hi});
      },
      py::arg("potential"), py::arg("re_lo"), py::arg("im_lo"), py::arg("re_hi"),
      py::arg("im_hi"));

  py::class_<DarbouxSeed>(m, "DarbouxSeed")
      .def_static(
          "vacuum",
          [](const SpatialGrid& g, cd l1, cd c1, cd c2, double t) {
            return DarbouxSeed::vacuum(g, l1, c1, c2, t);
          },
          py::arg("grid"), py::arg("lambda1"), py::arg("c1") = cd(1, 0),
          py::arg("c2") = cd(1, 0), py::arg("t") = 0.0)
      .def_static("from_jost", &DarbouxSeed::from_jost, py::arg("jost_pair"), py::arg("column"))
      .def_property_readonly("lambda1",
                             [](const DarbouxSeed& s) { return s.lambda1.lambda; })
      .def_readonly("phi", &DarbouxSeed::phi);

  m.def("apply_dt", &apply_dt, py::arg("potential"), py::arg("seed"),
        py::arg("m_floor") = 1e-12);
  m.def(
      "inverse_dt_seed",
      [](const DarbouxSeed& s) { return inverse_dt_seed(s); },
      py::arg("seed"));
  m.def(
      "make_seed",
      [](cd lambda1, const ComplexVec2Field& phi) {
        return DarbouxSeed::from_field(lambda1, phi, SeedProvenance::InverseFormula);
      },
      py::arg("lambda1"), py::arg("phi"));

  m.def("soliton_solution", &soliton_solution, py::arg("lambda1"), py::arg("c1"),
        py::arg("c2"), py::arg("t"), py::arg("grid"));

  m.def(
      "pde_step", [](const Potential& p, double dt) { return pde_step(p, dt); },
      py::arg("potential"), py::arg("dt"));
  m.def(
      "max_stable_dt", [](const SpatialGrid& g) { return max_stable_dt(g); },
      py::arg("grid"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("snapshot_times", &Trajectory::snapshot_times)
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("completed", &Trajectory::completed)
      .def_readonly("steps", &Trajectory::steps);

  m.def(
      "run_evolution",
      [](const Potential& q0, double T, double dt, int snap_every) {
        EvolveOptions opt;
        opt.snap_every = snap_every;
        return run_evolution(q0, T, dt, opt);
      },
      py::arg("q0"), py::arg("T"), py::arg("dt"), py::arg("snap_every") = 0);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("residual", &CheckResult::residual)
      .def_readonly("tol", &CheckResult::tol)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);

  m.def("run_acceptance", [] { return run_acceptance(RunConfig{}); });
  m.def("run_verify", [] { return run_verify(RunConfig{}); });
}
