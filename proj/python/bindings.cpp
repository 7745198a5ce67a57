#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptheta/fatou.hpp"
#include "ptheta/fractal.hpp"
#include "ptheta/germ.hpp"
#include "ptheta/invariants.hpp"
#include "ptheta/io.hpp"
#include "ptheta/suite.hpp"
#include "ptheta/theta.hpp"

namespace py = pybind11;
using namespace ptheta;

PYBIND11_MODULE(_ptheta, m) {
  m.doc() = "Fatou coordinates, dynamic theta functions and invariants of parabolic germs";

  py::register_exception<GermError>(m, "GermError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<FatouError>(m, "FatouError", PyExc_ArithmeticError);
  py::register_exception<ThetaError>(m, "ThetaError", PyExc_ArithmeticError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ArithmeticError);
  py::register_exception<FractalError>(m, "FractalError", PyExc_ArithmeticError);

  py::class_<ParabolicGerm>(m, "Germ")
      .def_property_readonly("k", &ParabolicGerm::k)
      .def_property_readonly("a", &ParabolicGerm::a)
      .def_property_readonly("N", &ParabolicGerm::N)
      .def_property_readonly("is_model", &ParabolicGerm::is_model)
      .def("__call__", &ParabolicGerm::operator())
      .def("inverse", &ParabolicGerm::inverse)
      .def("t", &ParabolicGerm::t)
      .def("attracting_center", &ParabolicGerm::attracting_center)
      .def("petal_of", &ParabolicGerm::petal_of)
      .def("coefficients", [](const ParabolicGerm& f) {
        std::vector<cd> c;
        for (int e = 1; e < f.series().order(); ++e) c.push_back(f.series()[e]);
        return c;
      });

  m.def("model", &model_of, py::arg("k"), py::arg("a"), py::arg("N") = 60);
  m.def("polynomial", &from_coefficients, py::arg("coeffs"), py::arg("N") = 60,
        "Germ from the coefficients of x, x^2, ...; the first must be 1.");
  m.def("residual_invariant", &residual_invariant);
  m.def("prenormalize", [](const ParabolicGerm& f) { return prenormalize(f).germ; });
  m.def("orbit", [](const ParabolicGerm& f, cd x0, int M) { return iterate_orbit(f, x0, M).points; },
        py::arg("germ"), py::arg("x0"), py::arg("M"));

  py::class_<FatouEvaluator>(m, "Fatou")
      .def(py::init<const ParabolicGerm&, cd>(), py::arg("germ"), py::arg("x0"))
      .def("__call__", &FatouEvaluator::operator())
      .def("inverse", &FatouEvaluator::inverse)
      .def("derivative", &FatouEvaluator::derivative)
      .def_property_readonly("rho", [](const FatouEvaluator& E) { return E.formal().rho; })
      .def_property_readonly("prenormal_constant", &FatouEvaluator::prenormal_constant);

  py::class_<ThetaEvaluator>(m, "Theta")
      .def(py::init([](const ParabolicGerm& f, cd x0) { return new ThetaEvaluator(f, x0); }), py::arg("germ"),
           py::arg("x0"))
      .def("direct", [](const ThetaEvaluator& T, cd s) { return T.direct(s).value; })
      .def("strip", [](const ThetaEvaluator& T, cd s, int k) { return T.strip(s, k).value; })
      .def("__call__", [](const ThetaEvaluator& T, cd s) { return T.main(s).value; })
      .def("jump", [](const ThetaEvaluator& T, int k, cd s) { return T.jump(k, s).value; })
      .def("continued",
           [](const ThetaEvaluator& T, const std::string& sheet) { return T.continued(parse_sheet_point(sheet)).value; })
      .def("residue_at_zero", [](const ThetaEvaluator& T, double r) { return T.residue_at_zero(r).value; },
           py::arg("r") = 0.5)
      .def("recover_fatou", [](const ThetaEvaluator& T, cd x) {
        Recovery r = recover_fatou(T, x);
        return py::make_tuple(r.value, r.offset);
      });

  m.def("horn_coefficients", [](const FatouEvaluator& E, int j, int modes) {
    FourierParams p;
    p.modes = modes;
    std::vector<std::pair<int, cd>> out;
    for (const EVEntry& e : fourier_coefficients(E, j, p).entries) out.emplace_back(e.m, e.A);
    return out;
  }, py::arg("fatou"), py::arg("j"), py::arg("modes") = 1);
  m.def("theta_invariant", [](const ThetaEvaluator& T, int k) { return invariant_from_theta(T, k).A; });

  m.def("epsilons", [](const ParabolicGerm& f, cd x0, int M) { return epsilons(f, iterate_orbit(f, x0, M)).eps; });
  m.def("minkowski", [](const ParabolicGerm& f, cd x0, int M) {
    MinkowskiFit r = minkowski_fit(epsilons(f, iterate_orbit(f, x0, M)));
    return py::dict(py::arg("D") = r.D, py::arg("M") = r.M, py::arg("residual") = r.residual);
  });
  m.def("fractal_theta", [](const ParabolicGerm& f, cd x0, int M, cd s) {
    return fractal_theta(epsilons(f, iterate_orbit(f, x0, M)), s).value;
  });

  m.def("acceptance", [](int id) {
    CheckResult r = run_criterion(id);
    return py::make_tuple(r.passed, r.measured, r.tolerance, format(r));
  });
}
