#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tritangle/errors.hpp"
#include "tritangle/measures.hpp"
#include "tritangle/states.hpp"
#include "tritangle/teleport.hpp"

namespace py = pybind11;
using namespace tritangle;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

PureState3 to_state(const CArray& a) {
    if (a.ndim() != 1 || a.shape(0) != 8) throw InputError("expected 8 complex amplitudes");
    PureState3::Amplitudes amps{};
    for (py::ssize_t k = 0; k < 8; ++k) amps[k] = a.at(k);
    return PureState3(amps);
}

CArray to_array(const PureState3& psi) {
    CArray out(8);
    for (py::ssize_t k = 0; k < 8; ++k) out.mutable_at(k) = psi[k];
    return out;
}

CArray matrix_to_array(const Matrix& m) {
    CArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.mutable_at(r, c) = m(r, c);
    return out;
}

CanonicalCoeffs to_coeffs(const std::array<double, 5>& lambda, double theta) {
    CanonicalCoeffs c{lambda, theta};
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-qubit entanglement measures and measurement-assisted teleportation";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ArithmeticError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("named_state", [](const std::string& name) { return to_array(named_state(parse_named_state(name))); },
          py::arg("name"), "GHZ, W or product as 8 amplitudes (index 4*q1 + 2*q2 + q3).");
    m.def("haar_random", [](std::uint64_t seed, std::uint64_t index) { return to_array(haar_random(seed, index)); },
          py::arg("seed"), py::arg("index") = 0);
    m.def("random_canonical",
          [](std::uint64_t seed, std::uint64_t index) {
              const CanonicalCoeffs c = random_canonical(seed, index);
              return py::make_tuple(c.lambda, c.theta);
          },
          py::arg("seed"), py::arg("index") = 0, "Random (lambda[5], theta).");
    m.def("from_canonical",
          [](const std::array<double, 5>& lambda, double theta) { return to_array(from_canonical(to_coeffs(lambda, theta))); },
          py::arg("lam"), py::arg("theta"));
    m.def("to_canonical",
          [](const CArray& psi) {
              const PureState3 s = to_state(psi);
              const Canonicalization c = to_canonical(s);
              py::dict d;
              d["lambda"] = c.coeffs.lambda;
              d["theta"] = c.coeffs.theta;
              d["locals"] = py::make_tuple(matrix_to_array(c.locals[0]), matrix_to_array(c.locals[1]),
                                           matrix_to_array(c.locals[2]));
              d["residual"] = c.residual(s);
              return d;
          },
          py::arg("psi"));

    m.def("measures",
          [](const CArray& psi) {
              const MeasureSet s = compute_measures(to_state(psi));
              py::dict d;
              d["c12"] = s.c12;
              d["c23"] = s.c23;
              d["c31"] = s.c31;
              d["c1_23"] = s.c1_23;
              d["c2_31"] = s.c2_31;
              d["c3_12"] = s.c3_12;
              d["tau"] = s.tau;
              d["tau12"] = s.tau12;
              d["tau23"] = s.tau23;
              d["tau31"] = s.tau31;
              d["ghz_class"] = s.ghz_class;
              return d;
          },
          py::arg("psi"));
    m.def("three_tangle", [](const CArray& psi, Qubit focus) { return three_tangle(to_state(psi), focus); },
          py::arg("psi"), py::arg("focus") = 1);
    m.def("partial_tangle", [](const CArray& psi, Qubit i, Qubit j) { return partial_tangle(to_state(psi), i, j); },
          py::arg("psi"), py::arg("i"), py::arg("j"));
    m.def("pair_concurrence", [](const CArray& psi, Qubit i, Qubit j) { return pair_concurrence(to_state(psi), i, j); },
          py::arg("psi"), py::arg("i"), py::arg("j"));
    m.def("partial_tangle_closed_form",
          [](const std::array<double, 5>& lambda, double theta) {
              const PartialTangles t = partial_tangle_closed_form(to_coeffs(lambda, theta));
              return py::make_tuple(t.tau12, t.tau23, t.tau31);
          },
          py::arg("lam"), py::arg("theta"));

    m.def("optimize_measurement",
          [](const CArray& psi, Qubit focus) {
              const TeleportReport r = optimize_measurement(to_state(psi), focus);
              py::dict d;
              d["f"] = r.f;
              d["F"] = r.F;
              d["setting"] = py::make_tuple(r.setting.t, r.setting.a, r.setting.b);
              d["tau_partner"] = r.tau_partner;
              return d;
          },
          py::arg("psi"), py::arg("focus"));
    m.def("f_closed_form",
          [](const std::array<double, 5>& lambda, double theta) { return f_closed_form(to_coeffs(lambda, theta)); },
          py::arg("lam"), py::arg("theta"));
    m.def("split_fidelity",
          [](const CArray& psi, Qubit focus, double t, double a, double b) {
              return split_fidelity_objective(to_state(psi), focus, {t, a, b});
          },
          py::arg("psi"), py::arg("focus"), py::arg("t"), py::arg("a"), py::arg("b"));
    m.def("mc_average_fidelity",
          [](const CArray& psi, Qubit focus, double t, double a, double b, std::size_t samples, std::uint64_t seed) {
              const McResult r = mc_average_fidelity(to_state(psi), focus, {t, a, b}, samples, seed);
              return py::make_tuple(r.estimate, r.standard_error);
          },
          py::arg("psi"), py::arg("focus"), py::arg("t"), py::arg("a"), py::arg("b"), py::arg("samples"),
          py::arg("seed"));
    m.def("fef_pure",
          [](const std::array<cplx, 4>& amps) { return fef_pure(TwoQubitPure(amps)); }, py::arg("phi"));
    m.def("fidelity_from_fef", &fidelity_from_fef, py::arg("f"));
}
