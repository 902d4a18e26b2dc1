#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "rpquad/cheb.hpp"
#include "rpquad/errors.hpp"
#include "rpquad/harness.hpp"
#include "rpquad/helmholtz.hpp"
#include "rpquad/kernels.hpp"
#include "rpquad/pcv.hpp"
#include "rpquad/quad_engine.hpp"
#include "rpquad/specfun.hpp"

namespace py = pybind11;
using namespace rpq;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <class T>
std::vector<T> from_array(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
    return std::vector<T>(a.data(), a.data() + a.size());
}

Incident parse_incident(const std::string& kind, std::pair<double, double> v) {
    if (kind == "plane") return PlaneWave{{v.first, v.second}};
    if (kind == "point") return PointSource{{v.first, v.second}};
    throw InvalidArgument("incident must be 'plane' or 'point', got '" + kind + "'");
}

ScatterProblem make_problem(const std::string& shape, double kappa, int P, int n, int p,
                            std::optional<double> eta, const std::string& incident,
                            std::pair<double, double> vec, double tol) {
    ScatterProblem pr;
    pr.curve = Curve2D::parse(shape);
    pr.kappa = kappa;
    pr.eta = eta;
    pr.P = P;
    pr.quad = QuadConfig{n, 0, p, 1.0};
    pr.incident = parse_incident(incident, vec);
    pr.gmres_tol = tol;
    pr.validate();
    return pr;
}

py::dict table_to_dict(const ConvergenceTable& t) {
    py::dict d;
    std::vector<int> level, N;
    std::vector<double> error;
    py::list noc;
    for (const auto& r : t.rows) {
        level.push_back(r.level);
        N.push_back(r.N);
        error.push_back(r.error);
        noc.append(r.noc ? py::cast(*r.noc) : py::none());
    }
    d["label"] = t.label;
    d["level"] = to_array(level);
    d["N"] = to_array(N);
    d["error"] = to_array(error);
    d["noc"] = noc;
    const auto order = t.asymptotic_order();
    d["order"] = order ? py::cast(*order) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rectangular-polar quadrature for weakly singular convolution integrals";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<CoincidentPoint>(m, "CoincidentPoint", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<AccuracyNotReached>(m, "AccuracyNotReached", PyExc_RuntimeError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    py::register_exception<OutOfPatch>(m, "OutOfPatch", PyExc_IndexError);
    py::register_exception<ProximityError>(m, "ProximityError", PyExc_RuntimeError);

    // Chebyshev tools
    m.def("cheb_nodes", [](int n) { return to_array(cheb_nodes(n)); }, py::arg("n"));
    m.def("fejer1_weights", [](int n) { return to_array(fejer1_weights(n)); }, py::arg("n"));
    m.def(
        "discrete_cheb_coeffs",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f) {
            const auto v = from_array(f);
            return to_array(discrete_cheb_coeffs(v).coeffs);
        },
        py::arg("samples"));
    m.def(
        "clenshaw_eval",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& c, double t) {
            const auto v = from_array(c);
            return clenshaw_eval(std::span<const double>(v), t);
        },
        py::arg("coeffs"), py::arg("t"));

    // Polynomial change of variables
    m.def("v_p", &v_p, py::arg("t"), py::arg("p"));
    m.def("psi_p", &psi_p, py::arg("t"), py::arg("p"));
    m.def("psi_p_deriv", &psi_p_deriv, py::arg("t"), py::arg("p"));

    // Special functions
    m.def("bessel_j0", &bessel_j0, py::arg("x"));
    m.def("bessel_j1", &bessel_j1, py::arg("x"));
    m.def("bessel_y0", &bessel_y0, py::arg("x"));
    m.def("bessel_y1", &bessel_y1, py::arg("x"));
    m.def("hankel1", &hankel1, py::arg("n"), py::arg("x"));

    // Kernels
    py::class_<KernelSpec>(m, "Kernel")
        .def_static("log", &KernelSpec::log)
        .def_static("power", &KernelSpec::power, py::arg("alpha"))
        .def_static("helmholtz_combined", &KernelSpec::helmholtz_combined, py::arg("kappa"),
                    py::arg("eta"))
        .def_property_readonly("name", &KernelSpec::name)
        .def("__call__", &kernel_eval_1d, py::arg("x"), py::arg("y"))
        .def("__repr__", [](const KernelSpec& k) { return "Kernel(" + k.name() + ")"; });

    // 1D operator
    m.def(
        "apply_operator",
        [](const KernelSpec& kernel, const std::function<double(double)>& u, double a, double b,
           int P, int n, int p, int n_beta) {
            const Operator1D op(kernel, partition_interval(a, b, P), QuadConfig{n, n_beta, p, 1.0});
            return py::make_tuple(to_array(op.nodes()), to_array(op.apply(u)));
        },
        py::arg("kernel"), py::arg("u"), py::arg("a") = -1.0, py::arg("b") = 1.0,
        py::arg("P") = 1, py::arg("n") = 16, py::arg("p") = 6, py::arg("n_beta") = 0,
        "Returns (nodes, values) of the discretized operator applied to u.");
    m.def(
        "reference_operator",
        [](const KernelSpec& kernel, const std::function<double(double)>& u, double x, double a,
           double b, const std::vector<double>& breakpoints, double tol) {
            return reference_operator(kernel, a, b, u, x, breakpoints, tol);
        },
        py::arg("kernel"), py::arg("u"), py::arg("x"), py::arg("a") = -1.0, py::arg("b") = 1.0,
        py::arg("breakpoints") = std::vector<double>{}, py::arg("tol") = 1e-13);

    m.def(
        "quad_convergence",
        [](const KernelSpec& kernel, int m_, const std::vector<int>& p_values,
           const std::vector<int>& n_values, const std::vector<int>& patch_values,
           bool varying, const std::string& smooth) {
            QuadConvSpec s;
            s.kernel = kernel;
            s.m = m_;
            s.p_values = p_values;
            s.n_values = n_values;
            s.patch_values = patch_values;
            s.varying = varying;
            if (smooth == "none") s.smooth = SmoothPart::None;
            else if (smooth == "one") s.smooth = SmoothPart::One;
            else if (smooth == "linear") s.smooth = SmoothPart::LinearPlusOne;
            else throw InvalidArgument("smooth must be 'none', 'one' or 'linear'");
            py::list out;
            for (const auto& t : run_quad_convergence(s)) out.append(table_to_dict(t));
            return out;
        },
        py::arg("kernel"), py::arg("m") = 3, py::arg("p_values") = std::vector<int>{3},
        py::arg("n_values") = std::vector<int>{8, 16, 32, 64, 128, 256},
        py::arg("patch_values") = std::vector<int>{1}, py::arg("varying") = false,
        py::arg("smooth") = "none");

    m.def(
        "compute_noc",
        [](const std::vector<double>& errors, double base) {
            py::list out;
            for (const auto& v : compute_noc(errors, base)) out.append(v ? py::cast(*v) : py::none());
            return out;
        },
        py::arg("errors"), py::arg("base") = 2.0);

    // Scattering
    m.def(
        "solve_scattering",
        [](const std::string& shape, double kappa, int P, int n, int p, std::optional<double> eta,
           const std::string& incident, std::pair<double, double> vec, double tol,
           const std::vector<std::pair<double, double>>& points) {
            const ScatterProblem pr = make_problem(shape, kappa, P, n, p, eta, incident, vec, tol);
            ScatterSolution sol;
            {
                py::gil_scoped_release release;
                sol = solve_scattering(pr);
            }
            py::dict d;
            d["params"] = to_array(sol.params);
            d["density"] = to_array(sol.density);
            d["iterations"] = sol.gmres_iterations;
            d["residual"] = sol.final_residual;
            d["converged"] = sol.converged;
            std::vector<Vec2> pts;
            for (auto [x, y] : points) pts.push_back({x, y});
            d["field"] = to_array(evaluate_field(pr, sol, pts));
            return d;
        },
        py::arg("shape") = "circle:1", py::arg("kappa") = 10.0, py::arg("P") = 16,
        py::arg("n") = 15, py::arg("p") = 6, py::arg("eta") = py::none(),
        py::arg("incident") = "plane", py::arg("vector") = std::make_pair(1.0, 0.0),
        py::arg("tol") = 1e-10,
        py::arg("points") = std::vector<std::pair<double, double>>{},
        "Solves the sound-soft problem; 'vector' is the plane-wave direction or the source "
        "location. Returns the density and the scattered field at the given points.");

    m.def(
        "green_helmholtz", &green_helmholtz, py::arg("kappa"), py::arg("r"),
        "Free-space Green's function (i/4) H0(kappa r).");
}
