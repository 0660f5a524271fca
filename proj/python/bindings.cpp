#include "bergman/basis.hpp"
#include "bergman/diffop.hpp"
#include "bergman/errors.hpp"
#include "bergman/experiments.hpp"
#include "bergman/geometry.hpp"
#include "bergman/measure.hpp"
#include "bergman/poly.hpp"
#include "bergman/toeplitz.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bergman;

namespace {

// Measures and results cross the boundary as JSON text; the Python layer
// converts them with the json module.
SymbolMeasure measure(const std::string& text)
{
    return SymbolMeasure::from_json(nlohmann::json::parse(text));
}

DerivativeSymbol symbol(const std::string& text, int alpha, int beta)
{
    return {measure(text), alpha, beta};
}

std::string result_json(const ExperimentResult& r)
{
    nlohmann::ordered_json out;
    out["experiment"] = r.experiment;
    out["anchors"] = r.anchors;
    out["verdict"] = r.passed ? "PASS" : "FAIL";
    out["metrics"] = r.metrics;
    out["header"] = r.report.header;
    out["rows"] = r.report.rows;
    if (r.singular_values) {
        out["singular_values"] = *r.singular_values;
    }
    if (r.k_operator) {
        out["k_operator"] = *r.k_operator;
    }
    out["notes"] = r.notes;
    return out.dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Toeplitz operators on the Bergman space of the upper half-plane";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericRangeError>(m, "NumericRangeError", PyExc_ArithmeticError);
    py::register_exception<CalculusError>(m, "CalculusError", PyExc_RuntimeError);

    m.def("phyp_distance", [](Complex z, Complex w) {
        return phyp_distance(HalfPlanePoint::from_complex(z), HalfPlanePoint::from_complex(w));
    });
    m.def("phyp_to_euclid", [](Complex z0, double R) {
        const auto b = phyp_to_euclid(PhypDisk(HalfPlanePoint::from_complex(z0), R));
        return py::make_tuple(b.center().z(), b.radius());
    });
    m.def("euclid_to_phyp", [](Complex c, double r) {
        const auto d = euclid_to_phyp(EuclidDisk(HalfPlanePoint::from_complex(c), r));
        return py::make_tuple(d.center().z(), d.radius());
    });

    m.def("kernel", [](Complex z, Complex w) {
        return kernel(HalfPlanePoint::from_complex(z), HalfPlanePoint::from_complex(w));
    });
    m.def("basis_eval", [](int n, Complex z) { return basis_eval(n, HalfPlanePoint::from_complex(z)); });
    m.def("basis_deriv", [](int n, int a, Complex z) { return basis_deriv(n, a, HalfPlanePoint::from_complex(z)); });
    m.def("gram_matrix", [](int N) { return gram_matrix(N); });

    m.def("carleson_norm", [](const std::string& mu, double k, double gamma) {
        const auto r = carleson_norm(measure(mu), HalfInteger::from_double(k), gamma);
        return py::make_tuple(r.norm, r.argmax_center.z());
    });
    m.def("toeplitz_matrix", [](const std::string& mu, int alpha, int beta, int N) {
        return toeplitz_matrix(symbol(mu, alpha, beta), N).entries();
    });
    m.def("singular_values", [](const std::string& mu, int alpha, int beta, int N) {
        return toeplitz_matrix(symbol(mu, alpha, beta), N).singular_values();
    });

    m.def("derive_K", [](int j) { return derive_K(j).pretty(); });
    m.def("derive_K_json", [](int j) { return derive_K(j).to_json().dump(); });
    m.def("closed_form_K", [](int j) { return closed_form_K(j).pretty(); });
    m.def("creation_isometry_residual", &creation_isometry_residual);

    m.def("list_experiments", [](const std::string& section) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto* e : list_experiments(section)) {
            out.emplace_back(e->name, e->section);
        }
        return out;
    }, py::arg("section") = "");
    m.def("run_experiment", [](const std::string& config) {
        return result_json(run_experiment(ExperimentConfig::from_json(nlohmann::json::parse(config))));
    });
}
