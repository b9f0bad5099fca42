#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcurv/catalog.hpp"
#include "qcurv/cgb.hpp"
#include "qcurv/mixed_volumes.hpp"
#include "qcurv/normal_metric.hpp"
#include "qcurv/radial_core.hpp"

namespace py = pybind11;
using namespace qcurv;

namespace {

py::dict deficit_dict(const cgb::DeficitReport& rep)
{
    py::dict d;
    d["chi"] = rep.chi;
    d["total_q"] = rep.total_q;
    d["nu"] = rep.nu;
    d["mu"] = rep.mu;
    d["residual"] = rep.residual;
    d["c2"] = rep.c2;
    d["c3"] = rep.c3;
    d["warnings"] = rep.warnings;
    return d;
}

py::dict volumes_dict(const volumes::MixedVolumes& mv)
{
    py::dict d;
    d["V4"] = mv.V4;
    d["V3"] = mv.V3;
    d["V2"] = mv.V2;
    d["V1"] = mv.V1;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "conformal curvature identity checker (core bindings)";

    py::register_exception<DomainError>(m, "DomainError");

    py::class_<RadialProfile>(m, "Profile")
        .def_static(
            "from_catalog",
            [](const std::string& id, std::map<std::string, double> params) {
                return catalog::make(id, params).profile;
            },
            py::arg("id"), py::arg("params") = std::map<std::string, double>{})
        .def_static(
            "from_samples",
            [](std::vector<double> values, double t_min, double h) {
                return RadialProfile::sampled(std::move(values), t_min, h);
            },
            py::arg("values"), py::arg("t_min"), py::arg("h"))
        .def("v", &RadialProfile::deriv, py::arg("t"), py::arg("order") = 0)
        .def_property_readonly("t_min", &RadialProfile::t_min)
        .def_property_readonly("t_max", &RadialProfile::t_max)
        .def("is_complete", &RadialProfile::is_complete);

    m.def(
        "deficit",
        [](const RadialProfile& p, int chi) {
            return deficit_dict(cgb::deficit(p, chi));
        },
        py::arg("profile"), py::arg("chi") = 1);
    m.def(
        "mixed_volumes",
        [](const RadialProfile& p, double r) {
            return volumes_dict(volumes::radial_mixed_volumes(p, r));
        },
        py::arg("profile"), py::arg("r"));
    m.def(
        "iso_ratios",
        [](const RadialProfile& p, double r) {
            auto C = volumes::iso_ratios_at(volumes::radial_mixed_volumes(p, r));
            py::dict d;
            for (const auto& [key, val] : C) {
                std::string name =
                    "C" + std::to_string(key.first) + std::to_string(key.second);
                if (val)
                    d[name.c_str()] = *val;
                else
                    d[name.c_str()] = py::none();
            }
            return d;
        },
        py::arg("profile"), py::arg("r"));
    m.def("boundary_term", &cgb::radial_boundary_T, py::arg("profile"),
          py::arg("t0"));
    m.def("local_end", &cgb::local_end_identity, py::arg("profile"),
          py::arg("t0"));
    m.def("local_sing", &cgb::local_sing_identity, py::arg("profile"),
          py::arg("t0"));
    m.def("scalar_curvature", &radial::scalar_curvature_radial,
          py::arg("profile"), py::arg("t"));

    py::class_<normal::NormalMetricSpec>(m, "NormalMetric")
        .def_static(
            "from_catalog",
            [](const std::string& id, std::map<std::string, double> params) {
                return catalog::make_qmeasure(id, params).spec;
            },
            py::arg("id"), py::arg("params") = std::map<std::string, double>{})
        .def(
            "w",
            [](const normal::NormalMetricSpec& s, std::array<double, 4> x,
               int order) { return normal::eval_w(s, x, order); },
            py::arg("x"), py::arg("quad_order") = 24)
        .def(
            "dw_dr",
            [](const normal::NormalMetricSpec& s, std::array<double, 4> x,
               int order) { return normal::eval_dw_dr(s, x, order); },
            py::arg("x"), py::arg("quad_order") = 24)
        .def("averaged_w", &normal::averaged_w, py::arg("r"),
             py::arg("quad_order") = 24)
        .def("lemma1_ratio", &normal::lemma1_ratio, py::arg("k"), py::arg("r"),
             py::arg("quad_order") = 24);

    m.def("catalog_ids", &catalog::list_ids);
    m.def("qmeasure_ids", &catalog::qmeasure_ids);
}
