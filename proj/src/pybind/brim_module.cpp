#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "brim/multiplicity.hpp"

namespace py = pybind11;
using namespace brim;

// Big integers cross the boundary as decimal strings; the python package
// converts them to int. Reports cross as JSON strings for the same reason.

namespace {

ModuleSpec make_module(int dim, const std::vector<std::string>& ideals)
{
    std::vector<MonomialIdeal> parsed;
    for (const auto& s : ideals)
        parsed.push_back(parse_ideal(s, dim));
    return ModuleSpec(dim, std::move(parsed));
}

std::map<std::string, std::string> mixed_dict(const ModuleSpec& C)
{
    std::map<std::string, std::string> out;
    for (const auto& [type, e] : mixed_multiplicities(C)) {
        std::string key;
        for (size_t i = 0; i < type.size(); ++i)
            key += (i ? "," : "") + std::to_string(type[i]);
        out[key] = int_str(e);
    }
    return out;
}

std::string report_str(const VerificationReport& rep) { return rep.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exact Buchsbaum-Rim multiplicity computations on monomial ideals";

    py::class_<MonomialIdeal>(m, "MonomialIdeal")
        .def_property_readonly("dim", &MonomialIdeal::dim)
        .def_property_readonly("gens",
                               [](const MonomialIdeal& I) {
                                   std::vector<std::vector<int>> out;
                                   for (const auto& g : I.gens())
                                       out.emplace_back(g.begin(), g.end());
                                   return out;
                               })
        .def("contains",
             [](const MonomialIdeal& I, const std::vector<int>& e) { return I.contains(e); })
        .def("is_m_primary", &MonomialIdeal::is_m_primary)
        .def("__eq__", [](const MonomialIdeal& a, const MonomialIdeal& b) { return a == b; })
        .def("__str__", &MonomialIdeal::str)
        .def("__repr__", &MonomialIdeal::str);

    py::class_<ModuleSpec>(m, "Module")
        .def(py::init(&make_module), py::arg("dim"), py::arg("ideals"))
        .def_readonly("dim", &ModuleSpec::dim)
        .def_readonly("ideals", &ModuleSpec::ideals)
        .def_property_readonly("rank", &ModuleSpec::rank);

    m.def("parse_ideal", &parse_ideal, py::arg("gens"), py::arg("dim"));
    m.def("random_module", &random_module_spec, py::arg("dim"), py::arg("rank"),
          py::arg("max_pure"), py::arg("extra_gens"), py::arg("seed"));

    m.def("colength",
          [](const MonomialIdeal& I) { return int_str(colength(I)); });
    m.def("hs_multiplicity",
          [](const MonomialIdeal& I) { return int_str(hs_multiplicity(I)); });
    m.def("br_multiplicity",
          [](const ModuleSpec& C) { return int_str(br_multiplicity(C)); });
    m.def("mixed_multiplicities", &mixed_dict);
    m.def("associated_multiplicities", [](const ModuleSpec& C) {
        std::vector<std::string> out;
        for (const auto& v : associated_multiplicities(C).values)
            out.push_back(int_str(v));
        return out;
    });

    m.def("lambda_value", [](const ModuleSpec& C, long long p) {
        BrEngine engine(C);
        return int_str(engine.lambda(p));
    });
    m.def("Lambda_value", [](const ModuleSpec& C, long long p, long long q) {
        BrEngine engine(C);
        return int_str(engine.Lambda(p, q));
    });

    m.def("verify_main", [](const ModuleSpec& C) { return report_str(verify_main_theorem(C)); });
    m.def("verify_last",
          [](const ModuleSpec& C) { return report_str(verify_last_multiplicity(C)); });
    m.def("verify_kirby_sum",
          [](const ModuleSpec& C) { return report_str(verify_kirby_rees_sum(C)); });
    m.def("verify_nested",
          [](const ModuleSpec& C, int j) { return report_str(verify_nested_chain(C, j)); });
    m.def("verify_corollary",
          [](const ModuleSpec& C) { return report_str(verify_corollary_largest(C)); });
    m.def("verify_regions", [](const ModuleSpec& C, long long p, long long q) {
        return report_str(verify_region_partition(C, p, q));
    });
    m.def("verify_props", [](const ModuleSpec& C, long long p, long long q) {
        return report_str(verify_closed_forms(C, p, q));
    });
    m.def("question_43",
          [](const ModuleSpec& C, int k) { return report_str(test_question_43(C, k)); });
    m.def("question_44",
          [](const ModuleSpec& C, int j) { return report_str(test_question_44(C, j)); });
}
