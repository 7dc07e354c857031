#include "gspline/error.hpp"
#include "gspline/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gspline;

namespace {

LabeledGraph load(const std::string& doc)
{
    try {
        return parse_graph_document(Json::parse(doc)).graph;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

SeriesMode mode_of(const std::string& mode)
{
    if (mode == "dim")
        return SeriesMode::FieldDimension;
    if (mode == "zrank")
        return SeriesMode::ZRank;
    throw Error(ErrorKind::Parse, "mode must be dim or zrank");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "JSON-string interface to the gspline library; use the gspline package wrappers.";

    static py::exception<Error> error(m, "GsplineError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("spline_module", [](const std::string& doc, const std::vector<std::size_t>& based) {
        LabeledGraph g = load(doc);
        return module_to_json(based.empty() ? compute_spline_module(g) : based_spline_module(g, based)).dump();
    }, py::arg("doc"), py::arg("based") = std::vector<std::size_t>{});

    m.def("is_spline", [](const std::string& doc, const std::string& values) {
        LabeledGraph g = load(doc);
        return is_spline(g, parse_spline(g.ring(), Json::parse(values)));
    });

    m.def("reduce_graph", [](const std::string& doc) { return reduction_to_json(reduce_graph(load(doc))).dump(); });
    m.def("decompose", [](const std::string& doc) {
        return decomposition_to_json(spline_decomposition(load(doc))).dump();
    });

    m.def("hilbert_dyck", [](const std::string& ring, const std::string& ideals, std::size_t max_pairs,
                             const std::string& mode) {
        RingSpec r = parse_ring_string(ring);
        return prefix_to_json(hilbert_dyck_prefix(r, parse_ideals(r, Json::parse(ideals)), max_pairs, mode_of(mode)))
            .dump();
    });

    m.def("guess_relation", [](const std::string& prefix, std::size_t deg_x, std::size_t deg_t) -> std::string {
        SeriesPrefix p = parse_prefix(Json::parse(prefix));
        auto rel = guess_algebraic_relation(p, deg_x, deg_t);
        if (!rel)
            return "null";
        Json out = relation_to_json(*rel);
        out["verified"] = verify_relation(*rel, p);
        return out.dump();
    });

    m.def("verify", [](const std::string& doc) { return report_to_json(verify_graph(load(doc), "input")).dump(); });

    m.def("shipped_corpus", [] {
        Json out = Json::object();
        for (const auto& [name, g] : shipped_corpus())
            out[name] = graph_to_json(g);
        return out.dump();
    });
}
