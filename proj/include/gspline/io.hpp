#pragma once

#include "gspline/decomp.hpp"
#include "gspline/dyckseries.hpp"

#include <json.hpp>

namespace gspline {

using Json = nlohmann::ordered_json;

/// {"type":"Z"}, {"type":"ZmodN","n":4}, {"type":"Fp","p":2},
/// {"type":"TruncPoly","base":{"type":"Fp","p":2} or "Q","vars":2,"degree":2}
RingSpec parse_ring(const Json& j);
Json ring_to_json(const RingSpec& ring);
/// "Z", "ZmodN:4", "Fp:2", "TruncPoly:Fp:2:<vars>:<degree>", "TruncPoly:Q:<vars>:<degree>"
RingSpec parse_ring_string(const std::string& s);

/// Integers (numbers or decimal strings); polynomials as [[coef, [exponents]], ...]
/// with coefficients as integers or "a/b" strings. A bare integer is a constant.
RingElement parse_element(const RingSpec& ring, const Json& j);
Json element_to_json(const RingElement& e);

std::vector<Ideal> parse_ideals(const RingSpec& ring, const Json& j);
Json ideals_to_json(const std::vector<Ideal>& ideals);

struct GraphDocument {
    LabeledGraph graph;
    std::optional<PlaneRootedStructure> structure;
};

/// Parse failures throw Error(Parse) naming the offending field.
GraphDocument parse_graph_document(const Json& j);
Json graph_to_json(const LabeledGraph& g, const std::optional<PlaneRootedStructure>& s = std::nullopt);

Spline parse_spline(const RingSpec& ring, const Json& j);
Json spline_to_json(const Spline& p);

Json module_to_json(const SplineModule& m);
SplineModule parse_module(const Json& j);

Json prefix_to_json(const SeriesPrefix& p);
SeriesPrefix parse_prefix(const Json& j);

Json relation_to_json(const AlgebraicRelation& r);

Json contraction_to_json(const Contraction& c);
Json reduction_to_json(const ReductionResult& r);
std::vector<StepRecord> parse_step_records(const Json& j);
Json decomposition_to_json(const SplineDecomposition& d);

Json read_json_file(const std::string& path);

} // namespace gspline
