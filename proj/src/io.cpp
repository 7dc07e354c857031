#include "gspline/io.hpp"

#include "gspline/error.hpp"

#include <fstream>
#include <sstream>

namespace gspline {

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what)
{
    throw Error(ErrorKind::Parse, where + ": " + what);
}

const Json& field(const Json& j, const char* name, const std::string& where)
{
    if (!j.is_object())
        parse_error(where, "expected an object");
    auto it = j.find(name);
    if (it == j.end())
        parse_error(where, std::string("missing field '") + name + "'");
    return *it;
}

Integer parse_integer(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Integer(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Integer out;
        if (out.set_str(j.get<std::string>(), 10) != 0)
            parse_error(where, "'" + j.get<std::string>() + "' is not an integer");
        return out;
    }
    parse_error(where, "expected an integer, got " + j.dump());
}

Rational parse_rational(const Json& j, const std::string& where)
{
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(parse_integer(j, where));
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
            parse_error(where, "'" + s + "' is not a fraction");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    return Rational(parse_integer(j, where));
}

std::size_t parse_index(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        parse_error(where, "expected a nonnegative integer, got " + j.dump());
    return j.get<std::size_t>();
}

std::vector<std::size_t> parse_index_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        parse_error(where, "expected a list");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_index(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return Json(x.get_si());
    return Json(x.get_str());
}

Json rational_to_json(const Rational& x)
{
    if (x.get_den() == 1)
        return integer_to_json(Integer(x.get_num()));
    return Json(x.get_str());
}

} // namespace

// ---------------------------------------------------------------------------
// Rings and elements

RingSpec parse_ring(const Json& j)
{
    const std::string where = "ring";
    if (j.is_string())
        return parse_ring_string(j.get<std::string>());
    const Json& type = field(j, "type", where);
    if (!type.is_string())
        parse_error(where + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "Z")
        return RingSpec::integers();
    if (t == "ZmodN")
        return RingSpec::mod_n(parse_integer(field(j, "n", where), where + ".n"));
    if (t == "Fp")
        return RingSpec::prime_field(parse_integer(field(j, "p", where), where + ".p"));
    if (t == "TruncPoly") {
        const Json& base = field(j, "base", where);
        std::optional<Integer> prime;
        if (base.is_string() && base.get<std::string>() == "Q") {
        } else if (base.is_object() && base.value("type", "") == "Q") {
        } else if (base.is_object() && base.value("type", "") == "Fp") {
            prime = parse_integer(field(base, "p", where + ".base"), where + ".base.p");
        } else {
            parse_error(where + ".base", "expected \"Q\" or {\"type\":\"Fp\",\"p\":...}");
        }
        const Json& vars = field(j, "vars", where);
        const Json& degree = field(j, "degree", where);
        if (!vars.is_number_integer() || !degree.is_number_integer())
            parse_error(where, "vars and degree must be integers");
        return RingSpec::truncated_poly(prime, vars.get<int>(), degree.get<int>());
    }
    parse_error(where + ".type", "unknown ring type '" + t + "'");
}

RingSpec parse_ring_string(const std::string& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    auto integer = [&](const std::string& x) {
        Integer out;
        if (out.set_str(x, 10) != 0)
            parse_error("ring", "'" + x + "' is not an integer in '" + s + "'");
        return out;
    };
    auto small = [&](const std::string& x) {
        Integer v = integer(x);
        if (!v.fits_sint_p())
            parse_error("ring", "'" + x + "' is too large");
        return static_cast<int>(v.get_si());
    };
    if (parts.size() == 1 && parts[0] == "Z")
        return RingSpec::integers();
    if (parts.size() == 2 && parts[0] == "ZmodN")
        return RingSpec::mod_n(integer(parts[1]));
    if (parts.size() == 2 && parts[0] == "Fp")
        return RingSpec::prime_field(integer(parts[1]));
    if (parts.size() == 5 && parts[0] == "TruncPoly" && parts[1] == "Fp")
        return RingSpec::truncated_poly(integer(parts[2]), small(parts[3]), small(parts[4]));
    if (parts.size() == 4 && parts[0] == "TruncPoly" && parts[1] == "Q")
        return RingSpec::truncated_poly(std::nullopt, small(parts[2]), small(parts[3]));
    parse_error("ring", "cannot parse '" + s + "'");
}

Json ring_to_json(const RingSpec& ring)
{
    switch (ring.kind()) {
    case RingKind::Integers: return {{"type", "Z"}};
    case RingKind::ModN: return {{"type", "ZmodN"}, {"n", integer_to_json(ring.modulus())}};
    case RingKind::PrimeField: return {{"type", "Fp"}, {"p", integer_to_json(ring.modulus())}};
    case RingKind::TruncatedPoly: {
        Json base = ring.rational_base() ? Json("Q") : Json{{"type", "Fp"}, {"p", integer_to_json(ring.modulus())}};
        return {{"type", "TruncPoly"}, {"base", base}, {"vars", ring.num_vars()}, {"degree", ring.degree()}};
    }
    }
    return {};
}

RingElement parse_element(const RingSpec& ring, const Json& j)
{
    const std::string where = "element " + j.dump();
    if (ring.kind() != RingKind::TruncatedPoly || !j.is_array())
        return RingElement(ring, parse_integer(j, where));
    RatVector coords(ring.additive_dim(), Rational(0));
    const auto& monos = ring.monomials();
    for (const Json& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_array())
            parse_error(where, "terms must be [coefficient, [exponents]]");
        Monomial m;
        for (const Json& e : term[1]) {
            if (!e.is_number_integer() || e.get<int>() < 0)
                parse_error(where, "exponents must be nonnegative integers");
            m.push_back(e.get<int>());
        }
        if (m.size() != static_cast<std::size_t>(ring.num_vars()))
            parse_error(where, "exponent vector needs " + std::to_string(ring.num_vars()) + " entries");
        Rational c = parse_rational(term[0], where);
        auto it = std::find(monos.begin(), monos.end(), m);
        if (it == monos.end())
            continue; // truncated away
        coords[static_cast<std::size_t>(it - monos.begin())] += c;
    }
    return RingElement::from_coordinates(ring, coords);
}

Json element_to_json(const RingElement& e)
{
    const RingSpec& ring = e.ring();
    if (ring.kind() != RingKind::TruncatedPoly)
        return integer_to_json(e.value());
    Json out = Json::array();
    RatVector c = e.coordinates();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            out.push_back(Json::array({rational_to_json(c[i]), ring.monomials()[i]}));
    return out;
}

std::vector<Ideal> parse_ideals(const RingSpec& ring, const Json& j)
{
    if (!j.is_array())
        parse_error("ideals", "expected a list of generator lists");
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array())
            parse_error("ideals[" + std::to_string(i) + "]", "expected a list of generators");
        std::vector<RingElement> gens;
        for (const Json& g : j[i])
            gens.push_back(parse_element(ring, g));
        out.emplace_back(ring, std::move(gens));
    }
    return out;
}

Json ideals_to_json(const std::vector<Ideal>& ideals)
{
    Json out = Json::array();
    for (const auto& I : ideals) {
        Json gens = Json::array();
        for (const auto& g : I.generators())
            gens.push_back(element_to_json(g));
        out.push_back(gens);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graphs

GraphDocument parse_graph_document(const Json& j)
{
    if (!j.is_object())
        parse_error("document", "expected a JSON object");
    RingSpec ring = parse_ring(field(j, "ring", "document"));
    std::vector<Ideal> ideals = parse_ideals(ring, field(j, "ideals", "document"));
    std::size_t vertices = parse_index(field(j, "vertices", "document"), "vertices");
    const Json& edges_json = field(j, "edges", "document");
    if (!edges_json.is_array())
        parse_error("edges", "expected a list of [a, b, labelIdx]");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const Json& e = edges_json[i];
        if (!e.is_array() || e.size() != 3)
            parse_error(where, "expected [a, b, labelIdx]");
        std::size_t a = parse_index(e[0], where + "[0]");
        std::size_t b = parse_index(e[1], where + "[1]");
        std::size_t label = parse_index(e[2], where + "[2]");
        if (a >= vertices || b >= vertices)
            parse_error(where, "endpoint out of range 0.." + std::to_string(vertices == 0 ? 0 : vertices - 1));
        if (label >= ideals.size())
            parse_error(where, "labelIdx " + std::to_string(label) + " out of range (" +
                                   std::to_string(ideals.size()) + " ideals)");
        edges.push_back({a, b, label});
    }
    if (vertices == 0)
        parse_error("vertices", "must be at least 1");
    GraphDocument doc{LabeledGraph(ring, std::move(ideals), vertices, std::move(edges)), std::nullopt};

    bool has_structure = j.contains("root") || j.contains("spanningTree") || j.contains("childOrder") ||
                         j.contains("extraOrder");
    if (has_structure) {
        Vertex root = j.contains("root") ? parse_index(j["root"], "root") : 0;
        PlaneRootedStructure s;
        if (j.contains("spanningTree")) {
            s.root = root;
            s.spanningTreeEdges = parse_index_list(j["spanningTree"], "spanningTree");
        } else {
            if (!is_connected(doc.graph))
                throw Error(ErrorKind::Disconnected, "graph is not connected");
            s = default_structure(doc.graph, root);
        }
        if (j.contains("childOrder")) {
            const Json& co = j["childOrder"];
            if (!co.is_array())
                parse_error("childOrder", "expected one list per vertex");
            for (std::size_t v = 0; v < co.size(); ++v)
                s.childOrder.push_back(parse_index_list(co[v], "childOrder[" + std::to_string(v) + "]"));
        }
        if (j.contains("extraOrder"))
            s.extraEdgeOrder = parse_index_list(j["extraOrder"], "extraOrder");
        validate_structure(doc.graph, s);
        doc.structure = std::move(s);
    }
    return doc;
}

Json graph_to_json(const LabeledGraph& g, const std::optional<PlaneRootedStructure>& s)
{
    Json edges = Json::array();
    for (const Edge& e : g.edges())
        edges.push_back(Json::array({e.a, e.b, e.label}));
    Json out = {{"ring", ring_to_json(g.ring())},
                {"ideals", ideals_to_json(g.labels())},
                {"vertices", g.vertex_count()},
                {"edges", edges}};
    if (s) {
        out["root"] = s->root;
        out["spanningTree"] = s->spanningTreeEdges;
        if (!s->childOrder.empty())
            out["childOrder"] = s->childOrder;
        if (!s->extraEdgeOrder.empty())
            out["extraOrder"] = s->extraEdgeOrder;
    }
    return out;
}

Spline parse_spline(const RingSpec& ring, const Json& j)
{
    if (!j.is_array())
        parse_error("spline", "expected a list of values");
    Spline p;
    for (const Json& x : j)
        p.values.push_back(parse_element(ring, x));
    return p;
}

Json spline_to_json(const Spline& p)
{
    Json out = Json::array();
    for (const auto& x : p.values)
        out.push_back(element_to_json(x));
    return out;
}

Json module_to_json(const SplineModule& m)
{
    Json gens = Json::array();
    for (const auto& g : m.generators)
        gens.push_back(spline_to_json(g));
    Json structure;
    if (auto* f = std::get_if<FieldDim>(&m.structure))
        structure = {{"type", "FieldDim"}, {"dimension", f->dimension}};
    else if (auto* r = std::get_if<FreeRank>(&m.structure))
        structure = {{"type", "FreeRank"}, {"rank", r->rank}};
    else {
        Json factors = Json::array();
        for (const auto& d : std::get<InvariantFactors>(m.structure).factors)
            factors.push_back(integer_to_json(d));
        structure = {{"type", "InvariantFactors"}, {"factors", factors}};
    }
    return {{"graph", graph_to_json(m.graph)},
            {"based", m.based},
            {"generators", gens},
            {"structure", structure},
            {"zRank", m.zRank}};
}

SplineModule parse_module(const Json& j)
{
    GraphDocument doc = parse_graph_document(field(j, "graph", "module"));
    const RingSpec& ring = doc.graph.ring();
    SplineModule m{doc.graph, {}, {}, FieldDim{0}, 0};
    if (j.contains("based"))
        m.based = parse_index_list(j["based"], "based");
    const Json& gens = field(j, "generators", "module");
    if (!gens.is_array())
        parse_error("generators", "expected a list");
    for (const Json& g : gens)
        m.generators.push_back(parse_spline(ring, g));
    const Json& s = field(j, "structure", "module");
    const std::string type = field(s, "type", "structure").get<std::string>();
    if (type == "FieldDim")
        m.structure = FieldDim{parse_index(field(s, "dimension", "structure"), "structure.dimension")};
    else if (type == "FreeRank")
        m.structure = FreeRank{parse_index(field(s, "rank", "structure"), "structure.rank")};
    else if (type == "InvariantFactors") {
        InvariantFactors f;
        for (const Json& d : field(s, "factors", "structure"))
            f.factors.push_back(parse_integer(d, "structure.factors"));
        m.structure = f;
    } else
        parse_error("structure.type", "unknown structure '" + type + "'");
    m.zRank = parse_index(field(j, "zRank", "module"), "zRank");
    return m;
}

Json prefix_to_json(const SeriesPrefix& p)
{
    Json coeffs = Json::array();
    for (const auto& c : p.coefficients)
        coeffs.push_back(integer_to_json(c));
    return {{"mode", std::string(to_string(p.mode))}, {"coefficients", coeffs}};
}

SeriesPrefix parse_prefix(const Json& j)
{
    const std::string mode = field(j, "mode", "prefix").get<std::string>();
    SeriesPrefix p;
    if (mode == "dim")
        p.mode = SeriesMode::FieldDimension;
    else if (mode == "zrank")
        p.mode = SeriesMode::ZRank;
    else
        parse_error("prefix.mode", "expected \"dim\" or \"zrank\"");
    for (const Json& c : field(j, "coefficients", "prefix"))
        p.coefficients.push_back(parse_integer(c, "prefix.coefficients"));
    return p;
}

Json relation_to_json(const AlgebraicRelation& r)
{
    Json grid = Json::array();
    for (const auto& row : r.coefficients) {
        Json jr = Json::array();
        for (const auto& c : row)
            jr.push_back(integer_to_json(c));
        grid.push_back(jr);
    }
    return {{"polynomial", r.pretty}, {"coefficients", grid}, {"rows", "power of x"}, {"columns", "power of t"}};
}

Json contraction_to_json(const Contraction& c)
{
    Json emap = Json::array();
    for (const auto& im : c.edgeMap)
        emap.push_back(Json{{im.to_vertex ? "vertex" : "edge", im.index}});
    return {{"domain", graph_to_json(c.domain)},
            {"codomain", graph_to_json(c.codomain)},
            {"vertexMap", c.vertexMap},
            {"edgeMap", emap}};
}

Json reduction_to_json(const ReductionResult& r)
{
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        Json js = {{"kind", std::string(to_string(s.kind))},
                   {"base", s.base},
                   {"edges", s.edges},
                   {"vertexMap", s.vertexMap}};
        std::vector<Vertex> part_original;
        for (Vertex x : s.partVertices)
            part_original.push_back(s.representatives[x]);
        js["partVertices"] = part_original;
        if (s.newEdge) {
            js["newEdge"] = *s.newEdge;
            js["newLabel"] = ideals_to_json({s.after.label_of(*s.newEdge)})[0];
            js["labelOutsideOriginal"] = s.labelOutsideOriginal;
        }
        js["after"] = graph_to_json(s.after);
        steps.push_back(js);
    }
    Json out = {{"original", graph_to_json(r.original)},
                {"reduced", graph_to_json(r.reduced)},
                {"genus", genus(r.original)},
                {"shape", std::string(to_string(r.classification.shape))},
                {"labelsLeftOriginal", r.labelsLeftOriginal},
                {"composedVertexMap", r.composedVertexMap},
                {"representatives", r.representatives},
                {"steps", steps}};
    if (r.classification.witness)
        out["witness"] = {{"vertexMap", r.classification.witness->vertexMap},
                          {"edgeMap", r.classification.witness->edgeMap}};
    return out;
}

std::vector<StepRecord> parse_step_records(const Json& j)
{
    const Json& steps = j.contains("steps") ? j["steps"] : j;
    if (!steps.is_array())
        parse_error("steps", "expected a list");
    std::vector<StepRecord> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string where = "steps[" + std::to_string(i) + "]";
        const std::string kind = field(steps[i], "kind", where).get<std::string>();
        StepRecord r;
        if (kind == "TreeContraction")
            r.kind = ReductionStepKind::TreeContraction;
        else if (kind == "BridgePathContraction")
            r.kind = ReductionStepKind::BridgePathContraction;
        else if (kind == "NonBridgePathContraction")
            r.kind = ReductionStepKind::NonBridgePathContraction;
        else
            parse_error(where + ".kind", "unknown step kind '" + kind + "'");
        r.base = parse_index(field(steps[i], "base", where), where + ".base");
        r.edges = parse_index_list(field(steps[i], "edges", where), where + ".edges");
        out.push_back(std::move(r));
    }
    return out;
}

Json decomposition_to_json(const SplineDecomposition& d)
{
    Json parts = Json::array();
    for (const auto& p : d.kernelParts) {
        Json lifted = Json::array();
        for (const auto& s : p.liftedGenerators)
            lifted.push_back(spline_to_json(s));
        parts.push_back({{"kind", std::string(to_string(p.kind))},
                         {"step", p.step},
                         {"originalVertices", p.originalVertices},
                         {"size", p.module.size()},
                         {"flowUp", p.flowUp},
                         {"module", module_to_json(p.module)},
                         {"liftedGenerators", lifted}});
    }
    Json reduced_lifted = Json::array();
    for (const auto& s : d.reducedLifted)
        reduced_lifted.push_back(spline_to_json(s));
    Json all = Json::array();
    for (const auto& s : d.liftedGenerators)
        all.push_back(spline_to_json(s));
    return {{"reduction", reduction_to_json(d.reduction)},
            {"reducedModule", module_to_json(d.reducedModule)},
            {"reducedLifted", reduced_lifted},
            {"kernelParts", parts},
            {"liftedGenerators", all},
            {"totalSize", d.totalSize},
            {"additive", d.additive},
            {"kernelsVanish", d.kernelsVanish},
            {"generates", d.generates}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Parse, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

} // namespace gspline
