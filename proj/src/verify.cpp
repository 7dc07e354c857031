#include "gspline/verify.hpp"

#include "gspline/enumerate.hpp"
#include "gspline/error.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <numeric>
#include <fstream>
#include <set>

namespace gspline {

namespace fs = std::filesystem;

void SuiteResult::check(bool ok, const std::string& what)
{
    ++checks;
    if (!ok) {
        ++failures;
        if (messages.size() < 5)
            messages.push_back(what);
    }
}

bool GraphReport::passed() const
{
    if (loadError)
        return false;
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

bool VerifyReport::passed() const
{
    return std::all_of(graphs.begin(), graphs.end(), [](const GraphReport& g) { return g.passed(); });
}

std::size_t VerifyReport::checks() const
{
    std::size_t n = 0;
    for (const auto& g : graphs)
        for (const auto& s : g.suites)
            n += s.checks;
    return n;
}

std::optional<std::vector<RingElement>> ring_elements(const RingSpec& ring, std::size_t limit)
{
    auto order = ring.order();
    if (!order || *order > limit)
        return std::nullopt;
    std::vector<RingElement> out;
    if (ring.kind() != RingKind::TruncatedPoly) {
        for (unsigned long i = 0; i < order->get_ui(); ++i)
            out.emplace_back(ring, Integer(i));
        return out;
    }
    const unsigned long p = ring.modulus().get_ui();
    std::vector<unsigned long> digits(ring.additive_dim(), 0);
    while (true) {
        RatVector coords;
        for (auto d : digits)
            coords.emplace_back(Rational(d));
        out.push_back(RingElement::from_coordinates(ring, coords));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p)
            digits[i++] = 0;
        if (i == digits.size())
            break;
    }
    return out;
}

namespace {

std::string key_of(const Spline& p)
{
    std::string k;
    for (const auto& x : p.values) {
        k += x.to_string();
        k += '|';
    }
    return k;
}

// Calls visit on every tuple of `elems` of length n; stops early when visit returns false.
template <class F>
void for_each_tuple(const std::vector<RingElement>& elems, std::size_t n, F visit)
{
    std::vector<std::size_t> idx(n, 0);
    Spline p;
    while (true) {
        p.values.clear();
        for (auto i : idx)
            p.values.push_back(elems[i]);
        visit(p);
        std::size_t i = 0;
        while (i < n && ++idx[i] == elems.size())
            idx[i++] = 0;
        if (i == n)
            break;
    }
}

bool tuple_count_ok(std::size_t base, std::size_t n, std::size_t limit)
{
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= base;
        if (total > limit)
            return false;
    }
    return true;
}

template <class F>
void guarded(SuiteResult& s, F body)
{
    try {
        body();
    } catch (const std::exception& e) {
        s.check(false, std::string("exception: ") + e.what());
    }
}

} // namespace

SuiteResult verify_oracle_equivalence(const LabeledGraph& g)
{
    SuiteResult s;
    s.name = "oracle-equivalence";
    guarded(s, [&] {
        const RingSpec& ring = g.ring();
        const std::size_t n = g.vertex_count();
        SplineModule m = compute_spline_module(g);
        for (const auto& gen : m.generators)
            s.check(is_spline(g, gen), "generator " + to_string(gen) + " is not a spline");

        auto elems = ring_elements(ring);
        if (elems && tuple_count_ok(elems->size(), n, 1u << 16)) {
            // Additive closure of R-multiples of the generators.
            std::vector<Spline> steps;
            if (ring.kind() == RingKind::TruncatedPoly) {
                for (std::size_t i = 0; i < ring.additive_dim(); ++i)
                    for (const auto& gen : m.generators)
                        steps.push_back(RingElement::monomial(ring, i) * gen);
            } else {
                steps = m.generators;
            }
            std::set<std::string> span;
            std::deque<Spline> queue{zero_spline(ring, n)};
            span.insert(key_of(queue.front()));
            while (!queue.empty()) {
                Spline cur = queue.front();
                queue.pop_front();
                for (const auto& st : steps) {
                    Spline nxt = cur + st;
                    if (span.insert(key_of(nxt)).second)
                        queue.push_back(nxt);
                }
            }
            std::size_t spline_tuples = 0;
            for_each_tuple(*elems, n, [&](const Spline& p) {
                bool spline = is_spline(g, p);
                bool in_span = span.count(key_of(p)) > 0;
                if (spline)
                    ++spline_tuples;
                s.check(spline == in_span, "tuple " + to_string(p) + (spline ? " is a spline outside the span"
                                                                             : " is in the span but not a spline"));
            });
            s.check(spline_tuples == span.size(), "spline count " + std::to_string(spline_tuples) +
                                                      " differs from span size " + std::to_string(span.size()));
        } else if (ring.kind() == RingKind::Integers) {
            int radius = tuple_count_ok(7, n, 5000) ? 3 : (tuple_count_ok(3, n, 5000) ? 1 : 0);
            if (radius == 0)
                return;
            std::vector<RingElement> box;
            for (int v = -radius; v <= radius; ++v)
                box.emplace_back(ring, Integer(v));
            for_each_tuple(box, n, [&](const Spline& p) {
                bool spline = is_spline(g, p);
                bool member = module_membership(m, p).member;
                s.check(spline == member, "tuple " + to_string(p) + (spline ? " is a spline outside the span"
                                                                           : " is in the span but not a spline"));
            });
        }
    });
    return s;
}

SuiteResult verify_functoriality(const LabeledGraph& g)
{
    SuiteResult s;
    s.name = "functoriality";
    guarded(s, [&] {
        for (std::size_t e1 = 0; e1 < g.edge_count(); ++e1) {
            if (g.edge(e1).is_loop())
                continue;
            ContractionResult c1 = contract_edges(g, {e1});
            s.check(validate_contraction(c1.contraction).ok, "contraction of edge " + std::to_string(e1) + " is invalid");
            for (std::size_t e2 = 0; e2 < g.edge_count(); ++e2) {
                if (e2 == e1 || g.edge(e2).is_loop())
                    continue;
                std::optional<ContractionResult> direct;
                try {
                    direct = contract_edges(g, {e1, e2});
                } catch (const Error& err) {
                    if (err.kind() != ErrorKind::CycleContraction)
                        throw;
                    continue;
                }
                const std::string pair = "edges " + std::to_string(e1) + "," + std::to_string(e2);
                EdgeImage img = c1.contraction.edgeMap[e2];
                s.check(!img.to_vertex, pair + ": second edge vanished after the first contraction");
                if (img.to_vertex)
                    continue;
                ContractionResult c2 = contract_edges(c1.graph, {img.index});
                Contraction composite = compose_contractions(c2.contraction, c1.contraction);
                s.check(validate_contraction(composite).ok, pair + ": composite is not a contraction");
                s.check(composite.codomain == direct->graph && composite.vertexMap == direct->contraction.vertexMap,
                        pair + ": sequential contraction differs from simultaneous contraction");
                SplineModule target = compute_spline_module(c2.graph);
                std::vector<Spline> probes = target.generators;
                probes.push_back(zero_spline(g.ring(), c2.graph.vertex_count()));
                if (probes.size() > 1)
                    probes.push_back(std::accumulate(target.generators.begin() + 1, target.generators.end(),
                                                     target.generators.front()));
                for (const auto& q : probes) {
                    Spline once = vertex_expansion(composite, q);
                    Spline twice = vertex_expansion(c1.contraction, vertex_expansion(c2.contraction, q));
                    s.check(once == twice, pair + ": pullbacks disagree on " + to_string(q));
                    s.check(is_spline(g, once), pair + ": expansion of " + to_string(q) + " is not a spline");
                }
            }
        }
    });
    return s;
}

SuiteResult verify_additivity(const LabeledGraph& g)
{
    SuiteResult s;
    s.name = "additivity";
    guarded(s, [&] {
        SplineDecomposition d = spline_decomposition(g);
        s.check(d.additive, "size of Spl(G) is not the sum of the reduced and kernel sizes");
        s.check(d.kernelsVanish, "a kernel generator survives on the reduced graph");
        s.check(d.generates, "lifted generators do not span Spl(G)");
        for (const auto& part : d.kernelParts)
            if (part.kind != ReductionStepKind::NonBridgePathContraction)
                s.check(part.flowUp, "a tree or bridge-path kernel part is not flow-up");
        ReducedShape shape = d.reduction.classification.shape;
        long gen = genus(g);
        bool shape_ok = gen == 0   ? shape == ReducedShape::Point
                        : gen == 1 ? shape == ReducedShape::Loop
                        : gen == 2 ? (shape == ReducedShape::FigureEight || shape == ReducedShape::Theta)
                                   : true;
        s.check(shape_ok, "genus " + std::to_string(gen) + " reduced to " + std::string(to_string(shape)));
    });
    return s;
}

SuiteResult verify_closed_forms(const LabeledGraph& g)
{
    SuiteResult s;
    s.name = "closed-forms";
    guarded(s, [&] {
        if (genus(g) != 0)
            return;
        const RingSpec& ring = g.ring();
        std::optional<Ideal> nonzero;
        if (ring.kind() == RingKind::PrimeField)
            nonzero = Ideal::unit(ring);
        else if (ring.kind() == RingKind::ModN) {
            auto p = ring.prime_power_base();
            if (p && *p * *p == ring.modulus())
                nonzero = Ideal(ring, {RingElement(ring, *p)});
        }
        if (!nonzero)
            return;
        std::size_t n0 = 0;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Ideal& I = g.label_of(e);
            if (I.is_zero())
                ++n0;
            else if (!ideal_equal(I, *nonzero))
                return;
        }
        std::size_t expected = g.edge_count() - n0 + 1;
        std::size_t actual = compute_spline_module(g).size();
        s.check(actual == expected,
                "tree size " + std::to_string(actual) + ", closed form " + std::to_string(expected));
    });
    return s;
}

SuiteResult verify_indicators(const LabeledGraph& g)
{
    SuiteResult s;
    s.name = "indicator-witness";
    guarded(s, [&] {
        if (g.vertex_count() < 3)
            return;
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            IndicatorWitness w = indicator_in_contraction_span(g, u);
            std::vector<RingElement> want(g.vertex_count(), RingElement::zero(g.ring()));
            want[u] = RingElement::one(g.ring());
            s.check(replay_indicator_witness(w) == want, "witness for vertex " + std::to_string(u) + " does not replay");
        }
    });
    return s;
}

GraphReport verify_graph(const LabeledGraph& g, const std::string& name)
{
    GraphReport r{name, std::nullopt, {}};
    if (!is_connected(g)) {
        r.loadError = "graph is disconnected";
        return r;
    }
    r.suites.push_back(verify_oracle_equivalence(g));
    r.suites.push_back(verify_functoriality(g));
    r.suites.push_back(verify_additivity(g));
    r.suites.push_back(verify_closed_forms(g));
    r.suites.push_back(verify_indicators(g));
    return r;
}

VerifyReport verify_corpus(const std::string& dir)
{
    if (!fs::is_directory(dir))
        throw Error(ErrorKind::Parse, dir + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    VerifyReport report;
    for (const auto& path : files) {
        std::string name = fs::relative(path, dir).replace_extension().generic_string();
        try {
            GraphDocument doc = parse_graph_document(read_json_file(path.string()));
            report.graphs.push_back(verify_graph(doc.graph, name));
        } catch (const Error& e) {
            report.graphs.push_back(GraphReport{name, std::string(e.what()), {}});
        }
    }
    return report;
}

Json suite_to_json(const SuiteResult& s)
{
    return {{"name", s.name},
            {"checks", s.checks},
            {"failures", s.failures},
            {"passed", s.passed()},
            {"messages", s.messages}};
}

Json report_to_json(const GraphReport& r)
{
    Json suites = Json::array();
    for (const auto& s : r.suites)
        suites.push_back(suite_to_json(s));
    Json out = {{"graph", r.name}, {"passed", r.passed()}, {"suites", suites}};
    if (r.loadError)
        out["error"] = *r.loadError;
    return out;
}

Json report_to_json(const VerifyReport& r)
{
    // Per-suite totals across all graphs, then the graphs that failed.
    Json totals = Json::object();
    for (const auto& g : r.graphs)
        for (const auto& s : g.suites) {
            if (!totals.contains(s.name))
                totals[s.name] = {{"name", s.name}, {"checks", 0}, {"failures", 0}, {"passed", true}};
            Json& t = totals[s.name];
            t["checks"] = t["checks"].get<std::size_t>() + s.checks;
            t["failures"] = t["failures"].get<std::size_t>() + s.failures;
            t["passed"] = t["passed"].get<bool>() && s.passed();
        }
    Json suites = Json::array();
    for (auto& [k, v] : totals.items())
        suites.push_back(v);
    Json failed = Json::array();
    for (const auto& g : r.graphs)
        if (!g.passed())
            failed.push_back(report_to_json(g));
    Json out = {{"graphs", r.graphs.size()},
                {"checks", r.checks()},
                {"passed", r.passed()},
                {"suites", suites},
                {"failedGraphs", failed}};
    if (r.empty())
        out["warning"] = "no checks were run";
    return out;
}

std::vector<std::pair<std::string, LabeledGraph>> shipped_corpus()
{
    const RingSpec f2 = RingSpec::prime_field(2), z = RingSpec::integers(), z4 = RingSpec::mod_n(4);
    const std::vector<std::pair<std::string, std::pair<RingSpec, std::vector<Ideal>>>> rings = {
        {"F2", {f2, {Ideal::zero(f2), Ideal::unit(f2)}}},
        {"Z", {z, {Ideal(z, {RingElement(z, 4)}), Ideal(z, {RingElement(z, 6)})}}},
        {"Z4", {z4, {Ideal(z4, {RingElement(z4, 2)}), Ideal::zero(z4)}}},
    };
    std::vector<std::pair<std::string, LabeledGraph>> out;
    auto shapes = enumerate_connected_multigraphs(4, 2);
    for (const auto& [rname, rl] : rings) {
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            std::vector<std::size_t> labels;
            for (std::size_t e = 0; e < shapes[i].edges.size(); ++e)
                labels.push_back(e % 2);
            char name[16];
            std::snprintf(name, sizeof name, "g%02zu", i);
            out.emplace_back(rname + "/" + name, label_shape(shapes[i], rl.first, rl.second, labels));
        }
    }
    return out;
}

std::size_t write_corpus(const std::string& dir)
{
    std::size_t count = 0;
    for (const auto& [name, g] : shipped_corpus()) {
        fs::path path = fs::path(dir) / (name + ".json");
        fs::create_directories(path.parent_path());
        std::ofstream out(path);
        if (!out)
            throw Error(ErrorKind::Parse, "cannot write " + path.string());
        out << graph_to_json(g).dump(2) << "\n";
        ++count;
    }
    return count;
}

} // namespace gspline
