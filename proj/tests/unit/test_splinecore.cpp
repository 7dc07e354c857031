#include <doctest.h>

#include "../support/fixtures.hpp"

using namespace gspline;
using fx::el;
using fx::graph;
using fx::ideal;
using fx::spline;

namespace {

const RingSpec Z = RingSpec::integers();

std::set<oracle::Tuple> span_of(const SplineModule& m, long n)
{
    std::vector<oracle::Tuple> gens;
    for (const auto& g : m.generators)
        gens.push_back(fx::residues(g));
    return oracle::additive_span_mod(gens, m.graph.vertex_count(), n);
}

} // namespace

TEST_SUITE("splinecore")
{
    TEST_CASE("is_spline examples")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {2})}, {0});
        CHECK(is_spline(e, spline(Z, {5, 5})));
        CHECK_FALSE(is_spline(e, spline(Z, {0, 1})));
        CHECK(is_spline(e, spline(Z, {0, 2})));
        CHECK_THROWS_AS(is_spline(e, spline(Z, {0})), Error);
        LabeledGraph loop = graph(Z, {ideal(Z, {2})}, 1, {{0, 0, 0}});
        CHECK(is_spline(loop, spline(Z, {7})));
    }

    TEST_CASE("single edge over Z")
    {
        for (long m : {2, 5, 12}) {
            SplineModule s = compute_spline_module(fx::path(Z, {ideal(Z, {m})}, {0}));
            CHECK(s.size() == 2);
            CHECK(std::holds_alternative<FreeRank>(s.structure));
            CHECK(same_span(s.graph, s.generators, {spline(Z, {1, 1}), spline(Z, {0, m})}));
        }
    }

    TEST_CASE("path over F_p with labels R and (0)")
    {
        RingSpec f = RingSpec::prime_field(5);
        SplineModule s = compute_spline_module(fx::path(f, {Ideal::unit(f), Ideal::zero(f)}, {0, 1}));
        CHECK(s.size() == 2);
        CHECK(std::get<FieldDim>(s.structure).dimension == 2);
    }

    TEST_CASE("triangle over Z/4 with labels (2)")
    {
        RingSpec z4 = RingSpec::mod_n(4);
        LabeledGraph t = fx::cycle(z4, {ideal(z4, {2})}, {0, 0, 0});
        SplineModule s = compute_spline_module(t);
        auto brute = oracle::splines_mod(3, fx::small_edges(t), 4);
        CHECK(brute.size() == 16);
        Integer order = 1;
        for (const auto& d : std::get<InvariantFactors>(s.structure).factors)
            order *= d;
        CHECK(order == 16);
        CHECK(s.zRank == 3);
        CHECK(span_of(s, 4) == brute);

        // Certificates for random members.
        std::vector<oracle::Tuple> members(brute.begin(), brute.end());
        std::mt19937 rng(1);
        for (int i = 0; i < 10; ++i) {
            const auto& t4 = members[rng() % members.size()];
            Spline p = spline(z4, {t4[0], t4[1], t4[2]});
            Membership mem = module_membership(s, p);
            REQUIRE(mem.member);
            Spline rebuilt = zero_spline(z4, 3);
            for (std::size_t k = 0; k < s.generators.size(); ++k)
                rebuilt = rebuilt + mem.coefficients[k] * s.generators[k];
            CHECK(rebuilt == p);
        }
    }

    TEST_CASE("based modules")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {6})}, {0});
        CHECK(based_spline_module(e, {}).generators == compute_spline_module(e).generators);
        SplineModule b = based_spline_module(e, {0});
        CHECK(b.size() == 1);
        CHECK(same_span(e, b.generators, {spline(Z, {0, 6})}));
        CHECK_THROWS_AS(based_spline_module(e, {2}), Error);

        LabeledGraph c2 = graph(Z, {ideal(Z, {4}), ideal(Z, {6})}, 2, {{0, 1, 0}, {1, 0, 1}});
        SplineModule bc = based_spline_module(c2, {0});
        CHECK(bc.size() == 1);
        CHECK(same_span(c2, bc.generators, {spline(Z, {0, 12})}));
        for (long x = -24; x <= 24; ++x)
            CHECK(is_spline(c2, spline(Z, {0, x})) == (x % 12 == 0));
    }

    TEST_CASE("split off constants")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {3})}, {0});
        ConstantSplit one = split_spline(spline(Z, {1, 1}), 0);
        CHECK(one.constantPart == spline(Z, {1, 1}));
        CHECK(is_zero(one.basedPart));
        ConstantSplit based = split_spline(spline(Z, {0, 3}), 0);
        CHECK(is_zero(based.constantPart));
        ConstantSplit mixed = split_spline(spline(Z, {1, 4}), 0);
        CHECK(mixed.constantPart == spline(Z, {1, 1}));
        CHECK(mixed.basedPart == spline(Z, {0, 3}));

        std::mt19937 rng(8);
        SplineModule m = compute_spline_module(fx::cycle(Z, {ideal(Z, {2}), ideal(Z, {3})}, {0, 1, 0, 1}));
        for (int i = 0; i < 20; ++i) {
            Spline p = fx::random_combination(Z, 4, m.generators, rng);
            ConstantSplit s = split_spline(p, 2);
            CHECK(s.constantPart + s.basedPart == p);
            CHECK(s.basedPart.values[2].is_zero());
        }
        ModuleSplit ms = split_off_constants(m, 0);
        std::vector<Spline> joined = ms.constantPart;
        joined.insert(joined.end(), ms.basedPart.begin(), ms.basedPart.end());
        CHECK(same_span(m.graph, joined, m.generators));
    }

    TEST_CASE("vertex expansion")
    {
        LabeledGraph p = fx::path(Z, {ideal(Z, {2}), ideal(Z, {3})}, {0, 1, 0});
        ContractionResult c = contract_edges(p, {0, 1});
        CHECK(vertex_expansion(c.contraction, spline(Z, {7, 7})) == spline(Z, {7, 7, 7, 7}));
        Spline q = spline(Z, {1, 3});
        Spline e = vertex_expansion(c.contraction, q);
        CHECK(e == spline(Z, {1, 1, 1, 3}));
        CHECK(is_spline(p, e));
        CHECK(vertex_expansion(identity_contraction(p), spline(Z, {0, 2, 5, 7})) == spline(Z, {0, 2, 5, 7}));
        Contraction bad = c.contraction;
        bad.vertexMap[0] = 1;
        CHECK_THROWS_AS(vertex_expansion(bad, q), Error);
    }

    TEST_CASE("oracle equivalence for small finite rings")
    {
        std::mt19937 rng(21);
        for (long n : {2, 3, 4, 5, 6, 7, 8}) {
            RingSpec r = is_prime(n) ? RingSpec::prime_field(n) : RingSpec::mod_n(n);
            std::vector<Ideal> labels;
            for (long g = 0; g < n; ++g)
                labels.push_back(ideal(r, {g}));
            for (const GraphShape& s : enumerate_connected_multigraphs(4, std::nullopt, 4)) {
                std::vector<std::size_t> lab;
                for (std::size_t e = 0; e < s.edges.size(); ++e)
                    lab.push_back(rng() % labels.size());
                LabeledGraph g = label_shape(s, r, labels, lab);
                SplineModule m = compute_spline_module(g);
                auto brute = oracle::splines_mod(s.vertices, fx::small_edges(g), n);
                CHECK(span_of(m, n) == brute);
            }
        }
    }

    TEST_CASE("tree closed forms")
    {
        for (long p : {2, 3, 5}) {
            RingSpec f = RingSpec::prime_field(p);
            for (std::size_t pairs = 0; pairs <= 5; ++pairs)
                for (const DyckWord& w : enumerate_dyck_words(2, pairs)) {
                    LabeledGraph t = tree_to_graph(word_to_tree(w), f, {Ideal::zero(f), Ideal::unit(f)});
                    CHECK(compute_spline_module(t).size() == pairs - count_label(w, 0) + 1);
                }
        }
        for (long p : {2, 3}) {
            RingSpec r = RingSpec::mod_n(p * p);
            for (std::size_t pairs = 0; pairs <= 5; ++pairs) {
                for (const DyckWord& w : enumerate_dyck_words(1, pairs))
                    CHECK(compute_spline_module(tree_to_graph(word_to_tree(w), r, {ideal(r, {p})})).size() ==
                          pairs + 1);
                for (const DyckWord& w : enumerate_dyck_words(2, pairs))
                    CHECK(compute_spline_module(tree_to_graph(word_to_tree(w), r, {Ideal::zero(r), ideal(r, {p})}))
                              .size() == pairs - count_label(w, 0) + 1);
            }
        }
    }

    TEST_CASE("reduction dimension cross-check")
    {
        RingSpec z8 = RingSpec::mod_n(8);
        LabeledGraph t = fx::cycle(z8, {ideal(z8, {2}), ideal(z8, {4})}, {0, 1, 0});
        SplineModule m = compute_spline_module(t);
        auto brute = oracle::splines_mod(3, fx::small_edges(t), 8);
        CHECK(mod_p_reduction_dimension(m) == oracle::reduction_dimension(brute, 2, 8));
        CHECK(m.zRank == oracle::reduction_dimension(brute, 2, 8));
        CHECK_FALSE(mod_p_reduction_dimension(compute_spline_module(fx::path(Z, {ideal(Z, {2})}, {0}))));
    }

    TEST_CASE("flow-up")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {5})}, {0});
        CHECK(is_flow_up(zero_spline(Z, 2), {0, 1}, 1));
        CHECK(is_flow_up(spline(Z, {1, 1}), {0, 1}, 0));
        CHECK_FALSE(is_flow_up(spline(Z, {1, 1}), {0, 1}, 1));
        CHECK(is_flow_up(spline(Z, {0, 5}), {0, 1}, 1));
    }

    TEST_CASE("flow-up generating sets")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {2})}, {0});
        CHECK(is_flow_up_generating_set(e, {spline(Z, {1, 1}), spline(Z, {0, 2})}, {0, 1}));
        // Spans the module, but nothing starts at vertex 1.
        CHECK_FALSE(is_flow_up_generating_set(e, {spline(Z, {1, 1}), spline(Z, {2, 0})}, {0, 1}));
        CHECK(is_flow_up_generating_set(e, {spline(Z, {2, 0}), spline(Z, {1, 1})}, {1, 0}));
        CHECK(is_flow_up_generating_set(e, {spline(Z, {0, 2})}, {0, 1}, {0}));
        CHECK_FALSE(is_flow_up_generating_set(e, {spline(Z, {0, 4})}, {0, 1}, {0}));

        RingSpec z = RingSpec::integers();
        std::vector<Ideal> S{ideal(z, {2}), ideal(z, {3}), Ideal::zero(z)};
        for_each_dyck_word(3, 3, [&](const DyckWord& w) {
            LabeledGraph t = tree_to_graph(word_to_tree(w), z, S);
            PlaneRootedStructure s = default_structure(t, 0);
            CHECK(is_flow_up_generating_set(t, tree_flow_up_generators(t, s), depth_first_order(t, s)));
        });
    }

    TEST_CASE("tree flow-up generators")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {7})}, {0});
        CHECK(tree_flow_up_generators(e, default_structure(e, 0)) ==
              std::vector<Spline>{spline(Z, {1, 1}), spline(Z, {0, 7})});
        LabeledGraph p = fx::path(Z, {ideal(Z, {2}), ideal(Z, {3})}, {0, 1});
        auto gens = tree_flow_up_generators(p, default_structure(p, 0));
        CHECK(gens == std::vector<Spline>{spline(Z, {1, 1, 1}), spline(Z, {0, 2, 2}), spline(Z, {0, 0, 3})});
        CHECK(same_span(p, gens, compute_spline_module(p).generators));
        LabeledGraph star = graph(Z, {Ideal::zero(Z)}, 4, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}});
        CHECK(tree_flow_up_generators(star, default_structure(star, 0)).size() == 1);
        CHECK_THROWS_AS(tree_flow_up_generators(fx::cycle(Z, {ideal(Z, {2})}, {0, 0, 0}),
                                                default_structure(fx::cycle(Z, {ideal(Z, {2})}, {0, 0, 0}), 0)),
                        Error);
    }

    TEST_CASE("vertex expansion preserves flow-up along order-compatible contractions")
    {
        // Contract the last edge of a rooted path: depth-first orders are compatible.
        LabeledGraph p = fx::path(Z, {ideal(Z, {2}), ideal(Z, {3})}, {0, 1, 0, 1});
        for (std::size_t e = 0; e < p.edge_count(); ++e) {
            ContractionResult c = contract_edges(p, {e});
            auto order_dom = depth_first_order(p, default_structure(p, 0));
            auto order_cod = depth_first_order(c.graph, default_structure(c.graph, 0));
            for (const auto& q : tree_flow_up_generators(c.graph, default_structure(c.graph, 0))) {
                Vertex first = order_cod.back();
                for (Vertex v : order_cod)
                    if (!q.values[v].is_zero()) {
                        first = v;
                        break;
                    }
                Spline ex = vertex_expansion(c.contraction, q);
                Vertex pre = 0;
                for (Vertex v : order_dom)
                    if (c.contraction.vertexMap[v] == first) {
                        pre = v;
                        break;
                    }
                CHECK(is_flow_up(ex, order_dom, pre));
            }
        }
    }

    TEST_CASE("indicator witnesses")
    {
        LabeledGraph p = fx::path(Z, {ideal(Z, {2})}, {0, 0});
        IndicatorWitness w = indicator_in_contraction_span(p, 0);
        CHECK(w.kind == IndicatorWitness::Case::SingleEdge);
        CHECK(replay_indicator_witness(w) == spline(Z, {1, 0, 0}).values);

        LabeledGraph star = graph(Z, {ideal(Z, {2})}, 4, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}});
        IndicatorWitness s = indicator_in_contraction_span(star, 0);
        CHECK(s.kind == IndicatorWitness::Case::Star);
        CHECK(replay_indicator_witness(s) == spline(Z, {1, 0, 0, 0}).values);

        LabeledGraph t = fx::cycle(Z, {ideal(Z, {2})}, {0, 0, 0});
        for (Vertex u = 0; u < 3; ++u) {
            IndicatorWitness tw = indicator_in_contraction_span(t, u);
            CHECK(tw.kind == IndicatorWitness::Case::SingleEdge);
            std::vector<RingElement> want(3, el(Z, 0));
            want[u] = el(Z, 1);
            CHECK(replay_indicator_witness(tw) == want);
        }
        CHECK_THROWS_AS(indicator_in_contraction_span(fx::path(Z, {ideal(Z, {2})}, {0}), 0), Error);
    }

    TEST_CASE("membership examples")
    {
        LabeledGraph e = fx::path(Z, {ideal(Z, {2})}, {0});
        SplineModule m{e, {}, {spline(Z, {2, 2})}, FreeRank{1}, 1};
        CHECK_FALSE(module_membership(m, spline(Z, {1, 1})).member);
        CHECK(module_membership(m, spline(Z, {4, 4})).member);
        CHECK_THROWS_AS(module_membership(m, spline(Z, {1, 1, 1})), Error);
        SplineModule full = compute_spline_module(e);
        for (const auto& g : full.generators)
            CHECK(module_membership(full, g).member);
    }

    TEST_CASE("truncated polynomial splines")
    {
        RingSpec r = RingSpec::truncated_poly(Integer(2), 2, 2);
        RingElement x1 = RingElement::monomial(r, 1), x2 = RingElement::monomial(r, 2);
        LabeledGraph t = graph(r, {Ideal(r, {x1}), Ideal(r, {x2})}, 2, {{0, 1, 0}});
        SplineModule m = compute_spline_module(t);
        CHECK(m.size() == 4); // R on vertex 0 (3) plus the span of x1 (1)
        for (const auto& g : m.generators)
            CHECK(is_spline(t, g));
        RingSpec q = RingSpec::truncated_poly(std::nullopt, 1, 3);
        LabeledGraph tq = graph(q, {Ideal(q, {RingElement::monomial(q, 1)})}, 2, {{0, 1, 0}});
        CHECK(compute_spline_module(tq).size() == 5);
    }
}
