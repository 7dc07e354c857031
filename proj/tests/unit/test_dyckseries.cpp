#include <doctest.h>

#include "../support/fixtures.hpp"

using namespace gspline;
using fx::ideal;

namespace {

DyckWord word(std::initializer_list<std::pair<bool, std::size_t>> symbols)
{
    DyckWord w;
    for (auto [open, label] : symbols)
        w.symbols.push_back({open, label});
    return w;
}

mpz_class power(long base, unsigned e)
{
    mpz_class r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

std::vector<Integer> to_integers(std::initializer_list<long> xs)
{
    std::vector<Integer> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_SUITE("dyckseries")
{
    TEST_CASE("enumeration counts")
    {
        CHECK(enumerate_dyck_words(1, 3).size() == 5);
        CHECK(enumerate_dyck_words(2, 2).size() == 8);
        CHECK(enumerate_dyck_words(3, 0).size() == 1);
        CHECK(enumerate_dyck_words(3, 0)[0].symbols.empty());
        for (std::size_t s = 1; s <= 3; ++s)
            for (unsigned n = 0; n <= 6; ++n) {
                std::size_t count = 0;
                for_each_dyck_word(s, n, [&](const DyckWord&) { ++count; });
                CHECK(mpz_class(count) == power(static_cast<long>(s), n) * oracle::catalan(n));
            }
    }

    TEST_CASE("enumeration has no duplicates and only valid words")
    {
        auto words = enumerate_dyck_words(2, 4);
        std::set<std::string> seen;
        for (const auto& w : words) {
            CHECK(seen.insert(to_string(w)).second);
            CHECK_NOTHROW(word_to_tree(w));
        }
    }

    TEST_CASE("word and tree bijection")
    {
        PlaneLabeledTree leaf;
        CHECK(word_to_tree(DyckWord{}) == leaf);
        CHECK(tree_to_word(leaf).symbols.empty());

        // (1 (2 )2 (3 (1 )1 )3 )1 (2 )2 with labels shifted to 0..2.
        DyckWord w = word({{true, 0}, {true, 1}, {false, 1}, {true, 2}, {true, 0}, {false, 0}, {false, 2},
                           {false, 0}, {true, 1}, {false, 1}});
        PlaneLabeledTree t = word_to_tree(w);
        REQUIRE(t.children.size() == 2);
        CHECK(t.children[0].label == 0);
        CHECK(t.children[1].label == 1);
        REQUIRE(t.children[0].subtree.children.size() == 2);
        CHECK(t.children[0].subtree.children[0].label == 1);
        CHECK(t.children[0].subtree.children[1].label == 2);
        CHECK(t.children[0].subtree.children[1].subtree.children[0].label == 0);
        CHECK(t.edge_count() == 5);
        CHECK(tree_to_word(t) == w);

        for (std::size_t s = 1; s <= 3; ++s)
            for (std::size_t n = 0; n <= 5; ++n)
                for_each_dyck_word(s, n, [&](const DyckWord& x) {
                    PlaneLabeledTree tx = word_to_tree(x);
                    CHECK(tx.edge_count() == n);
                    CHECK(tree_to_word(tx) == x);
                });

        CHECK_THROWS_AS(word_to_tree(word({{true, 0}, {false, 1}})), Error);
        CHECK_THROWS_AS(word_to_tree(word({{false, 0}, {true, 0}})), Error);
        CHECK_THROWS_AS(word_to_tree(word({{true, 0}})), Error);
    }

    TEST_CASE("tree graphs use depth-first numbering")
    {
        RingSpec z = RingSpec::integers();
        DyckWord w = word({{true, 0}, {true, 1}, {false, 1}, {false, 0}, {true, 1}, {false, 1}});
        LabeledGraph g = tree_to_graph(word_to_tree(w), z, {ideal(z, {2}), ideal(z, {3})});
        CHECK(g.vertex_count() == 4);
        CHECK(g.edge(0) == Edge{0, 1, 0});
        CHECK(g.edge(1) == Edge{1, 2, 1});
        CHECK(g.edge(2) == Edge{0, 3, 1});
    }

    TEST_CASE("Hilbert-Dyck prefixes")
    {
        RingSpec f2 = RingSpec::prime_field(2);
        SeriesPrefix catalan = hilbert_dyck_prefix(f2, {Ideal::zero(f2)}, 5, SeriesMode::FieldDimension);
        for (unsigned n = 0; n <= 5; ++n)
            CHECK(catalan.coefficients[n] == oracle::catalan(n));

        SeriesPrefix two = hilbert_dyck_prefix(f2, {Ideal::zero(f2), Ideal::unit(f2)}, 1, SeriesMode::FieldDimension);
        CHECK(two.coefficients[1] == 3);

        RingSpec z4 = RingSpec::mod_n(4);
        HilbertDyckOptions all;
        all.exhaustiveCrossCheck = true;
        SeriesPrefix ranks = hilbert_dyck_prefix(z4, {ideal(z4, {2})}, 5, SeriesMode::ZRank, all);
        for (unsigned n = 0; n <= 5; ++n)
            CHECK(ranks.coefficients[n] == (n + 1) * oracle::catalan(n));

        CHECK_THROWS_AS(hilbert_dyck_prefix(f2, {Ideal::zero(f2)}, 3, SeriesMode::ZRank), Error);
        CHECK_THROWS_AS(hilbert_dyck_prefix(z4, {Ideal::zero(z4)}, 3, SeriesMode::FieldDimension), Error);
    }

    TEST_CASE("field prefix equals edges minus zero labels plus one, summed")
    {
        for (long p : {2, 3}) {
            RingSpec f = RingSpec::prime_field(p);
            HilbertDyckOptions all;
            all.exhaustiveCrossCheck = true;
            SeriesPrefix a = hilbert_dyck_prefix(f, {Ideal::zero(f), Ideal::unit(f)}, 5, SeriesMode::FieldDimension, all);
            for (unsigned n = 0; n <= 5; ++n) {
                mpz_class words = power(2, n) * oracle::catalan(n);
                CHECK(a.coefficients[n] == (n + 1) * words - marked_word_count(2, n).direct);
            }
        }
    }

    TEST_CASE("truncated polynomial prefixes are cross-checked against the solver")
    {
        RingSpec r = RingSpec::truncated_poly(Integer(2), 2, 2);
        std::vector<Ideal> S{Ideal(r, {RingElement::monomial(r, 1)}), Ideal::unit(r)};
        HilbertDyckOptions all;
        all.exhaustiveCrossCheck = true;
        SeriesPrefix a = hilbert_dyck_prefix(r, S, 3, SeriesMode::FieldDimension, all);
        CHECK(a.coefficients[0] == 3);
    }

    TEST_CASE("z-rank equals the mod-p reduction dimension per word")
    {
        RingSpec z8 = RingSpec::mod_n(8);
        std::vector<Ideal> S{ideal(z8, {2}), ideal(z8, {4}), Ideal::zero(z8)};
        for (std::size_t n = 0; n <= 3; ++n)
            for_each_dyck_word(3, n, [&](const DyckWord& w) {
                SplineModule m = compute_spline_module(tree_to_graph(word_to_tree(w), z8, S));
                CHECK(m.zRank == *mod_p_reduction_dimension(m));
                CHECK(m.zRank == tree_module_size(z8, S, w, SeriesMode::ZRank));
            });
    }

    TEST_CASE("closed form checks")
    {
        RingSpec f3 = RingSpec::prime_field(3);
        ClosedFormReport a = closed_form_check(f3, {Ideal::zero(f3), Ideal::unit(f3)}, 4);
        CHECK(a.ok());
        CHECK(a.wordsChecked == 1 + 2 + 8 + 40 + 224);
        RingSpec z4 = RingSpec::mod_n(4);
        CHECK(closed_form_check(z4, {ideal(z4, {2})}, 4).ok());
        RingSpec z9 = RingSpec::mod_n(9);
        CHECK(closed_form_check(z9, {Ideal::zero(z9), ideal(z9, {3})}, 3).ok());
        CHECK_THROWS_AS(closed_form_check(RingSpec::integers(), {Ideal::zero(RingSpec::integers())}, 2), Error);
        RingSpec z8 = RingSpec::mod_n(8);
        CHECK_THROWS_AS(closed_form_check(z8, {ideal(z8, {2})}, 2), Error);
    }

    TEST_CASE("marked word counts")
    {
        CHECK(marked_word_count(2, 1).direct == 1);
        CHECK(marked_word_count(2, 0).direct == 0);
        // Direct enumeration: sum of zero-label pairs over the 8 words with 2 pairs.
        mpz_class direct = 0;
        for (const auto& w : enumerate_dyck_words(2, 2))
            direct += count_label(w, 0);
        CHECK(marked_word_count(2, 2).direct == direct);
        CHECK(marked_word_count(2, 2).marked == direct);
        for (std::size_t s = 1; s <= 3; ++s)
            for (std::size_t n = 0; n <= 5; ++n)
                CHECK_NOTHROW(marked_word_count(s, n));
    }

    TEST_CASE("algebraic relation for the Catalan series")
    {
        std::vector<Integer> coeffs;
        for (unsigned n = 0; n <= 12; ++n)
            coeffs.push_back(oracle::catalan(n));
        SeriesPrefix f{SeriesMode::FieldDimension, coeffs};
        auto rel = guess_algebraic_relation(f, 2, 1);
        REQUIRE(rel);
        CHECK(verify_relation(*rel, f));
        std::vector<std::vector<mpz_class>> p;
        for (const auto& row : rel->coefficients)
            p.push_back(std::vector<mpz_class>(row.begin(), row.end()));
        for (const auto& c : oracle::substitute(p, coeffs))
            CHECK(c == 0);
        // Proportional to t x^2 - x + 1.
        CHECK(rel->pretty == "t*x^2 - x + 1");
    }

    TEST_CASE("geometric series and tight bounds")
    {
        SeriesPrefix ones{SeriesMode::FieldDimension, std::vector<Integer>(10, 1)};
        auto rel = guess_algebraic_relation(ones, 1, 1);
        REQUIRE(rel);
        CHECK(verify_relation(*rel, ones));
        CHECK((rel->pretty == "-t*x + x - 1" || rel->pretty == "t*x - x + 1"));

        SeriesPrefix noise{SeriesMode::FieldDimension, to_integers({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8})};
        CHECK_FALSE(guess_algebraic_relation(noise, 1, 1));
        CHECK_THROWS_AS(guess_algebraic_relation(noise, 2, 2), Error);
        CHECK(required_prefix_length(2, 1) == 11);
    }
}
