#include <doctest.h>

#include "../support/fixtures.hpp"

using namespace gspline;
using fx::el;
using fx::ideal;

TEST_SUITE("rings")
{
    TEST_CASE("ring construction rejects bad parameters")
    {
        CHECK_THROWS_AS(RingSpec::mod_n(1), Error);
        CHECK_THROWS_AS(RingSpec::prime_field(4), Error);
        CHECK_THROWS_AS(RingSpec::truncated_poly(Integer(2), 0, 2), Error);
        CHECK_THROWS_AS(RingSpec::truncated_poly(Integer(2), 1, 0), Error);
        CHECK(RingSpec::mod_n(4).describe() == "Z/4");
    }

    TEST_CASE("arithmetic examples")
    {
        RingSpec z4 = RingSpec::mod_n(4), z = RingSpec::integers();
        CHECK(el(z4, 3) + el(z4, 3) == el(z4, 2));
        CHECK(el(z, 5) - el(z, 7) == el(z, -2));
        CHECK(el(z4, -1).value() == 3);
        RingSpec r = RingSpec::truncated_poly(Integer(2), 1, 2);
        RingElement x = RingElement::monomial(r, 1);
        CHECK((x * x).is_zero());
        CHECK((x + x).is_zero());
        CHECK_THROWS_AS(el(z, 1) + el(z4, 1), Error);
    }

    TEST_CASE("ring axioms on random elements")
    {
        std::mt19937 rng(2);
        for (RingSpec r : {RingSpec::integers(), RingSpec::mod_n(12), RingSpec::prime_field(5),
                           RingSpec::truncated_poly(Integer(3), 2, 3), RingSpec::truncated_poly(std::nullopt, 2, 2)}) {
            for (int i = 0; i < 20; ++i) {
                RingElement a = fx::random_element(r, rng), b = fx::random_element(r, rng),
                            c = fx::random_element(r, rng);
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a - a == RingElement::zero(r));
                CHECK(a * RingElement::one(r) == a);
            }
        }
    }

    TEST_CASE("membership examples")
    {
        RingSpec z = RingSpec::integers();
        CHECK(ideal_membership(el(z, 2), ideal(z, {4, 6})));
        CHECK(oracle::z_ideal_witness(2, {4, 6}));
        for (RingSpec r : {z, RingSpec::mod_n(6), RingSpec::prime_field(3)}) {
            CHECK(ideal_membership(RingElement::zero(r), Ideal::zero(r)));
            CHECK_FALSE(ideal_membership(el(r, 1), Ideal::zero(r)));
        }
        RingSpec t = RingSpec::truncated_poly(Integer(2), 1, 2);
        Ideal xi(t, {RingElement::monomial(t, 1)});
        CHECK(ideal_membership(RingElement::monomial(t, 1), xi));
        CHECK_FALSE(ideal_membership(RingElement::one(t), xi));
    }

    TEST_CASE("membership agrees with bounded combination search")
    {
        std::mt19937 rng(9);
        std::uniform_int_distribution<long> g(-12, 12), x(-30, 30);
        RingSpec z = RingSpec::integers();
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<long> gens{g(rng), g(rng)};
            Ideal I = ideal(z, {gens[0], gens[1]});
            for (int k = 0; k < 10; ++k) {
                long e = x(rng);
                if (oracle::z_ideal_witness(e, gens, 10))
                    CHECK(ideal_membership(el(z, e), I));
            }
        }
        for (long n : {4, 6, 8, 9, 12}) {
            RingSpec r = RingSpec::mod_n(n);
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b) {
                    auto set = oracle::ideal_elements_mod({a, b}, n);
                    for (long e = 0; e < n; ++e)
                        CHECK(ideal_membership(el(r, e), ideal(r, {a, b})) == (set.count(e) > 0));
                }
        }
    }

    TEST_CASE("membership is closed under the ring operations")
    {
        std::mt19937 rng(4);
        std::vector<std::pair<RingSpec, Ideal>> cases;
        RingSpec z = RingSpec::integers(), z12 = RingSpec::mod_n(12);
        RingSpec t = RingSpec::truncated_poly(Integer(2), 2, 3);
        cases.emplace_back(z, ideal(z, {4, 6}));
        cases.emplace_back(z12, ideal(z12, {8}));
        cases.emplace_back(t, Ideal(t, {RingElement::monomial(t, 1), RingElement::monomial(t, 2) * RingElement::monomial(t, 2)}));
        for (auto& [r, I] : cases) {
            std::vector<RingElement> members;
            for (const auto& g : I.generators())
                members.push_back(g);
            for (int i = 0; i < 20; ++i) {
                RingElement a = members[rng() % members.size()], b = members[rng() % members.size()];
                RingElement s = fx::random_element(r, rng);
                CHECK(ideal_membership(a + b, I));
                CHECK(ideal_membership(s * a, I));
                members.push_back(s * a + b);
            }
        }
    }

    TEST_CASE("ideal sums")
    {
        RingSpec z = RingSpec::integers();
        Ideal s = ideal_sum(ideal(z, {4}), ideal(z, {6}));
        CHECK(s.generators().size() == 2);
        CHECK(ideal_membership(el(z, 2), s));
        CHECK(ideal_equal(ideal_sum(ideal(z, {4}), Ideal::zero(z)), ideal(z, {4})));
        RingSpec z12 = RingSpec::mod_n(12);
        Ideal s12 = ideal_sum(ideal(z12, {4}), ideal(z12, {6}));
        auto brute = oracle::ideal_elements_mod({4, 6}, 12);
        for (long e = 0; e < 12; ++e) {
            CHECK(ideal_membership(el(z12, e), s12) == (e % 2 == 0));
            CHECK(brute.count(e) == (e % 2 == 0 ? 1u : 0u));
        }
    }

    TEST_CASE("ideal sum is commutative and associative pointwise")
    {
        RingSpec z12 = RingSpec::mod_n(12);
        for (long a = 0; a < 12; ++a)
            for (long b = 0; b < 12; b += 2)
                for (long c = 0; c < 12; c += 3) {
                    Ideal A = ideal(z12, {a}), B = ideal(z12, {b}), C = ideal(z12, {c});
                    for (long e = 0; e < 12; ++e) {
                        CHECK(ideal_membership(el(z12, e), ideal_sum(A, B)) ==
                              ideal_membership(el(z12, e), ideal_sum(B, A)));
                        CHECK(ideal_membership(el(z12, e), ideal_sum(ideal_sum(A, B), C)) ==
                              ideal_membership(el(z12, e), ideal_sum(A, ideal_sum(B, C))));
                    }
                }
    }

    TEST_CASE("quotient presentations")
    {
        RingSpec z = RingSpec::integers();
        CHECK(ideal_quotient_presentation(ideal(z, {6})) == IntMatrix::from_rows({{6}}));
        RingSpec z4 = RingSpec::mod_n(4);
        IntMatrix p = ideal_quotient_presentation(ideal(z4, {2}));
        CHECK(p == IntMatrix::from_rows({{2, 4}}));
        for (long e : {0, 2})
            CHECK(solve_integer(p, {e}).has_value());
        for (long e : {1, 3})
            CHECK_FALSE(solve_integer(p, {e}).has_value());
        RingSpec t = RingSpec::truncated_poly(Integer(2), 2, 2);
        IntMatrix q = ideal_quotient_presentation(Ideal(t, {RingElement::monomial(t, 1)}));
        CHECK(rank_mod_p(q, 2) == 1);
        CHECK(solve_mod_p(q, IntVector{0, 1, 0}, 2));
        CHECK_FALSE(solve_mod_p(q, IntVector{0, 0, 1}, 2));
    }

    TEST_CASE("ideal decomposition and additive sizes")
    {
        RingSpec z = RingSpec::integers();
        auto parts = ideal_decompose(el(z, 2), {ideal(z, {4}), ideal(z, {6})});
        REQUIRE(parts);
        CHECK((*parts)[0] + (*parts)[1] == el(z, 2));
        CHECK(ideal_membership((*parts)[0], ideal(z, {4})));
        CHECK_FALSE(ideal_decompose(el(z, 1), {ideal(z, {4}), ideal(z, {6})}));
        CHECK(ideal_additive_size(ideal(z, {4})) == 1);
        CHECK(ideal_additive_size(Ideal::zero(z)) == 0);
        RingSpec z4 = RingSpec::mod_n(4);
        CHECK(ideal_additive_size(ideal(z4, {2})) == 1);
        RingSpec t = RingSpec::truncated_poly(Integer(2), 2, 3);
        CHECK(ideal_additive_size(Ideal(t, {RingElement::monomial(t, 1)})) == 3); // x1, x1^2, x1 x2
    }
}
