#include <doctest.h>

#include "../support/fixtures.hpp"

using namespace gspline;

TEST_SUITE("enumerate")
{
    TEST_CASE("counts agree with exhaustive canonization")
    {
        auto shapes = enumerate_connected_multigraphs(4);
        for (std::size_t e = 0; e <= 4; ++e)
            for (std::size_t n = 1; n <= e + 1; ++n) {
                std::set<oracle::EdgeList> expected = oracle::connected_multigraphs(n, e);
                std::set<oracle::EdgeList> got;
                for (const auto& s : shapes)
                    if (s.vertices == n && s.edges.size() == e)
                        got.insert(oracle::canonical(n, s.edges));
                CHECK(got == expected);
            }
    }

    TEST_CASE("shapes are pairwise non-isomorphic and filtered")
    {
        auto shapes = enumerate_connected_multigraphs(5, 2, 4);
        std::set<std::pair<std::size_t, oracle::EdgeList>> seen;
        for (const auto& s : shapes) {
            CHECK(seen.insert({s.vertices, oracle::canonical(s.vertices, s.edges)}).second);
            CHECK(s.vertices <= 4);
            CHECK(static_cast<long>(s.edges.size()) - static_cast<long>(s.vertices) + 1 <= 2);
            CHECK(oracle::connected(s.vertices, s.edges));
        }
    }

    TEST_CASE("canonical form is invariant under relabeling")
    {
        GraphShape s{4, {{0, 1}, {1, 2}, {2, 2}, {1, 3}, {0, 1}}};
        GraphShape t{4, {{3, 2}, {2, 0}, {0, 0}, {2, 1}, {3, 2}}};
        for (auto& e : t.edges)
            if (e.first > e.second)
                std::swap(e.first, e.second);
        CHECK(canonical_shape(s) == canonical_shape(t));
    }

    TEST_CASE("labelings")
    {
        RingSpec f2 = RingSpec::prime_field(2);
        GraphShape s{2, {{0, 1}, {0, 1}, {1, 1}}};
        auto all = all_labelings(s, f2, {Ideal::zero(f2), Ideal::unit(f2)});
        CHECK(all.size() == 8);
        CHECK(all.front().edge(0).label == 0);
        CHECK(all.back().edge(2).label == 1);
        CHECK_THROWS_AS(label_shape(s, f2, {Ideal::zero(f2)}, {0}), Error);
    }
}
