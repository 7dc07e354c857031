#include <doctest.h>

#include "../support/fixtures.hpp"

using namespace gspline;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = d(rng);
    return m;
}

oracle::Mat to_oracle(const IntMatrix& m)
{
    oracle::Mat out(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = m(r, c);
    return out;
}

Integer abs_det(const IntMatrix& m)
{
    return abs(oracle::det(to_oracle(m)));
}

bool in_lattice(const std::vector<IntVector>& basis, const IntVector& v)
{
    if (basis.empty())
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    return solve_integer(IntMatrix::from_columns(basis, v.size()), v).has_value();
}

} // namespace

TEST_SUITE("exactlinalg")
{
    TEST_CASE("smith normal form of diag(2,3) is diag(1,6)")
    {
        IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
        SNFResult s = smith_normal_form(a);
        CHECK(s.U * a * s.V == s.D);
        CHECK(s.D == IntMatrix::from_rows({{1, 0}, {0, 6}}));
    }

    TEST_CASE("smith normal form of zero and identity")
    {
        IntMatrix z(2, 2);
        SNFResult s = smith_normal_form(z);
        CHECK(s.D.is_zero());
        CHECK(s.U == IntMatrix::identity(2));
        CHECK(s.V == IntMatrix::identity(2));
        CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
    }

    TEST_CASE("smith normal form agrees with determinantal divisors on random matrices")
    {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
            IntMatrix a = random_matrix(rng, rows, cols, 6);
            SNFResult s = smith_normal_form(a);
            REQUIRE(s.U * a * s.V == s.D);
            CHECK(abs_det(s.U) == 1);
            CHECK(abs_det(s.V) == 1);
            auto expected = oracle::smith_invariants(to_oracle(a));
            for (std::size_t i = 0; i < expected.size(); ++i) {
                CHECK(s.D(i, i) == expected[i]);
                if (i + 1 < expected.size() && s.D(i + 1, i + 1) != 0)
                    CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
            }
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    if (r != c)
                        CHECK(s.D(r, c) == 0);
        }
    }

    TEST_CASE("integer kernel examples")
    {
        CHECK(integer_kernel(IntMatrix::from_rows({{1, -1}})) == std::vector<IntVector>{{1, 1}});
        auto k = integer_kernel(IntMatrix::from_rows({{2, -4}}));
        REQUIRE(k.size() == 1);
        // Every small solution is an integer multiple of the basis vector.
        for (long x = -8; x <= 8; ++x)
            for (long y = -8; y <= 8; ++y)
                if (2 * x - 4 * y == 0)
                    CHECK(in_lattice(k, {x, y}));
        CHECK((k[0] == IntVector{2, 1} || k[0] == IntVector{-2, -1}));
        CHECK(integer_kernel(IntMatrix::identity(3)).empty());
    }

    TEST_CASE("integer kernel contains every small kernel vector")
    {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t rows = 1 + trial % 3, cols = 2 + trial % 3;
            IntMatrix a = random_matrix(rng, rows, cols, 3);
            auto k = integer_kernel(a);
            CHECK(k.size() == cols - rank_rational(a));
            for (const auto& v : k) {
                IntVector av = a * v;
                CHECK(std::all_of(av.begin(), av.end(), [](const Integer& x) { return x == 0; }));
            }
            oracle::for_each_tuple(cols, 7, [&](const oracle::Tuple& t) {
                IntVector v;
                for (long x : t)
                    v.emplace_back(x - 3);
                IntVector av = a * v;
                if (std::all_of(av.begin(), av.end(), [](const Integer& x) { return x == 0; }))
                    CHECK(in_lattice(k, v));
            });
        }
    }

    TEST_CASE("lattice hnf of an index-2 lattice")
    {
        auto basis = lattice_hnf({{2, 0}, {0, 2}, {1, 1}});
        REQUIRE(basis.size() == 2);
        CHECK(abs_det(IntMatrix::from_columns(basis, 2)) == 2);
        std::mt19937 rng(3);
        std::uniform_int_distribution<long> d(-9, 9);
        for (int i = 0; i < 10; ++i) {
            long x = d(rng), y = d(rng);
            CHECK(in_lattice(basis, {x, y}) == ((x + y) % 2 == 0));
        }
        CHECK(lattice_hnf({}).empty());
        CHECK(lattice_hnf({{1, 0}, {0, 1}}) == std::vector<IntVector>{{1, 0}, {0, 1}});
    }

    TEST_CASE("lattice hnf is idempotent and order independent")
    {
        std::mt19937 rng(17);
        std::uniform_int_distribution<long> d(-5, 5);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<IntVector> gens(1 + trial % 4, IntVector(3));
            for (auto& v : gens)
                for (auto& x : v)
                    x = d(rng);
            auto h = lattice_hnf(gens);
            CHECK(lattice_hnf(h) == h);
            auto shuffled = gens;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(lattice_hnf(shuffled) == h);
            for (const auto& v : gens)
                CHECK(in_lattice(h, v));
        }
    }

    TEST_CASE("nullspace mod p")
    {
        auto n = nullspace_mod_p(IntMatrix::from_rows({{1, 1}}), 2);
        CHECK(n == std::vector<IntVector>{{1, 1}});
        CHECK(nullspace_mod_p(IntMatrix::identity(3), 3).empty());
        CHECK(nullspace_mod_p(IntMatrix::from_rows({{2, 0}}), 2).size() == 2);
        CHECK(rank_mod_p(IntMatrix::from_rows({{2, 0}}), 2) == 0);
        CHECK_THROWS_AS(nullspace_mod_p(IntMatrix::identity(2), 4), Error);
    }

    TEST_CASE("rational nullspace")
    {
        auto n = rational_nullspace(IntMatrix::from_rows({{1, -2}}));
        REQUIRE(n.size() == 1);
        CHECK(primitive_integer_vector(n[0]) == IntVector{2, 1});
        CHECK(rational_nullspace(IntMatrix::from_rows({{1, 2}, {3, 4}})).empty());
        auto three = rational_nullspace(IntMatrix::from_rows({{1, 1, 1}}));
        CHECK(three.size() == 2);
        for (const auto& v : three)
            CHECK(v[0] + v[1] + v[2] == 0);
    }

    TEST_CASE("solvers return actual solutions")
    {
        IntMatrix a = IntMatrix::from_rows({{2, 4}, {1, 3}});
        auto x = solve_integer(a, {6, 4});
        REQUIRE(x);
        CHECK(a * *x == IntVector{6, 4});
        CHECK_FALSE(solve_integer(IntMatrix::from_rows({{2, 4}}), {1}));
        auto y = solve_mod_p(IntMatrix::from_rows({{1, 1}}), {1}, 2);
        REQUIRE(y);
        CHECK(((*y)[0] + (*y)[1]) % 2 == 1);
    }
}
