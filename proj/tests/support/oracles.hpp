#pragma once

// Brute-force reference implementations used by the tests. Nothing here calls
// into the library's solvers; only plain integer arithmetic and exhaustive
// enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Tuple = std::vector<long>;

struct SmallEdge {
    std::size_t a, b;
    std::vector<long> gens; // ideal generators
};

/// Residues of Z/n reachable as sums of the generators (the ideal they generate).
inline std::set<long> ideal_elements_mod(const std::vector<long>& gens, long n)
{
    std::set<long> seen{0};
    std::vector<long> frontier{0};
    while (!frontier.empty()) {
        long x = frontier.back();
        frontier.pop_back();
        for (long g : gens) {
            long y = ((x + g) % n + n) % n;
            if (seen.insert(y).second)
                frontier.push_back(y);
        }
    }
    return seen;
}

/// Z: x lies in (g_1..g_r) iff some combination with |c_i| <= bound hits it.
inline bool z_ideal_witness(long x, const std::vector<long>& gens, long bound = 10)
{
    if (gens.empty())
        return x == 0;
    std::function<bool(std::size_t, long)> rec = [&](std::size_t i, long rest) {
        if (i == gens.size())
            return rest == 0;
        for (long c = -bound; c <= bound; ++c)
            if (rec(i + 1, rest - c * gens[i]))
                return true;
        return false;
    };
    return rec(0, x);
}

inline bool is_spline_mod(const Tuple& p, const std::vector<SmallEdge>& edges, long n)
{
    for (const auto& e : edges) {
        auto ideal = ideal_elements_mod(e.gens, n);
        long d = ((p[e.a] - p[e.b]) % n + n) % n;
        if (!ideal.count(d))
            return false;
    }
    return true;
}

inline void for_each_tuple(std::size_t len, long base, const std::function<void(const Tuple&)>& f)
{
    Tuple t(len, 0);
    while (true) {
        f(t);
        std::size_t i = 0;
        while (i < len && ++t[i] == base)
            t[i++] = 0;
        if (i == len)
            break;
    }
}

inline std::set<Tuple> splines_mod(std::size_t vertices, const std::vector<SmallEdge>& edges, long n)
{
    std::set<Tuple> out;
    for_each_tuple(vertices, n, [&](const Tuple& t) {
        if (is_spline_mod(t, edges, n))
            out.insert(t);
    });
    return out;
}

/// Additive closure of a set of tuples in (Z/n)^V.
inline std::set<Tuple> additive_span_mod(const std::vector<Tuple>& gens, std::size_t vertices, long n)
{
    std::set<Tuple> seen{Tuple(vertices, 0)};
    std::vector<Tuple> frontier{Tuple(vertices, 0)};
    while (!frontier.empty()) {
        Tuple x = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            Tuple y(vertices);
            for (std::size_t i = 0; i < vertices; ++i)
                y[i] = ((x[i] + g[i]) % n + n) % n;
            if (seen.insert(y).second)
                frontier.push_back(y);
        }
    }
    return seen;
}

/// dim over F_p of M / pM for a finite set M closed under addition in (Z/n)^V.
inline std::size_t reduction_dimension(const std::set<Tuple>& module, long p, long n)
{
    std::set<Tuple> pm;
    for (const auto& t : module) {
        Tuple s(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            s[i] = (t[i] * p) % n;
        pm.insert(s);
    }
    std::size_t quotient = module.size() / pm.size();
    std::size_t dim = 0;
    while (quotient > 1) {
        quotient /= static_cast<std::size_t>(p);
        ++dim;
    }
    return dim;
}

inline mpz_class catalan(unsigned n)
{
    std::vector<mpz_class> c{1};
    for (unsigned m = 1; m <= n; ++m) {
        mpz_class s = 0;
        for (unsigned i = 0; i < m; ++i)
            s += c[i] * c[m - 1 - i];
        c.push_back(s);
    }
    return c[n];
}

// ---------------------------------------------------------------------------
// Graphs

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline bool connected(std::size_t n, const EdgeList& edges, std::size_t skip = SIZE_MAX)
{
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (i != skip)
            parent[find(edges[i].first)] = find(edges[i].second);
    for (std::size_t v = 1; v < n; ++v)
        if (find(v) != find(0))
            return false;
    return true;
}

inline std::vector<std::size_t> bridges(std::size_t n, const EdgeList& edges)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!connected(n, edges, i))
            out.push_back(i);
    return out;
}

inline EdgeList canonical(std::size_t n, const EdgeList& edges)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeList best;
    bool have = false;
    do {
        EdgeList e;
        for (auto [a, b] : edges)
            e.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
        std::sort(e.begin(), e.end());
        if (!have || e < best) {
            best = e;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Isomorphism classes of connected multigraphs with loops, exactly `edges`
/// edges, on exactly `n` vertices: every multiset of vertex pairs, canonized
/// over all n! relabelings.
inline std::set<EdgeList> connected_multigraphs(std::size_t n, std::size_t edges)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            pairs.emplace_back(a, b);
    std::set<EdgeList> out;
    EdgeList cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (cur.size() == edges) {
            if (connected(n, cur))
                out.insert(canonical(n, cur));
            return;
        }
        for (std::size_t i = from; i < pairs.size(); ++i) {
            cur.push_back(pairs[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// Integer matrices

using Mat = std::vector<std::vector<mpz_class>>;

inline mpz_class det(const Mat& m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    mpz_class total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(row);
        }
        mpz_class term = m[0][c] * det(minor);
        total += (c % 2 == 0) ? term : mpz_class(-term);
    }
    return total;
}

/// gcd of all k x k minors (0 when all vanish).
inline mpz_class determinantal_divisor(const Mat& m, std::size_t k)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    mpz_class g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
        do {
            Mat sub;
            for (std::size_t r = 0; r < rows; ++r) {
                if (!rsel[r])
                    continue;
                std::vector<mpz_class> row;
                for (std::size_t c = 0; c < cols; ++c)
                    if (csel[c])
                        row.push_back(m[r][c]);
                sub.push_back(row);
            }
            mpz_class d = det(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return g;
}

/// Smith invariants via d_k = D_k / D_{k-1}.
inline std::vector<mpz_class> smith_invariants(const Mat& m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        mpz_class dk = determinantal_divisor(m, k);
        if (dk == 0) {
            out.push_back(0);
            prev = 0;
            continue;
        }
        out.push_back(dk / prev);
        prev = dk;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Power series

/// P(F(t), t) mod t^len with P given as coefficients[i][j] of x^i t^j.
inline std::vector<mpz_class> substitute(const std::vector<std::vector<mpz_class>>& p,
                                         const std::vector<mpz_class>& f)
{
    const std::size_t len = f.size();
    std::vector<mpz_class> result(len, 0), power(len, 0);
    power[0] = 1; // F^0
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p[i].size(); ++j)
            for (std::size_t k = 0; k + j < len; ++k)
                result[k + j] += p[i][j] * power[k];
        std::vector<mpz_class> next(len, 0);
        for (std::size_t a = 0; a < len; ++a)
            for (std::size_t b = 0; a + b < len; ++b)
                next[a + b] += power[a] * f[b];
        power = next;
    }
    return result;
}

} // namespace oracle
