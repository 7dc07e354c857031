#pragma once

#include "gspline/decomp.hpp"
#include "gspline/dyckseries.hpp"
#include "gspline/enumerate.hpp"
#include "gspline/error.hpp"

#include "oracles.hpp"

#include <initializer_list>
#include <random>

namespace fx {

using namespace gspline;

inline Ideal ideal(const RingSpec& r, std::initializer_list<long> gens)
{
    std::vector<RingElement> g;
    for (long x : gens)
        g.emplace_back(r, Integer(x));
    return Ideal(r, g);
}

inline RingElement el(const RingSpec& r, long x)
{
    return RingElement(r, Integer(x));
}

inline Spline spline(const RingSpec& r, std::initializer_list<long> values)
{
    Spline p;
    for (long x : values)
        p.values.push_back(el(r, x));
    return p;
}

inline LabeledGraph graph(const RingSpec& r, std::vector<Ideal> labels, std::size_t n, std::vector<Edge> edges)
{
    return LabeledGraph(r, std::move(labels), n, std::move(edges));
}

inline LabeledGraph path(const RingSpec& r, std::vector<Ideal> labels, const std::vector<std::size_t>& edge_labels)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edge_labels.size(); ++i)
        edges.push_back({i, i + 1, edge_labels[i]});
    return graph(r, std::move(labels), edge_labels.size() + 1, edges);
}

inline LabeledGraph cycle(const RingSpec& r, std::vector<Ideal> labels, const std::vector<std::size_t>& edge_labels)
{
    const std::size_t k = edge_labels.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < k; ++i)
        edges.push_back({i, (i + 1) % k, edge_labels[i]});
    return graph(r, std::move(labels), k, edges);
}

/// Scalar residues of a finite scalar ring element list.
inline oracle::Tuple residues(const Spline& p)
{
    oracle::Tuple t;
    for (const auto& x : p.values)
        t.push_back(x.value().get_si());
    return t;
}

/// The same graph described for the brute-force oracles (scalar rings only).
inline std::vector<oracle::SmallEdge> small_edges(const LabeledGraph& g)
{
    std::vector<oracle::SmallEdge> out;
    for (const Edge& e : g.edges()) {
        std::vector<long> gens;
        for (const auto& x : g.labels()[e.label].generators())
            gens.push_back(x.value().get_si());
        out.push_back({e.a, e.b, gens});
    }
    return out;
}

/// Integers in [-bound, bound] cast into the ring (coefficient-wise for polynomials).
inline RingElement random_element(const RingSpec& r, std::mt19937& rng, long bound = 3)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    if (r.kind() != RingKind::TruncatedPoly)
        return el(r, d(rng));
    RatVector c;
    for (std::size_t i = 0; i < r.additive_dim(); ++i)
        c.emplace_back(Rational(d(rng)));
    return RingElement::from_coordinates(r, c);
}

inline Spline random_combination(const RingSpec& r, std::size_t n, const std::vector<Spline>& gens, std::mt19937& rng)
{
    Spline p = zero_spline(r, n);
    for (const auto& g : gens)
        p = p + random_element(r, rng) * g;
    return p;
}

} // namespace fx
