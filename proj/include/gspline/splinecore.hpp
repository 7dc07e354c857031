#pragma once

#include "gspline/graphs.hpp"

#include <variant>

namespace gspline {

struct Spline {
    std::vector<RingElement> values; // indexed by vertex
    bool operator==(const Spline&) const = default;
};

Spline constant_spline(const RingSpec& ring, std::size_t vertex_count, const RingElement& c);
Spline zero_spline(const RingSpec& ring, std::size_t vertex_count);
Spline operator+(const Spline& a, const Spline& b);
Spline operator-(const Spline& a, const Spline& b);
Spline operator*(const RingElement& r, const Spline& p);
bool is_zero(const Spline& p);
std::string to_string(const Spline& p);

struct FieldDim {
    std::size_t dimension; // over the base field
};
struct FreeRank {
    std::size_t rank;
};
struct InvariantFactors {
    std::vector<Integer> factors; // d_1 | d_2 | ..., all > 1
};
using ModuleStructure = std::variant<FieldDim, FreeRank, InvariantFactors>;

/// A computed spline module. Over Z the generators are an HNF lattice basis,
/// over F_p and truncated polynomials a reduced echelon basis over the base
/// field; over Z/nZ they generate without any minimality claim.
struct SplineModule {
    LabeledGraph graph;
    std::vector<Vertex> based; // vertices forced to vanish
    std::vector<Spline> generators;
    ModuleStructure structure;
    std::size_t zRank = 0;

    /// Dimension over fields, free rank over Z, number of invariant factors over Z/nZ.
    std::size_t size() const { return zRank; }
};

/// Throws Shape when the length does not match. Loops impose no condition.
bool is_spline(const LabeledGraph& g, const std::vector<RingElement>& values);
bool is_spline(const LabeledGraph& g, const Spline& p);

SplineModule compute_spline_module(const LabeledGraph& g);
/// Splines vanishing on `based`. Throws BadVertex.
SplineModule based_spline_module(const LabeledGraph& g, const std::vector<Vertex>& based);

/// For Z/p^k: dim over F_p of the module tensored with Z/pZ, computed from
/// lattice indices independently of the invariant factors.
std::optional<std::size_t> mod_p_reduction_dimension(const SplineModule& m);

struct ConstantSplit {
    Spline constantPart; // p_v * 1
    Spline basedPart;    // p - p_v * 1
};
ConstantSplit split_spline(const Spline& p, Vertex v);

struct ModuleSplit {
    std::vector<Spline> constantPart;
    std::vector<Spline> basedPart;
};
ModuleSplit split_off_constants(const SplineModule& m, Vertex v);

/// Pulls q back along c: values[w] = q[vertexMap(w)]. Throws BadContraction.
Spline vertex_expansion(const Contraction& c, const Spline& q);

bool is_flow_up(const Spline& p, const std::vector<Vertex>& order, Vertex v);
/// True when p vanishes before its first nonzero entry in `order` (always for zero).
bool is_flow_up_somewhere(const Spline& p, const std::vector<Vertex>& order);

/// For each vertex v in `order`, the values at v of the generators whose first
/// nonzero entry is v generate the ideal of values at v taken by splines that
/// vanish on `based` and on every vertex before v. The generators must be
/// splines vanishing on `based`.
bool is_flow_up_generating_set(const LabeledGraph& g, const std::vector<Spline>& generators,
                               const std::vector<Vertex>& order, const std::vector<Vertex>& based = {});

/// 1, then for each non-root vertex in depth-first order and each generator g
/// of the entering edge's label, g on the subtree below and 0 elsewhere.
/// Throws NotATree.
std::vector<Spline> tree_flow_up_generators(const LabeledGraph& tree, const PlaneRootedStructure& s);

struct Membership {
    bool member = false;
    std::vector<RingElement> coefficients; // p = sum coefficients[i] * generators[i]
};

/// R-linear membership of p in the span of `generators`.
Membership span_membership(const LabeledGraph& g, const std::vector<Spline>& generators, const Spline& p);
/// Throws GraphMismatch when p lives on another graph size or ring.
Membership module_membership(const SplineModule& m, const Spline& p);
/// Two-way membership of the generator lists.
bool same_span(const LabeledGraph& g, const std::vector<Spline>& a, const std::vector<Spline>& b);

struct IndicatorWitness {
    enum class Case { SingleEdge, Star };
    Case kind;
    Vertex target;
    std::vector<Contraction> contractions;
    std::vector<std::vector<RingElement>> codomainVectors; // one per contraction
    std::vector<RingElement> coefficients;                 // one per contraction
};

/// Expresses the indicator vector of u as a combination of vertex expansions
/// along contractions of g. Throws TooSmall when g has fewer than 3 vertices.
IndicatorWitness indicator_in_contraction_span(const LabeledGraph& g, Vertex u);
/// Evaluates the witness in the ambient module (one ring element per vertex).
std::vector<RingElement> replay_indicator_witness(const IndicatorWitness& w);

} // namespace gspline
