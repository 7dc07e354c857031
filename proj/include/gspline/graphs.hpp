#pragma once

#include "gspline/rings.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gspline {

using Vertex = std::size_t;

struct Edge {
    Vertex a;
    Vertex b;
    std::size_t label; // index into LabeledGraph::labels()

    bool is_loop() const { return a == b; }
    Vertex other(Vertex v) const { return v == a ? b : a; }
    bool operator==(const Edge&) const = default;
};

/// Finite multigraph with loops whose edges carry ideals from a shared label
/// list. Vertices are 0..vertex_count()-1; edges are identified by index.
/// Connectivity is not enforced here; operations that need it check it.
class LabeledGraph {
public:
    LabeledGraph(RingSpec ring, std::vector<Ideal> labels, std::size_t vertex_count, std::vector<Edge> edges);

    const RingSpec& ring() const { return ring_; }
    const std::vector<Ideal>& labels() const { return labels_; }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const Ideal& label_of(std::size_t e) const { return labels_[edges_.at(e).label]; }

    /// Loops count twice.
    std::size_t degree(Vertex v) const;
    /// Edge indices touching v, in index order (a loop appears once).
    std::vector<std::size_t> incident_edges(Vertex v) const;

    /// Structural equality: same ring, same generator lists, same edge list.
    bool operator==(const LabeledGraph& other) const;

private:
    RingSpec ring_;
    std::vector<Ideal> labels_;
    std::size_t vertex_count_;
    std::vector<Edge> edges_;
};

bool is_connected(const LabeledGraph& g);
/// |E| - |V| + 1. Throws Disconnected.
long genus(const LabeledGraph& g);
/// Sorted indices of the bridges. Throws Disconnected.
std::vector<std::size_t> find_bridges(const LabeledGraph& g);
bool is_reduced(const LabeledGraph& g);

/// Subgraph spanned by an edge set plus listed vertices, renumbered in the
/// order given by `vertices` (which must contain every endpoint).
struct Subgraph {
    LabeledGraph graph;
    std::vector<Vertex> vertices;    // new id -> original id
    std::vector<std::size_t> edges;  // new edge index -> original edge index
};
Subgraph edge_subgraph(const LabeledGraph& g, const std::vector<Vertex>& vertices, const std::vector<std::size_t>& edges);

/// Root, spanning tree, and plane orders. Empty childOrder / extraEdgeOrder
/// mean edge index order.
struct PlaneRootedStructure {
    Vertex root = 0;
    std::vector<std::size_t> spanningTreeEdges;
    std::vector<std::vector<std::size_t>> childOrder; // per vertex: tree edges to its children
    std::vector<std::size_t> extraEdgeOrder;
};

/// Throws BadStructure when s does not fit g.
void validate_structure(const LabeledGraph& g, const PlaneRootedStructure& s);
/// Depth-first preorder from the root following childOrder.
std::vector<Vertex> depth_first_order(const LabeledGraph& g, const PlaneRootedStructure& s);
/// Spanning tree found by depth-first search from `root`, scanning edges by index.
PlaneRootedStructure default_structure(const LabeledGraph& g, Vertex root = 0);

struct EdgeImage {
    bool to_vertex; // true: the edge is contracted onto vertex `index`
    std::size_t index;
    bool operator==(const EdgeImage&) const = default;
};

struct Contraction {
    LabeledGraph domain;
    LabeledGraph codomain;
    std::vector<Vertex> vertexMap;
    std::vector<EdgeImage> edgeMap;
};

struct ContractionCheck {
    bool ok = true;
    int violatedCondition = 0; // 1..4, or 0 for malformed maps
    std::string detail;
};

ContractionCheck validate_contraction(const Contraction& c);

struct ContractionResult {
    LabeledGraph graph;
    Contraction contraction;
};

/// Collapses each component of the chosen edges to a vertex. Codomain vertices
/// are numbered by the smallest original vertex of their class; surviving
/// edges keep their relative order. Throws CycleContraction.
ContractionResult contract_edges(const LabeledGraph& g, const std::vector<std::size_t>& edges);
Contraction identity_contraction(const LabeledGraph& g);
/// c2 after c1. Throws NotComposable unless codomain(c1) == domain(c2).
Contraction compose_contractions(const Contraction& c2, const Contraction& c1);

struct GraphIsomorphism {
    std::vector<Vertex> vertexMap;     // vertex of the first graph -> vertex of the second
    std::vector<std::size_t> edgeMap;  // edge of the first graph -> edge of the second
};

/// Brute-force search over vertex permutations. With respect_labels the edge
/// labels must agree as ideals.
std::optional<GraphIsomorphism> find_isomorphism(const LabeledGraph& g, const LabeledGraph& h, bool respect_labels = false);

enum class ReducedShape { Point, Loop, FigureEight, Theta, Other };
std::string_view to_string(ReducedShape shape);

struct ReducedClassification {
    ReducedShape shape;
    // Isomorphism onto the model graph (point, loop, figure-eight, or theta
    // with vertex 0 first) when the shape is not Other.
    std::optional<GraphIsomorphism> witness;
};

ReducedClassification classify_reduced(const LabeledGraph& g);

} // namespace gspline
