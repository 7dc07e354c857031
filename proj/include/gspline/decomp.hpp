#pragma once

#include "gspline/splinecore.hpp"

namespace gspline {

// ---------------------------------------------------------------------------
// One-point unions

/// G = G1 v G2 glued at `cutVertex`. Both subgraphs number the cut vertex 0
/// and the remaining vertices in increasing original id.
struct OnePointUnion {
    Vertex cutVertex;
    Subgraph g1;
    Subgraph g2;
    SplineModule module1; // Spl(G1)
    SplineModule based2;  // Spl(G2; cut vertex)
    std::vector<Spline> generators; // phi1*(module1) then phi2*(based2), on G
};

/// Splits at v: G1 is v with the component of G - v holding the smallest
/// other vertex (plus every loop at v); G2 is the rest. Throws NotCutVertex.
OnePointUnion one_point_union_decompose(const LabeledGraph& g, Vertex v);
/// Splits with G1 given by its edge set; G2 may be the single vertex v.
OnePointUnion one_point_union_decompose(const LabeledGraph& g, Vertex v, const std::vector<std::size_t>& g1_edges);

/// phi_i*: extends a spline on a side of the union to G by the value at the cut vertex.
Spline extend_from_side(const LabeledGraph& g, const Subgraph& side, const Spline& q);
/// rho_i: restriction to a side.
Spline restrict_to_side(const Subgraph& side, const Spline& p);

struct WedgeBasis {
    std::vector<Spline> basis;
    std::vector<Vertex> order; // G1 vertices in G1 order, then G2 minus the cut vertex
};

/// phi1*(B1) together with phi2*(B2 - {p^v}), where p^v is the unique element
/// of B2 nonzero at the cut vertex. B_i and the side orders use subgraph
/// numbering; an empty order means the natural one, and order2 must start at
/// the cut vertex. Throws BadOrder.
WedgeBasis wedge_flow_up_basis(const LabeledGraph& g, const OnePointUnion& u, const std::vector<Spline>& b1,
                               const std::vector<Spline>& b2, std::vector<Vertex> order1 = {},
                               std::vector<Vertex> order2 = {});

// ---------------------------------------------------------------------------
// Bridge paths and degree-2 paths

struct BridgePathDecomposition {
    std::vector<Vertex> path;              // u = path.front() ... u' = path.back()
    std::vector<std::size_t> pathEdges;
    Subgraph left;                         // side containing u (u numbered 0)
    Subgraph pathGraph;                    // the path, u numbered 0
    Subgraph right;                        // side containing u' (u' numbered 0)
    SplineModule leftModule;               // Spl(left)
    SplineModule pathModule;               // Spl(P; u)
    SplineModule rightModule;              // Spl(right; u')
    std::vector<Spline> generators;        // lifted to G in the order left, path, right
};

/// `edges` walk from `start`; each must be a bridge and interior vertices must
/// have degree 2. Throws NotABridgePath.
BridgePathDecomposition bridge_path_decompose(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges);

struct PathContraction {
    LabeledGraph contracted;               // interior removed, new edge appended last
    std::vector<Vertex> path;              // v0 .. vk in G ids
    std::vector<std::size_t> pathEdges;
    std::vector<Vertex> vertexMap;         // G -> contracted; interior vertices go to the image of vk
    std::vector<bool> removed;             // interior vertices of the path
    std::size_t newEdge;
    bool labelAppended = false;            // the summed label was not already in the label list
    LabeledGraph cycle;                    // C_k: vertex i is v_i, v_k identified with v0
    SplineModule kernel;                   // Spl(C_k; 0)
};

/// Replaces the path by one edge v0 vk labeled with the sum of the path
/// labels (reusing an equal label when present). Throws NotDegreeTwoPath.
PathContraction contract_degree2_path(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges);
/// rho: restriction to the surviving vertices.
Spline restrict_through_path(const PathContraction& c, const Spline& p);
/// p_{v_i} = q_{v0} + r_1 + ... + r_i with q_{vk} - q_{v0} = r_1 + ... + r_k, r_i in the i-th label.
Spline lift_through_path(const PathContraction& c, const Spline& q);

// ---------------------------------------------------------------------------
// Genus reduction

enum class ReductionStepKind { TreeContraction, BridgePathContraction, NonBridgePathContraction };
std::string_view to_string(ReductionStepKind kind);

struct ReductionStep {
    ReductionStepKind kind;
    LabeledGraph before;
    LabeledGraph after;
    Vertex base;                           // tree root, surviving bridge vertex, or path start v0 (before ids)
    std::vector<std::size_t> edges;        // contracted edges in before ids; path order for paths
    std::vector<Vertex> vertexMap;         // before -> after
    std::vector<bool> removed;             // before vertices deleted by a non-bridge path step
    std::vector<Vertex> attachment;        // bridge steps: component vertex each before-vertex hangs from
    LabeledGraph part;                     // T, P, or C_k; vertex 0 is the base
    std::vector<Vertex> partVertices;      // part vertex -> before vertex
    std::vector<Vertex> representatives;   // before vertex -> original vertex
    std::optional<std::size_t> newEdge;    // non-bridge steps: index in `after`
    bool labelOutsideOriginal = false;     // the new edge label is not in the original label set
};

struct ReductionResult {
    LabeledGraph original;
    LabeledGraph reduced;
    std::vector<ReductionStep> steps;
    std::vector<Vertex> composedVertexMap; // original -> reduced
    std::vector<Vertex> representatives;   // reduced vertex -> original vertex
    ReducedClassification classification;
    bool labelsLeftOriginal = false;
};

/// Throws Disconnected.
ReductionResult reduce_graph(const LabeledGraph& g);

/// Minimal step description sufficient to re-run a reduction.
struct StepRecord {
    ReductionStepKind kind;
    Vertex base;
    std::vector<std::size_t> edges;
};
/// Applies the recorded steps to `g` and returns the final graph.
LabeledGraph replay_reduction(const LabeledGraph& g, const std::vector<StepRecord>& steps);

/// Spline on `step.before` -> spline on `step.after`.
Spline project_step(const ReductionStep& step, const Spline& p);
/// Section: spline on `step.after` -> spline on `step.before`.
Spline lift_step(const ReductionStep& step, const Spline& q);
/// Kernel element: spline on `step.part` (vanishing at 0) -> spline on `step.before`.
Spline extend_kernel_element(const ReductionStep& step, const Spline& k);

struct KernelPart {
    ReductionStepKind kind;
    std::size_t step;
    LabeledGraph graph;                    // part graph
    std::vector<Vertex> originalVertices;  // part vertex -> original vertex
    SplineModule module;                   // based at part vertex 0
    std::vector<Spline> liftedGenerators;  // on the original graph
    bool flowUp = false;                   // generators form a flow-up generating set in depth-first order
};

struct SplineDecomposition {
    ReductionResult reduction;
    SplineModule reducedModule;
    std::vector<Spline> reducedLifted;
    std::vector<KernelPart> kernelParts;
    std::vector<Spline> liftedGenerators;  // reducedLifted then every part's lifted generators
    std::size_t totalSize = 0;             // size of Spl(G)
    bool additive = false;                 // totalSize = size(Spl(G_r)) + sum of part sizes
    bool kernelsVanish = false;            // lifted kernel generators project to zero on G_r
    bool generates = false;                // liftedGenerators and Spl(G) have the same span
};

SplineDecomposition spline_decomposition(const LabeledGraph& g);

} // namespace gspline
