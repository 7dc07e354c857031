#pragma once

#include "gspline/graphs.hpp"

#include <utility>

namespace gspline {

/// Unlabeled connected multigraph with loops, in a canonical numbering.
struct GraphShape {
    std::size_t vertices = 1;
    std::vector<std::pair<Vertex, Vertex>> edges; // a <= b, sorted
    bool operator==(const GraphShape&) const = default;
    auto operator<=>(const GraphShape&) const = default;
};

/// Lexicographically smallest sorted edge list over vertex relabelings that
/// respect (degree, loop count) classes.
GraphShape canonical_shape(const GraphShape& shape);

/// Every connected multigraph with at most max_edges edges up to isomorphism,
/// ordered by edge count, then vertex count, then edge list. The single vertex
/// with no edges is included.
std::vector<GraphShape> enumerate_connected_multigraphs(std::size_t max_edges,
                                                        std::optional<long> max_genus = std::nullopt,
                                                        std::optional<std::size_t> max_vertices = std::nullopt);

LabeledGraph label_shape(const GraphShape& shape, const RingSpec& ring, const std::vector<Ideal>& labels,
                         const std::vector<std::size_t>& edge_labels);

/// All |labels|^|E| labelings, the first edge varying slowest.
std::vector<LabeledGraph> all_labelings(const GraphShape& shape, const RingSpec& ring, const std::vector<Ideal>& labels);

} // namespace gspline
