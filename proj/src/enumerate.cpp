#include "gspline/enumerate.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gspline {

namespace {

std::vector<std::pair<Vertex, Vertex>> relabel(const GraphShape& s, const std::vector<Vertex>& perm)
{
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(s.edges.size());
    for (auto [a, b] : s.edges) {
        Vertex x = perm[a], y = perm[b];
        out.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

GraphShape canonical_shape(const GraphShape& shape)
{
    const std::size_t n = shape.vertices;
    std::vector<std::pair<std::size_t, std::size_t>> key(n, {0, 0});
    for (auto [a, b] : shape.edges) {
        if (a >= n || b >= n)
            throw Error(ErrorKind::InvalidGraph, "shape edge endpoint out of range");
        key[a].first++;
        key[b].first++;
        if (a == b)
            key[a].second++;
    }
    // Classes ordered by descending key; new ids are assigned class by class.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vertex>, std::greater<>> classes;
    for (Vertex v = 0; v < n; ++v)
        classes[key[v]].push_back(v);
    std::vector<std::vector<Vertex>> groups;
    for (auto& [k, vs] : classes)
        groups.push_back(vs);

    std::vector<Vertex> perm(n);
    std::vector<std::pair<Vertex, Vertex>> best;
    bool have = false;
    // Odometer over the permutations of each group.
    std::function<void(std::size_t, Vertex)> rec = [&](std::size_t gi, Vertex next_id) {
        if (gi == groups.size()) {
            auto cand = relabel(shape, perm);
            if (!have || cand < best) {
                best = std::move(cand);
                have = true;
            }
            return;
        }
        std::vector<Vertex> g = groups[gi];
        std::sort(g.begin(), g.end());
        do {
            for (std::size_t i = 0; i < g.size(); ++i)
                perm[g[i]] = next_id + i;
            rec(gi + 1, next_id + g.size());
        } while (std::next_permutation(g.begin(), g.end()));
    };
    rec(0, 0);
    return GraphShape{n, best};
}

std::vector<GraphShape> enumerate_connected_multigraphs(std::size_t max_edges, std::optional<long> max_genus,
                                                        std::optional<std::size_t> max_vertices)
{
    auto genus_of = [](const GraphShape& s) {
        return static_cast<long>(s.edges.size()) - static_cast<long>(s.vertices) + 1;
    };
    auto admissible = [&](const GraphShape& s) {
        return (!max_genus || genus_of(s) <= *max_genus) && (!max_vertices || s.vertices <= *max_vertices);
    };

    std::vector<GraphShape> all;
    std::vector<GraphShape> level{GraphShape{1, {}}};
    all.push_back(level.front());
    for (std::size_t e = 1; e <= max_edges; ++e) {
        std::set<GraphShape> next;
        for (const GraphShape& s : level) {
            for (Vertex a = 0; a < s.vertices; ++a) {
                for (Vertex b = a; b <= s.vertices; ++b) {
                    GraphShape t = s;
                    if (b == s.vertices)
                        t.vertices++;
                    t.edges.emplace_back(a, b);
                    if (admissible(t))
                        next.insert(canonical_shape(t));
                }
            }
        }
        level.assign(next.begin(), next.end());
        std::sort(level.begin(), level.end(), [](const GraphShape& x, const GraphShape& y) {
            if (x.vertices != y.vertices)
                return x.vertices < y.vertices;
            return x.edges < y.edges;
        });
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

LabeledGraph label_shape(const GraphShape& shape, const RingSpec& ring, const std::vector<Ideal>& labels,
                         const std::vector<std::size_t>& edge_labels)
{
    if (edge_labels.size() != shape.edges.size())
        throw Error(ErrorKind::Shape, "expected " + std::to_string(shape.edges.size()) + " edge labels, got " +
                                          std::to_string(edge_labels.size()));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < shape.edges.size(); ++i)
        edges.push_back({shape.edges[i].first, shape.edges[i].second, edge_labels[i]});
    return LabeledGraph(ring, labels, shape.vertices, std::move(edges));
}

std::vector<LabeledGraph> all_labelings(const GraphShape& shape, const RingSpec& ring, const std::vector<Ideal>& labels)
{
    std::vector<LabeledGraph> out;
    if (labels.empty())
        return shape.edges.empty() ? std::vector<LabeledGraph>{label_shape(shape, ring, labels, {})} : out;
    std::vector<std::size_t> idx(shape.edges.size(), 0);
    while (true) {
        out.push_back(label_shape(shape, ring, labels, idx));
        std::size_t i = idx.size();
        while (i > 0 && ++idx[i - 1] == labels.size())
            idx[--i] = 0;
        if (i == 0)
            break;
    }
    return out;
}

} // namespace gspline
