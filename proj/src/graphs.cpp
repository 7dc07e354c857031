#include "gspline/graphs.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gspline {

LabeledGraph::LabeledGraph(RingSpec ring, std::vector<Ideal> labels, std::size_t vertex_count, std::vector<Edge> edges)
    : ring_(std::move(ring)), labels_(std::move(labels)), vertex_count_(vertex_count), edges_(std::move(edges))
{
    if (vertex_count_ == 0)
        throw Error(ErrorKind::InvalidGraph, "a graph needs at least one vertex");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (!(labels_[i].ring() == ring_))
            throw Error(ErrorKind::RingMismatch, "label " + std::to_string(i) + " is over " +
                                                     labels_[i].ring().describe() + ", graph is over " + ring_.describe());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.a >= vertex_count_ || ed.b >= vertex_count_)
            throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has an endpoint outside 0.." +
                                                     std::to_string(vertex_count_ - 1));
        if (ed.label >= labels_.size())
            throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has label index " +
                                                     std::to_string(ed.label) + " but only " +
                                                     std::to_string(labels_.size()) + " labels exist");
    }
}

std::size_t LabeledGraph::degree(Vertex v) const
{
    std::size_t d = 0;
    for (const Edge& e : edges_)
        d += (e.a == v) + (e.b == v);
    return d;
}

std::vector<std::size_t> LabeledGraph::incident_edges(Vertex v) const
{
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edges_[e].a == v || edges_[e].b == v)
            out.push_back(e);
    return out;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const
{
    if (!(ring_ == other.ring_) || vertex_count_ != other.vertex_count_ || edges_ != other.edges_ ||
        labels_.size() != other.labels_.size())
        return false;
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].generators() != other.labels_[i].generators())
            return false;
    return true;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const LabeledGraph& g)
{
    std::vector<std::vector<std::size_t>> adj(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        adj[g.edge(e).a].push_back(e);
        if (!g.edge(e).is_loop())
            adj[g.edge(e).b].push_back(e);
    }
    return adj;
}

void require_connected(const LabeledGraph& g)
{
    if (!is_connected(g))
        throw Error(ErrorKind::Disconnected, "graph is not connected");
}

} // namespace

bool is_connected(const LabeledGraph& g)
{
    auto adj = adjacency(g);
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (std::size_t e : adj[v]) {
            Vertex w = g.edge(e).other(v);
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.vertex_count();
}

long genus(const LabeledGraph& g)
{
    require_connected(g);
    return static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) + 1;
}

std::vector<std::size_t> find_bridges(const LabeledGraph& g)
{
    require_connected(g);
    auto adj = adjacency(g);
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> disc(n, 0), low(n, 0);
    std::vector<bool> visited(n, false);
    std::size_t timer = 0;
    std::vector<std::size_t> bridges;

    std::function<void(Vertex, std::size_t)> dfs = [&](Vertex v, std::size_t parent_edge) {
        visited[v] = true;
        disc[v] = low[v] = timer++;
        for (std::size_t e : adj[v]) {
            if (e == parent_edge || g.edge(e).is_loop())
                continue;
            Vertex w = g.edge(e).other(v);
            if (visited[w]) {
                low[v] = std::min(low[v], disc[w]);
            } else {
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v])
                    bridges.push_back(e);
            }
        }
    };
    dfs(0, static_cast<std::size_t>(-1));
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

bool is_reduced(const LabeledGraph& g)
{
    if (g.vertex_count() == 1)
        return true;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 2)
            return false;
    return find_bridges(g).empty();
}

Subgraph edge_subgraph(const LabeledGraph& g, const std::vector<Vertex>& vertices, const std::vector<std::size_t>& edges)
{
    std::vector<std::size_t> index(g.vertex_count(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= g.vertex_count() || index[vertices[i]] != static_cast<std::size_t>(-1))
            throw Error(ErrorKind::BadVertex, "subgraph vertex list is invalid");
        index[vertices[i]] = i;
    }
    std::vector<Edge> out;
    for (std::size_t e : edges) {
        const Edge& ed = g.edge(e);
        if (index[ed.a] == static_cast<std::size_t>(-1) || index[ed.b] == static_cast<std::size_t>(-1))
            throw Error(ErrorKind::BadVertex, "subgraph edge " + std::to_string(e) + " leaves the vertex list");
        out.push_back({index[ed.a], index[ed.b], ed.label});
    }
    return {LabeledGraph(g.ring(), g.labels(), vertices.size(), std::move(out)), vertices, edges};
}

// ---------------------------------------------------------------------------
// Plane rooted structure

void validate_structure(const LabeledGraph& g, const PlaneRootedStructure& s)
{
    const std::size_t n = g.vertex_count();
    auto bad = [](const std::string& msg) { throw Error(ErrorKind::BadStructure, msg); };
    if (s.root >= n)
        bad("root " + std::to_string(s.root) + " is not a vertex");
    if (s.spanningTreeEdges.size() != n - 1)
        bad("spanning tree must have " + std::to_string(n - 1) + " edges");
    std::vector<bool> in_tree(g.edge_count(), false);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t e : s.spanningTreeEdges) {
        if (e >= g.edge_count() || in_tree[e])
            bad("spanning tree edge list is invalid");
        in_tree[e] = true;
        std::size_t ra = find(g.edge(e).a), rb = find(g.edge(e).b);
        if (ra == rb)
            bad("spanning tree edges contain a cycle");
        parent[ra] = rb;
    }
    if (!s.extraEdgeOrder.empty()) {
        std::vector<std::size_t> extra = s.extraEdgeOrder, expected;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            if (!in_tree[e])
                expected.push_back(e);
        std::sort(extra.begin(), extra.end());
        if (extra != expected)
            bad("extra edge order must list exactly the non-tree edges");
    }
    if (s.childOrder.empty())
        return;
    if (s.childOrder.size() != n)
        bad("child order needs one entry per vertex");
    // Children of v are the tree edges leading away from the root.
    std::vector<std::vector<std::size_t>> children(n);
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{s.root};
    seen[s.root] = true;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (std::size_t e : s.spanningTreeEdges) {
            const Edge& ed = g.edge(e);
            if (ed.a != v && ed.b != v)
                continue;
            Vertex w = ed.other(v);
            if (seen[w])
                continue;
            seen[w] = true;
            children[v].push_back(e);
            stack.push_back(w);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::size_t> given = s.childOrder[v];
        std::sort(given.begin(), given.end());
        std::sort(children[v].begin(), children[v].end());
        if (given != children[v])
            bad("child order at vertex " + std::to_string(v) + " does not list its tree children");
    }
}

std::vector<Vertex> depth_first_order(const LabeledGraph& g, const PlaneRootedStructure& s)
{
    validate_structure(g, s);
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::size_t>> tree_adj(n);
    for (std::size_t e : s.spanningTreeEdges) {
        tree_adj[g.edge(e).a].push_back(e);
        tree_adj[g.edge(e).b].push_back(e);
    }
    for (auto& list : tree_adj)
        std::sort(list.begin(), list.end());
    std::vector<Vertex> order;
    std::vector<bool> seen(n, false);
    std::function<void(Vertex)> visit = [&](Vertex v) {
        seen[v] = true;
        order.push_back(v);
        const auto& kids = s.childOrder.empty() ? tree_adj[v] : s.childOrder[v];
        for (std::size_t e : kids) {
            Vertex w = g.edge(e).other(v);
            if (!seen[w])
                visit(w);
        }
    };
    visit(s.root);
    return order;
}

PlaneRootedStructure default_structure(const LabeledGraph& g, Vertex root)
{
    require_connected(g);
    if (root >= g.vertex_count())
        throw Error(ErrorKind::BadVertex, "root " + std::to_string(root) + " is not a vertex");
    auto adj = adjacency(g);
    PlaneRootedStructure s;
    s.root = root;
    std::vector<bool> seen(g.vertex_count(), false);
    std::function<void(Vertex)> visit = [&](Vertex v) {
        seen[v] = true;
        for (std::size_t e : adj[v]) {
            Vertex w = g.edge(e).other(v);
            if (!seen[w]) {
                s.spanningTreeEdges.push_back(e);
                visit(w);
            }
        }
    };
    visit(root);
    return s;
}

// ---------------------------------------------------------------------------
// Contractions

ContractionCheck validate_contraction(const Contraction& c)
{
    const LabeledGraph& dom = c.domain;
    const LabeledGraph& cod = c.codomain;
    auto fail = [](int condition, std::string detail) { return ContractionCheck{false, condition, std::move(detail)}; };

    if (c.vertexMap.size() != dom.vertex_count() || c.edgeMap.size() != dom.edge_count())
        return fail(0, "map sizes do not match the domain");
    if (!(dom.ring() == cod.ring()))
        return fail(0, "domain and codomain rings differ");
    for (Vertex w : c.vertexMap)
        if (w >= cod.vertex_count())
            return fail(0, "vertex image out of range");
    for (const EdgeImage& im : c.edgeMap)
        if (im.index >= (im.to_vertex ? cod.vertex_count() : cod.edge_count()))
            return fail(0, "edge image out of range");

    // (1) surjective on vertices
    std::vector<bool> hit(cod.vertex_count(), false);
    for (Vertex w : c.vertexMap)
        hit[w] = true;
    for (Vertex w = 0; w < cod.vertex_count(); ++w)
        if (!hit[w])
            return fail(1, "codomain vertex " + std::to_string(w) + " has no preimage");

    // (2) endpoints map to endpoints
    for (std::size_t e = 0; e < dom.edge_count(); ++e) {
        const Edge& ed = dom.edge(e);
        Vertex fa = c.vertexMap[ed.a], fb = c.vertexMap[ed.b];
        const EdgeImage& im = c.edgeMap[e];
        if (im.to_vertex) {
            if (fa != im.index || fb != im.index)
                return fail(2, "edge " + std::to_string(e) + " is contracted but its ends map elsewhere");
        } else {
            const Edge& f = cod.edge(im.index);
            bool match = (fa == f.a && fb == f.b) || (fa == f.b && fb == f.a);
            if (!match)
                return fail(2, "edge " + std::to_string(e) + " ends do not map to the ends of edge " +
                                   std::to_string(im.index));
        }
    }

    // (3) surviving edges biject with equal labels
    std::vector<int> preimages(cod.edge_count(), 0);
    for (std::size_t e = 0; e < dom.edge_count(); ++e) {
        const EdgeImage& im = c.edgeMap[e];
        if (im.to_vertex)
            continue;
        if (++preimages[im.index] > 1)
            return fail(3, "codomain edge " + std::to_string(im.index) + " has several preimages");
        if (!ideal_equal(dom.label_of(e), cod.label_of(im.index)))
            return fail(3, "edge " + std::to_string(e) + " label " + dom.label_of(e).to_string() +
                               " differs from image label " + cod.label_of(im.index).to_string());
    }
    for (std::size_t f = 0; f < cod.edge_count(); ++f)
        if (preimages[f] == 0)
            return fail(3, "codomain edge " + std::to_string(f) + " has no preimage");

    // (4) each vertex preimage, with the edges contracted onto it, is a tree
    std::vector<std::size_t> vcount(cod.vertex_count(), 0), ecount(cod.vertex_count(), 0);
    std::vector<std::size_t> parent(dom.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (Vertex v = 0; v < dom.vertex_count(); ++v)
        ++vcount[c.vertexMap[v]];
    for (std::size_t e = 0; e < dom.edge_count(); ++e) {
        if (!c.edgeMap[e].to_vertex)
            continue;
        ++ecount[c.edgeMap[e].index];
        std::size_t ra = find(dom.edge(e).a), rb = find(dom.edge(e).b);
        if (ra == rb)
            return fail(4, "contracting edge " + std::to_string(e) + " closes a cycle");
        parent[ra] = rb;
    }
    for (Vertex w = 0; w < cod.vertex_count(); ++w)
        if (ecount[w] + 1 != vcount[w])
            return fail(4, "preimage of vertex " + std::to_string(w) + " is not connected");
    return {};
}

ContractionResult contract_edges(const LabeledGraph& g, const std::vector<std::size_t>& edges)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::vector<bool> chosen(g.edge_count(), false);
    for (std::size_t e : edges) {
        if (e >= g.edge_count())
            throw Error(ErrorKind::InvalidGraph, "edge index " + std::to_string(e) + " out of range");
        if (chosen[e])
            continue;
        chosen[e] = true;
        if (g.edge(e).is_loop())
            throw Error(ErrorKind::CycleContraction, "edge " + std::to_string(e) + " is a loop");
        std::size_t ra = find(g.edge(e).a), rb = find(g.edge(e).b);
        if (ra == rb)
            throw Error(ErrorKind::CycleContraction, "edge " + std::to_string(e) + " closes a cycle");
        parent[ra] = rb;
    }
    std::vector<std::size_t> class_id(n, static_cast<std::size_t>(-1));
    std::vector<Vertex> vmap(n);
    std::size_t next = 0;
    for (Vertex v = 0; v < n; ++v) {
        std::size_t r = find(v);
        if (class_id[r] == static_cast<std::size_t>(-1))
            class_id[r] = next++;
        vmap[v] = class_id[r];
    }
    std::vector<Edge> out;
    std::vector<EdgeImage> emap(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (chosen[e]) {
            emap[e] = {true, vmap[ed.a]};
        } else {
            emap[e] = {false, out.size()};
            out.push_back({vmap[ed.a], vmap[ed.b], ed.label});
        }
    }
    LabeledGraph cod(g.ring(), g.labels(), next, std::move(out));
    return {cod, Contraction{g, cod, std::move(vmap), std::move(emap)}};
}

Contraction identity_contraction(const LabeledGraph& g)
{
    std::vector<Vertex> vmap(g.vertex_count());
    std::iota(vmap.begin(), vmap.end(), 0);
    std::vector<EdgeImage> emap(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        emap[e] = {false, e};
    return {g, g, std::move(vmap), std::move(emap)};
}

Contraction compose_contractions(const Contraction& c2, const Contraction& c1)
{
    if (!(c1.codomain == c2.domain))
        throw Error(ErrorKind::NotComposable, "codomain of the first contraction is not the domain of the second");
    if (c2.vertexMap.size() != c2.domain.vertex_count() || c2.edgeMap.size() != c2.domain.edge_count() ||
        c1.vertexMap.size() != c1.domain.vertex_count() || c1.edgeMap.size() != c1.domain.edge_count())
        throw Error(ErrorKind::NotComposable, "contraction maps are malformed");
    std::vector<Vertex> vmap(c1.domain.vertex_count());
    for (Vertex v = 0; v < vmap.size(); ++v)
        vmap[v] = c2.vertexMap.at(c1.vertexMap[v]);
    std::vector<EdgeImage> emap(c1.domain.edge_count());
    for (std::size_t e = 0; e < emap.size(); ++e) {
        const EdgeImage& im = c1.edgeMap[e];
        emap[e] = im.to_vertex ? EdgeImage{true, c2.vertexMap.at(im.index)} : c2.edgeMap.at(im.index);
    }
    return {c1.domain, c2.codomain, std::move(vmap), std::move(emap)};
}

// ---------------------------------------------------------------------------
// Isomorphism and reduced-graph classification

std::optional<GraphIsomorphism> find_isomorphism(const LabeledGraph& g, const LabeledGraph& h, bool respect_labels)
{
    const std::size_t n = g.vertex_count();
    if (n != h.vertex_count() || g.edge_count() != h.edge_count())
        return std::nullopt;
    auto loops = [](const LabeledGraph& x, Vertex v) {
        std::size_t c = 0;
        for (const Edge& e : x.edges())
            c += e.is_loop() && e.a == v;
        return c;
    };
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool plausible = true;
        for (Vertex v = 0; v < n && plausible; ++v)
            plausible = g.degree(v) == h.degree(perm[v]) && loops(g, v) == loops(h, perm[v]);
        if (!plausible)
            continue;
        std::vector<bool> used(h.edge_count(), false);
        std::vector<std::size_t> emap(g.edge_count());
        bool ok = true;
        for (std::size_t e = 0; e < g.edge_count() && ok; ++e) {
            Vertex a = perm[g.edge(e).a], b = perm[g.edge(e).b];
            ok = false;
            for (std::size_t f = 0; f < h.edge_count(); ++f) {
                if (used[f])
                    continue;
                const Edge& hf = h.edge(f);
                if (!((hf.a == a && hf.b == b) || (hf.a == b && hf.b == a)))
                    continue;
                if (respect_labels && !ideal_equal(g.label_of(e), h.label_of(f)))
                    continue;
                used[f] = true;
                emap[e] = f;
                ok = true;
                break;
            }
        }
        if (ok)
            return GraphIsomorphism{perm, emap};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

std::string_view to_string(ReducedShape shape)
{
    switch (shape) {
    case ReducedShape::Point: return "point";
    case ReducedShape::Loop: return "loop";
    case ReducedShape::FigureEight: return "figure-eight";
    case ReducedShape::Theta: return "theta";
    case ReducedShape::Other: return "other";
    }
    return "other";
}

ReducedClassification classify_reduced(const LabeledGraph& g)
{
    struct Model {
        ReducedShape shape;
        std::size_t vertices;
        std::vector<Edge> edges;
    };
    const std::vector<Model> models = {
        {ReducedShape::Point, 1, {}},
        {ReducedShape::Loop, 1, {{0, 0, 0}}},
        {ReducedShape::FigureEight, 1, {{0, 0, 0}, {0, 0, 0}}},
        {ReducedShape::Theta, 2, {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}}},
    };
    for (const Model& m : models) {
        if (m.vertices != g.vertex_count() || m.edges.size() != g.edge_count())
            continue;
        LabeledGraph model(g.ring(), g.labels(), m.vertices, m.edges);
        if (auto iso = find_isomorphism(g, model))
            return {m.shape, iso};
    }
    return {ReducedShape::Other, std::nullopt};
}

} // namespace gspline
