#include "gspline/decomp.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace gspline {

namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

// Vertices visited by following `edges` from `start`.
std::vector<Vertex> walk_path(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges, ErrorKind kind)
{
    if (start >= g.vertex_count())
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(start) + " is out of range");
    if (edges.empty())
        throw Error(kind, "path has no edges");
    std::vector<Vertex> path{start};
    for (std::size_t e : edges) {
        if (e >= g.edge_count())
            throw Error(kind, "edge " + std::to_string(e) + " is out of range");
        const Edge& ed = g.edge(e);
        if (ed.is_loop())
            throw Error(kind, "edge " + std::to_string(e) + " is a loop");
        if (ed.a != path.back() && ed.b != path.back())
            throw Error(kind, "edge " + std::to_string(e) + " does not continue the path");
        path.push_back(ed.other(path.back()));
    }
    return path;
}

// Vertex 0 first, then the rest of `members` in increasing id.
std::vector<Vertex> base_first(Vertex base, const std::vector<bool>& members)
{
    std::vector<Vertex> out{base};
    for (Vertex x = 0; x < members.size(); ++x)
        if (members[x] && x != base)
            out.push_back(x);
    return out;
}

std::vector<std::size_t> edges_within(const LabeledGraph& g, const std::vector<bool>& members)
{
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (members[g.edge(e).a] && members[g.edge(e).b])
            out.push_back(e);
    return out;
}

// Depth-first preorder from `root` over the given edges, scanning by edge index.
std::vector<Vertex> dfs_order(const LabeledGraph& g, Vertex root, const std::vector<std::size_t>& edges)
{
    std::vector<std::vector<std::size_t>> adj(g.vertex_count());
    for (std::size_t e : edges) {
        adj[g.edge(e).a].push_back(e);
        adj[g.edge(e).b].push_back(e);
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end());
    std::vector<Vertex> order;
    std::vector<bool> seen(g.vertex_count(), false);
    std::function<void(Vertex)> visit = [&](Vertex v) {
        seen[v] = true;
        order.push_back(v);
        for (std::size_t e : adj[v]) {
            Vertex w = g.edge(e).other(v);
            if (!seen[w])
                visit(w);
        }
    };
    visit(root);
    return order;
}

// Section of the restriction through a contracted degree-2 path.
Spline lift_path_values(const RingSpec& ring, std::size_t vertex_count, const std::vector<Vertex>& vertexMap,
                        const std::vector<bool>& removed, const std::vector<Vertex>& path,
                        const std::vector<Ideal>& labels, const Spline& q)
{
    Spline p = zero_spline(ring, vertex_count);
    for (Vertex x = 0; x < vertex_count; ++x)
        if (!removed[x])
            p.values[x] = q.values.at(vertexMap[x]);
    const std::size_t k = labels.size();
    if (k < 2)
        return p;
    RingElement start = q.values.at(vertexMap[path.front()]);
    auto parts = ideal_decompose(q.values.at(vertexMap[path.back()]) - start, labels);
    if (!parts)
        throw Error(ErrorKind::Shape, "values are not a spline on the contracted graph");
    RingElement acc = start;
    for (std::size_t i = 1; i < k; ++i) {
        acc = acc + (*parts)[i - 1];
        p.values[path[i]] = acc;
    }
    return p;
}

struct PathCore {
    LabeledGraph contracted;
    std::vector<Vertex> path;
    std::vector<std::size_t> pathEdges;
    std::vector<Vertex> vertexMap;
    std::vector<bool> removed;
    std::size_t newEdge;
    bool labelAppended;
    LabeledGraph cycle;
};

PathCore contract_path_core(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges)
{
    std::vector<Vertex> path = walk_path(g, start, edges, ErrorKind::NotDegreeTwoPath);
    const std::size_t k = edges.size();
    const std::size_t n = g.vertex_count();
    std::vector<bool> removed(n, false);
    for (std::size_t i = 1; i < k; ++i) {
        Vertex x = path[i];
        if (x == path.front() || x == path.back() || removed[x])
            throw Error(ErrorKind::NotDegreeTwoPath, "path revisits vertex " + std::to_string(x));
        if (g.degree(x) != 2)
            throw Error(ErrorKind::NotDegreeTwoPath, "interior vertex " + std::to_string(x) + " has degree " +
                                                         std::to_string(g.degree(x)));
        removed[x] = true;
    }

    std::vector<Edge> cycle_edges;
    for (std::size_t i = 0; i < k; ++i)
        cycle_edges.push_back({i, (i + 1) % k, g.edge(edges[i]).label});
    LabeledGraph cycle(g.ring(), g.labels(), k, cycle_edges);

    if (k == 1) {
        std::vector<Vertex> id(n);
        std::iota(id.begin(), id.end(), 0);
        return {g, path, edges, id, removed, edges.front(), false, cycle};
    }

    Ideal sum = g.label_of(edges.front());
    for (std::size_t i = 1; i < k; ++i)
        sum = ideal_sum(sum, g.label_of(edges[i]));
    std::vector<Ideal> labels = g.labels();
    std::size_t label = none;
    for (std::size_t j = 0; j < labels.size() && label == none; ++j)
        if (ideal_equal(labels[j], sum))
            label = j;
    bool appended = label == none;
    if (appended) {
        label = labels.size();
        labels.push_back(sum);
    }

    std::vector<Vertex> vmap(n, none);
    std::size_t next = 0;
    for (Vertex x = 0; x < n; ++x)
        if (!removed[x])
            vmap[x] = next++;
    for (std::size_t i = 1; i < k; ++i)
        vmap[path[i]] = vmap[path.back()];
    std::vector<bool> on_path(g.edge_count(), false);
    for (std::size_t e : edges)
        on_path[e] = true;
    std::vector<Edge> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!on_path[e])
            out.push_back({vmap[g.edge(e).a], vmap[g.edge(e).b], g.edge(e).label});
    out.push_back({vmap[path.front()], vmap[path.back()], label});
    std::size_t new_edge = out.size() - 1;
    LabeledGraph contracted(g.ring(), std::move(labels), next, std::move(out));
    return {contracted, path, edges, vmap, removed, new_edge, appended, cycle};
}

} // namespace

// ---------------------------------------------------------------------------
// One-point unions

Spline extend_from_side(const LabeledGraph& g, const Subgraph& side, const Spline& q)
{
    if (q.values.size() != side.vertices.size())
        throw Error(ErrorKind::Shape, "spline length does not match the side");
    Spline p = constant_spline(g.ring(), g.vertex_count(), q.values.front());
    for (std::size_t i = 0; i < side.vertices.size(); ++i)
        p.values[side.vertices[i]] = q.values[i];
    return p;
}

Spline restrict_to_side(const Subgraph& side, const Spline& p)
{
    Spline q;
    for (Vertex x : side.vertices)
        q.values.push_back(p.values.at(x));
    return q;
}

OnePointUnion one_point_union_decompose(const LabeledGraph& g, Vertex v, const std::vector<std::size_t>& g1_edges)
{
    const std::size_t n = g.vertex_count();
    if (v >= n)
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is out of range");
    if (!is_connected(g))
        throw Error(ErrorKind::Disconnected, "graph is not connected");
    std::vector<bool> in1(g.edge_count(), false);
    for (std::size_t e : g1_edges) {
        if (e >= g.edge_count())
            throw Error(ErrorKind::NotCutVertex, "edge " + std::to_string(e) + " is out of range");
        in1[e] = true;
    }
    std::vector<bool> v1(n, false), v2(n, false);
    v1[v] = v2[v] = true;
    std::vector<std::size_t> e1, e2;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto& side = in1[e] ? v1 : v2;
        side[g.edge(e).a] = side[g.edge(e).b] = true;
        (in1[e] ? e1 : e2).push_back(e);
    }
    for (Vertex x = 0; x < n; ++x) {
        if (x != v && v1[x] && v2[x])
            throw Error(ErrorKind::NotCutVertex, "vertex " + std::to_string(x) + " lies on both sides");
        if (!v1[x] && !v2[x])
            throw Error(ErrorKind::NotCutVertex, "vertex " + std::to_string(x) + " lies on neither side");
    }
    Subgraph g1 = edge_subgraph(g, base_first(v, v1), e1);
    Subgraph g2 = edge_subgraph(g, base_first(v, v2), e2);
    SplineModule m1 = compute_spline_module(g1.graph);
    SplineModule b2 = based_spline_module(g2.graph, {0});
    std::vector<Spline> gens;
    for (const auto& q : m1.generators) {
        Spline p = extend_from_side(g, g1, q);
        if (!(restrict_to_side(g1, p) == q))
            throw std::logic_error("restriction does not invert the extension on G1");
        gens.push_back(std::move(p));
    }
    for (const auto& q : b2.generators) {
        Spline p = extend_from_side(g, g2, q);
        if (!(restrict_to_side(g2, p) == q))
            throw std::logic_error("restriction does not invert the extension on G2");
        gens.push_back(std::move(p));
    }
    return {v, std::move(g1), std::move(g2), std::move(m1), std::move(b2), std::move(gens)};
}

OnePointUnion one_point_union_decompose(const LabeledGraph& g, Vertex v)
{
    const std::size_t n = g.vertex_count();
    if (v >= n)
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is out of range");
    if (!is_connected(g))
        throw Error(ErrorKind::Disconnected, "graph is not connected");
    if (n < 3)
        throw Error(ErrorKind::NotCutVertex, "vertex " + std::to_string(v) + " does not separate the graph");
    Vertex first = v == 0 ? 1 : 0;
    std::vector<bool> comp(n, false);
    std::vector<Vertex> stack{first};
    comp[first] = true;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (std::size_t e : g.incident_edges(x)) {
            Vertex y = g.edge(e).other(x);
            if (y == v || comp[y])
                continue;
            comp[y] = true;
            stack.push_back(y);
        }
    }
    std::size_t reached = std::count(comp.begin(), comp.end(), true);
    if (reached == n - 1)
        throw Error(ErrorKind::NotCutVertex, "vertex " + std::to_string(v) + " does not separate the graph");
    std::vector<std::size_t> e1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (comp[ed.a] || comp[ed.b] || (ed.is_loop() && ed.a == v))
            e1.push_back(e);
    }
    return one_point_union_decompose(g, v, e1);
}

WedgeBasis wedge_flow_up_basis(const LabeledGraph& g, const OnePointUnion& u, const std::vector<Spline>& b1,
                               const std::vector<Spline>& b2, std::vector<Vertex> order1, std::vector<Vertex> order2)
{
    auto fill = [](std::vector<Vertex>& order, std::size_t size, const char* side) {
        if (order.empty()) {
            order.resize(size);
            std::iota(order.begin(), order.end(), 0);
        }
        std::vector<Vertex> sorted = order, natural(size);
        std::sort(sorted.begin(), sorted.end());
        std::iota(natural.begin(), natural.end(), 0);
        if (sorted != natural)
            throw Error(ErrorKind::BadOrder, std::string("the ") + side + " order is not a vertex permutation");
    };
    fill(order1, u.g1.vertices.size(), "first");
    fill(order2, u.g2.vertices.size(), "second");
    if (u.g2.vertices[order2.front()] != u.cutVertex)
        throw Error(ErrorKind::BadOrder, "the cut vertex must come first on the second side");
    for (const auto& p : b1)
        if (p.values.size() != order1.size() || !is_flow_up_somewhere(p, order1))
            throw Error(ErrorKind::BadOrder, "B1 element " + to_string(p) + " is not flow-up");
    for (const auto& p : b2)
        if (p.values.size() != order2.size() || !is_flow_up_somewhere(p, order2))
            throw Error(ErrorKind::BadOrder, "B2 element " + to_string(p) + " is not flow-up");
    const Vertex cut2 = order2.front();
    std::size_t at_cut = none;
    for (std::size_t i = 0; i < b2.size(); ++i)
        if (!b2[i].values[cut2].is_zero()) {
            if (at_cut != none)
                throw Error(ErrorKind::BadOrder, "several B2 elements are nonzero at the cut vertex");
            at_cut = i;
        }
    if (at_cut == none)
        throw Error(ErrorKind::BadOrder, "no B2 element is nonzero at the cut vertex");
    WedgeBasis out;
    for (const auto& p : b1)
        out.basis.push_back(extend_from_side(g, u.g1, p));
    for (std::size_t i = 0; i < b2.size(); ++i)
        if (i != at_cut)
            out.basis.push_back(extend_from_side(g, u.g2, b2[i]));
    for (Vertex x : order1)
        out.order.push_back(u.g1.vertices[x]);
    for (std::size_t i = 1; i < order2.size(); ++i)
        out.order.push_back(u.g2.vertices[order2[i]]);
    return out;
}
// ---------------------------------------------------------------------------
// Bridge paths

BridgePathDecomposition bridge_path_decompose(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges)
{
    std::vector<Vertex> path = walk_path(g, start, edges, ErrorKind::NotABridgePath);
    auto bridges = find_bridges(g);
    for (std::size_t e : edges)
        if (!std::binary_search(bridges.begin(), bridges.end(), e))
            throw Error(ErrorKind::NotABridgePath, "edge " + std::to_string(e) + " is not a bridge");
    const std::size_t n = g.vertex_count();
    std::vector<bool> on_path_vertex(n, false);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (on_path_vertex[path[i]] || g.degree(path[i]) != 2)
            throw Error(ErrorKind::NotABridgePath, "interior vertex " + std::to_string(path[i]) +
                                                       " does not have degree 2");
        on_path_vertex[path[i]] = true;
    }
    std::vector<bool> on_path_edge(g.edge_count(), false);
    for (std::size_t e : edges)
        on_path_edge[e] = true;

    auto side_of = [&](Vertex root) {
        std::vector<bool> seen(n, false);
        std::vector<Vertex> stack{root};
        seen[root] = true;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (std::size_t e : g.incident_edges(x)) {
                if (on_path_edge[e])
                    continue;
                Vertex y = g.edge(e).other(x);
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        return seen;
    };
    std::vector<bool> left = side_of(path.front());
    std::vector<bool> right = side_of(path.back());

    Subgraph ls = edge_subgraph(g, base_first(path.front(), left), edges_within(g, left));
    Subgraph rs = edge_subgraph(g, base_first(path.back(), right), edges_within(g, right));
    Subgraph ps = edge_subgraph(g, path, edges);

    BridgePathDecomposition out{path,
                                edges,
                                ls,
                                ps,
                                rs,
                                compute_spline_module(ls.graph),
                                based_spline_module(ps.graph, {0}),
                                based_spline_module(rs.graph, {0}),
                                {}};
    const RingSpec& ring = g.ring();
    for (const auto& q : out.leftModule.generators) {
        Spline p = constant_spline(ring, n, q.values.front());
        for (std::size_t i = 0; i < ls.vertices.size(); ++i)
            p.values[ls.vertices[i]] = q.values[i];
        out.generators.push_back(std::move(p));
    }
    for (const auto& k : out.pathModule.generators) {
        Spline p = zero_spline(ring, n);
        for (Vertex x = 0; x < n; ++x)
            if (right[x])
                p.values[x] = k.values.back();
        for (std::size_t i = 0; i < path.size(); ++i)
            p.values[path[i]] = k.values[i];
        out.generators.push_back(std::move(p));
    }
    for (const auto& r : out.rightModule.generators) {
        Spline p = zero_spline(ring, n);
        for (std::size_t i = 0; i < rs.vertices.size(); ++i)
            p.values[rs.vertices[i]] = r.values[i];
        out.generators.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Degree-2 paths

PathContraction contract_degree2_path(const LabeledGraph& g, Vertex start, const std::vector<std::size_t>& edges)
{
    PathCore core = contract_path_core(g, start, edges);
    SplineModule kernel = based_spline_module(core.cycle, {0});
    return {std::move(core.contracted), std::move(core.path), std::move(core.pathEdges), std::move(core.vertexMap),
            std::move(core.removed),    core.newEdge,         core.labelAppended,         std::move(core.cycle),
            std::move(kernel)};
}

Spline restrict_through_path(const PathContraction& c, const Spline& p)
{
    Spline q = zero_spline(c.cycle.ring(), c.contracted.vertex_count());
    for (Vertex x = 0; x < c.vertexMap.size(); ++x)
        if (!c.removed[x])
            q.values[c.vertexMap[x]] = p.values.at(x);
    return q;
}

Spline lift_through_path(const PathContraction& c, const Spline& q)
{
    std::vector<Ideal> labels;
    for (std::size_t i = 0; i < c.cycle.edge_count(); ++i)
        labels.push_back(c.cycle.label_of(i));
    return lift_path_values(c.cycle.ring(), c.vertexMap.size(), c.vertexMap, c.removed, c.path, labels, q);
}

// ---------------------------------------------------------------------------
// Genus reduction

std::string_view to_string(ReductionStepKind kind)
{
    switch (kind) {
    case ReductionStepKind::TreeContraction: return "TreeContraction";
    case ReductionStepKind::BridgePathContraction: return "BridgePathContraction";
    case ReductionStepKind::NonBridgePathContraction: return "NonBridgePathContraction";
    }
    return "?";
}

namespace {

// The maximal pendant tree reached from the lowest-id leaf, or nothing when
// the graph has no leaves.
std::optional<ReductionStep> tree_step(const LabeledGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> deg(n);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] == 1)
            leaves.push(v);
    }
    if (leaves.empty())
        return std::nullopt;
    const Vertex first_leaf = leaves.top();
    std::vector<bool> stripped(n, false);
    std::vector<Vertex> parent(n, none);
    std::vector<std::size_t> parent_edge(n, none);
    std::size_t remaining = n;
    while (!leaves.empty() && remaining > 1) {
        Vertex v = leaves.top();
        leaves.pop();
        if (stripped[v] || deg[v] != 1)
            continue;
        for (std::size_t e : g.incident_edges(v)) {
            Vertex w = g.edge(e).other(v);
            if (stripped[w])
                continue;
            parent[v] = w;
            parent_edge[v] = e;
            break;
        }
        stripped[v] = true;
        --remaining;
        Vertex w = parent[v];
        if (--deg[w] == 1)
            leaves.push(w);
    }
    auto top = [&](Vertex x) {
        while (stripped[x])
            x = parent[x];
        return x;
    };
    Vertex root = top(first_leaf);
    std::vector<bool> members(n, false);
    members[root] = true;
    std::vector<std::size_t> tree_edges;
    for (Vertex x = 0; x < n; ++x)
        if (stripped[x] && top(x) == root) {
            members[x] = true;
            tree_edges.push_back(parent_edge[x]);
        }
    std::sort(tree_edges.begin(), tree_edges.end());
    ContractionResult r = contract_edges(g, tree_edges);
    std::vector<Vertex> order = dfs_order(g, root, tree_edges);
    Subgraph part = edge_subgraph(g, order, tree_edges);
    return ReductionStep{ReductionStepKind::TreeContraction,
                         g,
                         r.graph,
                         root,
                         tree_edges,
                         r.contraction.vertexMap,
                         std::vector<bool>(n, false),
                         {},
                         part.graph,
                         part.vertices,
                         {},
                         std::nullopt,
                         false};
}

std::optional<ReductionStep> bridge_step(const LabeledGraph& g)
{
    auto bridges = find_bridges(g);
    if (bridges.empty())
        return std::nullopt;
    const std::size_t n = g.vertex_count();
    std::vector<bool> is_bridge(g.edge_count(), false);
    for (std::size_t e : bridges)
        is_bridge[e] = true;
    // Component of the bridge subgraph through the lowest-index bridge.
    std::vector<bool> members(n, false);
    std::vector<std::size_t> comp_edges;
    std::vector<bool> edge_seen(g.edge_count(), false);
    std::vector<Vertex> stack{g.edge(bridges.front()).a};
    members[stack.back()] = true;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (std::size_t e : g.incident_edges(x)) {
            if (!is_bridge[e] || edge_seen[e])
                continue;
            edge_seen[e] = true;
            comp_edges.push_back(e);
            Vertex y = g.edge(e).other(x);
            if (!members[y]) {
                members[y] = true;
                stack.push_back(y);
            }
        }
    }
    std::sort(comp_edges.begin(), comp_edges.end());
    std::vector<std::size_t> comp_deg(n, 0);
    for (std::size_t e : comp_edges) {
        ++comp_deg[g.edge(e).a];
        ++comp_deg[g.edge(e).b];
    }
    bool is_path = std::all_of(comp_deg.begin(), comp_deg.end(), [](std::size_t d) { return d <= 2; });
    Vertex survivor = none;
    for (Vertex x = 0; x < n && survivor == none; ++x)
        if (members[x] && (!is_path || comp_deg[x] == 1))
            survivor = x;

    std::vector<Vertex> attachment(n, none);
    for (Vertex a = 0; a < n; ++a) {
        if (!members[a])
            continue;
        attachment[a] = a;
        std::vector<Vertex> st{a};
        while (!st.empty()) {
            Vertex x = st.back();
            st.pop_back();
            for (std::size_t e : g.incident_edges(x)) {
                if (edge_seen[e])
                    continue;
                Vertex y = g.edge(e).other(x);
                if (attachment[y] == none) {
                    attachment[y] = a;
                    st.push_back(y);
                }
            }
        }
    }
    ContractionResult r = contract_edges(g, comp_edges);
    std::vector<Vertex> order = dfs_order(g, survivor, comp_edges);
    Subgraph part = edge_subgraph(g, order, comp_edges);
    return ReductionStep{ReductionStepKind::BridgePathContraction,
                         g,
                         r.graph,
                         survivor,
                         comp_edges,
                         r.contraction.vertexMap,
                         std::vector<bool>(n, false),
                         attachment,
                         part.graph,
                         part.vertices,
                         {},
                         std::nullopt,
                         false};
}

// First maximal chain of degree-2 vertices, scanning start vertices by id and
// their edges by index; a graph that is one cycle is walked from vertex 0.
std::pair<Vertex, std::vector<std::size_t>> degree2_chain(const LabeledGraph& g)
{
    const std::size_t n = g.vertex_count();
    auto walk = [&](Vertex s, std::size_t e) {
        std::vector<std::size_t> edges{e};
        Vertex x = g.edge(e).other(s);
        std::size_t prev = e;
        while (x != s && g.degree(x) == 2) {
            std::size_t next = none;
            for (std::size_t f : g.incident_edges(x))
                if (f != prev) {
                    next = f;
                    break;
                }
            edges.push_back(next);
            prev = next;
            x = g.edge(next).other(x);
        }
        return edges;
    };
    for (Vertex s = 0; s < n; ++s) {
        if (g.degree(s) == 2)
            continue;
        for (std::size_t e : g.incident_edges(s)) {
            if (g.edge(e).is_loop())
                continue;
            auto edges = walk(s, e);
            if (edges.size() >= 2)
                return {s, edges};
        }
    }
    return {0, walk(0, g.incident_edges(0).front())};
}

ReductionStep path_step(const LabeledGraph& g, const std::vector<Ideal>& original_labels)
{
    auto [start, edges] = degree2_chain(g);
    PathCore core = contract_path_core(g, start, edges);
    const Ideal& label = core.contracted.label_of(core.newEdge);
    bool outside = std::none_of(original_labels.begin(), original_labels.end(),
                                [&](const Ideal& I) { return ideal_equal(I, label); });
    std::vector<Vertex> part_vertices(core.path.begin(), core.path.end() - 1);
    return ReductionStep{ReductionStepKind::NonBridgePathContraction,
                         g,
                         core.contracted,
                         start,
                         edges,
                         core.vertexMap,
                         core.removed,
                         {},
                         core.cycle,
                         part_vertices,
                         {},
                         core.newEdge,
                         outside};
}

} // namespace

ReductionResult reduce_graph(const LabeledGraph& g)
{
    if (!is_connected(g))
        throw Error(ErrorKind::Disconnected, "graph is not connected");
    const long g0 = genus(g);
    LabeledGraph current = g;
    std::vector<Vertex> reps(g.vertex_count());
    std::iota(reps.begin(), reps.end(), 0);
    std::vector<Vertex> composed = reps;
    std::vector<ReductionStep> steps;

    while (current.vertex_count() > 1 && !is_reduced(current)) {
        std::optional<ReductionStep> step = tree_step(current);
        if (!step)
            step = bridge_step(current);
        if (!step)
            step = path_step(current, g.labels());
        step->representatives = reps;

        std::vector<Vertex> next_reps(step->after.vertex_count(), none);
        for (Vertex x = 0; x < current.vertex_count(); ++x)
            if (!step->removed[x] && next_reps[step->vertexMap[x]] == none)
                next_reps[step->vertexMap[x]] = reps[x];
        next_reps[step->vertexMap[step->base]] = reps[step->base];
        for (auto& v : composed)
            v = step->vertexMap[v];
        reps = std::move(next_reps);
        current = step->after;
        if (genus(current) != g0)
            throw std::logic_error("reduction step changed the genus");
        steps.push_back(std::move(*step));
    }
    ReductionResult out{g, current, std::move(steps), std::move(composed), std::move(reps),
                        classify_reduced(current), false};
    out.labelsLeftOriginal =
        std::any_of(out.steps.begin(), out.steps.end(), [](const ReductionStep& s) { return s.labelOutsideOriginal; });
    return out;
}

LabeledGraph replay_reduction(const LabeledGraph& g, const std::vector<StepRecord>& steps)
{
    LabeledGraph current = g;
    for (const auto& s : steps) {
        if (s.kind == ReductionStepKind::NonBridgePathContraction)
            current = contract_path_core(current, s.base, s.edges).contracted;
        else
            current = contract_edges(current, s.edges).graph;
    }
    return current;
}

Spline project_step(const ReductionStep& step, const Spline& p)
{
    const LabeledGraph& before = step.before;
    if (p.values.size() != before.vertex_count())
        throw Error(ErrorKind::Shape, "spline length does not match the step graph");
    Spline q = zero_spline(before.ring(), step.after.vertex_count());
    switch (step.kind) {
    case ReductionStepKind::TreeContraction:
    case ReductionStepKind::NonBridgePathContraction:
        for (Vertex x = 0; x < before.vertex_count(); ++x)
            if (!step.removed[x])
                q.values[step.vertexMap[x]] = p.values[x];
        q.values[step.vertexMap[step.base]] = p.values[step.base];
        break;
    case ReductionStepKind::BridgePathContraction:
        for (Vertex y = 0; y < before.vertex_count(); ++y)
            q.values[step.vertexMap[y]] = p.values[y] - p.values[step.attachment[y]] + p.values[step.base];
        break;
    }
    return q;
}

Spline lift_step(const ReductionStep& step, const Spline& q)
{
    if (q.values.size() != step.after.vertex_count())
        throw Error(ErrorKind::Shape, "spline length does not match the step graph");
    if (step.kind == ReductionStepKind::NonBridgePathContraction) {
        std::vector<Vertex> path = step.partVertices;
        path.push_back(step.before.edge(step.edges.back()).other(path.back()));
        std::vector<Ideal> labels;
        for (std::size_t e : step.edges)
            labels.push_back(step.before.label_of(e));
        return lift_path_values(step.before.ring(), step.before.vertex_count(), step.vertexMap, step.removed, path,
                                labels, q);
    }
    Spline p;
    for (Vertex x = 0; x < step.before.vertex_count(); ++x)
        p.values.push_back(q.values[step.vertexMap[x]]);
    return p;
}

Spline extend_kernel_element(const ReductionStep& step, const Spline& k)
{
    if (k.values.size() != step.partVertices.size())
        throw Error(ErrorKind::Shape, "kernel element length does not match the part");
    const LabeledGraph& before = step.before;
    Spline p = zero_spline(before.ring(), before.vertex_count());
    if (step.kind == ReductionStepKind::BridgePathContraction) {
        std::vector<std::size_t> index(before.vertex_count(), none);
        for (std::size_t i = 0; i < step.partVertices.size(); ++i)
            index[step.partVertices[i]] = i;
        for (Vertex y = 0; y < before.vertex_count(); ++y)
            p.values[y] = k.values[index[step.attachment[y]]];
        return p;
    }
    for (std::size_t i = 1; i < step.partVertices.size(); ++i)
        p.values[step.partVertices[i]] = k.values[i];
    return p;
}

SplineDecomposition spline_decomposition(const LabeledGraph& g)
{
    ReductionResult red = reduce_graph(g);
    SplineModule reduced = compute_spline_module(red.reduced);
    const auto& steps = red.steps;

    auto lift_back = [&](Spline p, std::size_t upto) {
        for (std::size_t j = upto; j-- > 0;)
            p = lift_step(steps[j], p);
        return p;
    };
    auto project_all = [&](Spline p) {
        for (const auto& s : steps)
            p = project_step(s, p);
        return p;
    };

    SplineDecomposition out{red, reduced, {}, {}, {}, 0, false, false, false};
    for (const auto& q : reduced.generators)
        out.reducedLifted.push_back(lift_back(q, steps.size()));
    out.liftedGenerators = out.reducedLifted;

    std::size_t parts_size = 0;
    out.kernelsVanish = true;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const ReductionStep& s = steps[i];
        KernelPart part{s.kind, i, s.part, {}, based_spline_module(s.part, {0}), {}, true};
        for (Vertex x : s.partVertices)
            part.originalVertices.push_back(s.representatives[x]);
        PlaneRootedStructure rooted = default_structure(s.part, 0);
        std::vector<Vertex> order = depth_first_order(s.part, rooted);
        if (s.kind != ReductionStepKind::NonBridgePathContraction) {
            // Tree and bridge-path parts: the tree generators other than 1 span the based module.
            auto gens = tree_flow_up_generators(s.part, rooted);
            part.module.generators.assign(gens.begin() + 1, gens.end());
        }
        part.flowUp = is_flow_up_generating_set(s.part, part.module.generators, order, {0});
        for (const auto& k : part.module.generators) {
            Spline lifted = lift_back(extend_kernel_element(s, k), i);
            if (!is_zero(project_all(lifted)))
                out.kernelsVanish = false;
            part.liftedGenerators.push_back(lifted);
            out.liftedGenerators.push_back(std::move(lifted));
        }
        parts_size += part.module.size();
        out.kernelParts.push_back(std::move(part));
    }
    for (const auto& p : out.liftedGenerators)
        if (!is_spline(g, p))
            throw std::logic_error("lifted generator " + to_string(p) + " is not a spline");

    SplineModule full = compute_spline_module(g);
    out.totalSize = full.size();
    out.additive = out.totalSize == reduced.size() + parts_size;
    out.generates = same_span(g, out.liftedGenerators, full.generators);
    return out;
}

} // namespace gspline
