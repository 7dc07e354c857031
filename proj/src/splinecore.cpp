#include "gspline/splinecore.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gspline {

Spline constant_spline(const RingSpec& ring, std::size_t vertex_count, const RingElement& c)
{
    if (!(c.ring() == ring))
        throw Error(ErrorKind::RingMismatch, "constant lives in another ring");
    return {std::vector<RingElement>(vertex_count, c)};
}

Spline zero_spline(const RingSpec& ring, std::size_t vertex_count)
{
    return constant_spline(ring, vertex_count, RingElement::zero(ring));
}

Spline operator+(const Spline& a, const Spline& b)
{
    if (a.values.size() != b.values.size())
        throw Error(ErrorKind::Shape, "spline lengths differ");
    Spline out{a.values};
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.values[i] + b.values[i];
    return out;
}

Spline operator-(const Spline& a, const Spline& b)
{
    if (a.values.size() != b.values.size())
        throw Error(ErrorKind::Shape, "spline lengths differ");
    Spline out{a.values};
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a.values[i] - b.values[i];
    return out;
}

Spline operator*(const RingElement& r, const Spline& p)
{
    Spline out{p.values};
    for (auto& x : out.values)
        x = r * x;
    return out;
}

bool is_zero(const Spline& p)
{
    return std::all_of(p.values.begin(), p.values.end(), [](const RingElement& x) { return x.is_zero(); });
}

std::string to_string(const Spline& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i)
            s += ", ";
        s += p.values[i].to_string();
    }
    return s + ")";
}

bool is_spline(const LabeledGraph& g, const std::vector<RingElement>& values)
{
    if (values.size() != g.vertex_count())
        throw Error(ErrorKind::Shape, "spline has " + std::to_string(values.size()) + " values for " +
                                          std::to_string(g.vertex_count()) + " vertices");
    for (const auto& x : values)
        if (!(x.ring() == g.ring()))
            throw Error(ErrorKind::RingMismatch, "spline value " + x.to_string() + " is not in " + g.ring().describe());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop())
            continue;
        if (!ideal_membership(values[ed.a] - values[ed.b], g.label_of(e)))
            return false;
    }
    return true;
}

bool is_spline(const LabeledGraph& g, const Spline& p)
{
    return is_spline(g, p.values);
}

// ---------------------------------------------------------------------------
// Solver

namespace {

// Vertex coordinates are laid out vertex-major: coordinate r of vertex v sits
// at v * dim + r, so echelon forms are flow-up in vertex id order.
RatVector spline_coordinates(const Spline& p, std::size_t dim)
{
    RatVector out;
    out.reserve(p.values.size() * dim);
    for (const auto& x : p.values) {
        RatVector c = x.coordinates();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

IntVector integer_coordinates(const Spline& p, std::size_t dim)
{
    RatVector c = spline_coordinates(p, dim);
    IntVector out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = c[i].get_num();
    return out;
}

template <typename Vec>
Spline spline_from_coordinates(const RingSpec& ring, std::size_t vertex_count, const Vec& coords)
{
    const std::size_t dim = ring.additive_dim();
    Spline p;
    p.values.reserve(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        RatVector c(dim);
        for (std::size_t r = 0; r < dim; ++r)
            c[r] = Rational(coords[v * dim + r]);
        p.values.push_back(RingElement::from_coordinates(ring, c));
    }
    return p;
}

IntMatrix spline_system(const LabeledGraph& g, const std::vector<Vertex>& based)
{
    const std::size_t dim = g.ring().additive_dim();
    const std::size_t n = g.vertex_count();
    std::vector<IntMatrix> pres(g.edge_count());
    std::size_t cols = n * dim;
    std::size_t rows = based.size() * dim;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).is_loop())
            continue;
        pres[e] = ideal_quotient_presentation(g.label_of(e));
        cols += pres[e].cols();
        rows += dim;
    }
    IntMatrix a(rows, cols);
    std::size_t row = 0;
    std::size_t aux = n * dim;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop())
            continue;
        for (std::size_t r = 0; r < dim; ++r) {
            a(row + r, ed.a * dim + r) += 1;
            a(row + r, ed.b * dim + r) -= 1;
            for (std::size_t c = 0; c < pres[e].cols(); ++c)
                a(row + r, aux + c) = -pres[e](r, c);
        }
        row += dim;
        aux += pres[e].cols();
    }
    for (Vertex v : based) {
        for (std::size_t r = 0; r < dim; ++r)
            a(row + r, v * dim + r) = 1;
        row += dim;
    }
    return a;
}

template <typename Vec>
std::vector<Vec> project(const std::vector<Vec>& vectors, std::size_t length)
{
    std::vector<Vec> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors)
        out.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(length));
    return out;
}

// L/nZ^V for a full-rank square lower-triangular basis B of L.
std::vector<Integer> quotient_invariants(const std::vector<IntVector>& basis, const Integer& n)
{
    const std::size_t size = basis.size();
    IntMatrix m(size, size);
    for (std::size_t j = 0; j < size; ++j)
        for (std::size_t k = 0; k < size; ++k) {
            Integer acc = k == j ? n : Integer(0);
            for (std::size_t i = 0; i < k; ++i)
                acc -= basis[i][k] * m(i, j);
            if (!mpz_divisible_p(acc.get_mpz_t(), basis[k][k].get_mpz_t()))
                throw std::logic_error("lifted spline lattice does not contain nZ^V");
            m(k, j) = acc / basis[k][k];
        }
    std::vector<Integer> out;
    for (const Integer& d : smith_invariants(m))
        if (d != 1)
            out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVector> lift_lattice(const std::vector<IntVector>& generators, std::size_t length, const Integer& n)
{
    std::vector<IntVector> gens = generators;
    for (std::size_t i = 0; i < length; ++i) {
        IntVector e(length, Integer(0));
        e[i] = n;
        gens.push_back(std::move(e));
    }
    return lattice_hnf(gens);
}

Integer triangular_determinant(const std::vector<IntVector>& basis)
{
    Integer d = 1;
    for (std::size_t k = 0; k < basis.size(); ++k)
        d *= basis[k][k];
    return d;
}

// log_p of [L : pL + nZ^V].
std::size_t reduction_dimension(const std::vector<IntVector>& lattice, const Integer& n, const Integer& p)
{
    std::vector<IntVector> scaled = lattice;
    for (auto& v : scaled)
        for (auto& x : v)
            x *= p;
    std::vector<IntVector> sub = lift_lattice(scaled, lattice.size(), n);
    Integer index = triangular_determinant(sub) / triangular_determinant(lattice);
    std::size_t k = 0;
    while (index > 1) {
        if (!mpz_divisible_p(index.get_mpz_t(), p.get_mpz_t()))
            throw std::logic_error("reduction index is not a power of p");
        index /= p;
        ++k;
    }
    return k;
}

SplineModule solve_module(const LabeledGraph& g, std::vector<Vertex> based)
{
    const RingSpec& ring = g.ring();
    const std::size_t n = g.vertex_count();
    const std::size_t dim = ring.additive_dim();
    for (Vertex v : based)
        if (v >= n)
            throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is not in the graph");
    std::sort(based.begin(), based.end());
    based.erase(std::unique(based.begin(), based.end()), based.end());

    IntMatrix system = spline_system(g, based);
    SplineModule m{g, based, {}, FieldDim{0}, 0};
    switch (ring.kind()) {
    case RingKind::Integers: {
        auto basis = lattice_hnf(project(integer_kernel(system), n));
        for (const auto& v : basis)
            m.generators.push_back(spline_from_coordinates(ring, n, v));
        m.structure = FreeRank{basis.size()};
        m.zRank = basis.size();
        break;
    }
    case RingKind::ModN: {
        const Integer& modulus = ring.modulus();
        auto basis = lift_lattice(project(integer_kernel(system), n), n, modulus);
        for (const auto& v : basis) {
            Spline p = spline_from_coordinates(ring, n, v);
            if (!is_zero(p))
                m.generators.push_back(std::move(p));
        }
        auto factors = quotient_invariants(basis, modulus);
        m.zRank = factors.size();
        m.structure = InvariantFactors{std::move(factors)};
        if (auto p = ring.prime_power_base(); p && reduction_dimension(basis, modulus, *p) != m.zRank)
            throw std::logic_error("invariant factor count disagrees with the mod-p reduction");
        break;
    }
    case RingKind::PrimeField:
    case RingKind::TruncatedPoly: {
        std::size_t count = 0;
        if (ring.scalars() == ScalarKind::Rational) {
            auto basis = row_basis_rational(project(rational_nullspace(system), n * dim));
            for (const auto& v : basis)
                m.generators.push_back(spline_from_coordinates(ring, n, v));
            count = basis.size();
        } else {
            auto basis = row_basis_mod_p(project(nullspace_mod_p(system, ring.scalar_prime()), n * dim),
                                         ring.scalar_prime());
            for (const auto& v : basis)
                m.generators.push_back(spline_from_coordinates(ring, n, v));
            count = basis.size();
        }
        m.structure = FieldDim{count};
        m.zRank = count;
        break;
    }
    }
    return m;
}

} // namespace

SplineModule compute_spline_module(const LabeledGraph& g)
{
    return solve_module(g, {});
}

SplineModule based_spline_module(const LabeledGraph& g, const std::vector<Vertex>& based)
{
    return solve_module(g, based);
}

std::optional<std::size_t> mod_p_reduction_dimension(const SplineModule& m)
{
    const RingSpec& ring = m.graph.ring();
    if (ring.kind() != RingKind::ModN)
        return std::nullopt;
    auto p = ring.prime_power_base();
    if (!p)
        return std::nullopt;
    const std::size_t n = m.graph.vertex_count();
    std::vector<IntVector> gens;
    for (const auto& s : m.generators)
        gens.push_back(integer_coordinates(s, 1));
    return reduction_dimension(lift_lattice(gens, n, ring.modulus()), ring.modulus(), *p);
}

ConstantSplit split_spline(const Spline& p, Vertex v)
{
    if (v >= p.values.size())
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is out of range");
    Spline c = constant_spline(p.values[v].ring(), p.values.size(), p.values[v]);
    return {c, p - c};
}

ModuleSplit split_off_constants(const SplineModule& m, Vertex v)
{
    if (v >= m.graph.vertex_count())
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is out of range");
    const RingSpec& ring = m.graph.ring();
    ModuleSplit out;
    out.constantPart.push_back(constant_spline(ring, m.graph.vertex_count(), RingElement::one(ring)));
    for (const auto& g : m.generators) {
        Spline b = split_spline(g, v).basedPart;
        if (!is_zero(b))
            out.basedPart.push_back(std::move(b));
    }
    return out;
}

Spline vertex_expansion(const Contraction& c, const Spline& q)
{
    ContractionCheck check = validate_contraction(c);
    if (!check.ok)
        throw Error(ErrorKind::BadContraction, "condition " + std::to_string(check.violatedCondition) + ": " + check.detail);
    if (q.values.size() != c.codomain.vertex_count())
        throw Error(ErrorKind::Shape, "spline length does not match the codomain");
    Spline out;
    out.values.reserve(c.domain.vertex_count());
    for (Vertex w = 0; w < c.domain.vertex_count(); ++w)
        out.values.push_back(q.values[c.vertexMap[w]]);
    return out;
}

bool is_flow_up(const Spline& p, const std::vector<Vertex>& order, Vertex v)
{
    for (Vertex w : order) {
        if (w == v)
            return true;
        if (!p.values.at(w).is_zero())
            return false;
    }
    return true;
}

bool is_flow_up_somewhere(const Spline& p, const std::vector<Vertex>& order)
{
    for (Vertex w : order)
        if (!p.values.at(w).is_zero())
            return is_flow_up(p, order, w);
    return true;
}

bool is_flow_up_generating_set(const LabeledGraph& g, const std::vector<Spline>& generators,
                               const std::vector<Vertex>& order, const std::vector<Vertex>& based)
{
    std::vector<Vertex> vanishing = based;
    for (Vertex v : order) {
        std::vector<RingElement> leading;
        for (const auto& p : generators) {
            auto first = std::find_if(order.begin(), order.end(), [&](Vertex w) { return !p.values.at(w).is_zero(); });
            if (first != order.end() && *first == v)
                leading.push_back(p.values[v]);
        }
        std::vector<RingElement> reachable;
        for (const auto& p : based_spline_module(g, vanishing).generators)
            reachable.push_back(p.values[v]);
        if (!ideal_equal(Ideal(g.ring(), leading), Ideal(g.ring(), reachable)))
            return false;
        vanishing.push_back(v);
    }
    return true;
}

std::vector<Spline> tree_flow_up_generators(const LabeledGraph& tree, const PlaneRootedStructure& s)
{
    if (genus(tree) != 0)
        throw Error(ErrorKind::NotATree, "graph has genus " + std::to_string(genus(tree)));
    std::vector<Vertex> order = depth_first_order(tree, s);
    const RingSpec& ring = tree.ring();
    const std::size_t n = tree.vertex_count();

    // Parent edge of every non-root vertex and the subtree below it.
    std::vector<std::size_t> parent_edge(n, static_cast<std::size_t>(-1));
    std::vector<std::vector<Vertex>> children(n);
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{s.root};
    seen[s.root] = true;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (std::size_t e : tree.incident_edges(v)) {
            Vertex w = tree.edge(e).other(v);
            if (seen[w])
                continue;
            seen[w] = true;
            parent_edge[w] = e;
            children[v].push_back(w);
            stack.push_back(w);
        }
    }
    std::vector<Spline> out{constant_spline(ring, n, RingElement::one(ring))};
    for (Vertex v : order) {
        if (v == s.root)
            continue;
        std::vector<bool> below(n, false);
        std::function<void(Vertex)> mark = [&](Vertex x) {
            below[x] = true;
            for (Vertex c : children[x])
                mark(c);
        };
        mark(v);
        for (const auto& gen : tree.label_of(parent_edge[v]).generators()) {
            Spline p = zero_spline(ring, n);
            for (Vertex x = 0; x < n; ++x)
                if (below[x])
                    p.values[x] = gen;
            out.push_back(std::move(p));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Membership

Membership span_membership(const LabeledGraph& g, const std::vector<Spline>& generators, const Spline& p)
{
    const RingSpec& ring = g.ring();
    const std::size_t n = g.vertex_count();
    const std::size_t dim = ring.additive_dim();
    if (p.values.size() != n)
        throw Error(ErrorKind::Shape, "spline length does not match the graph");
    for (const auto& gen : generators)
        if (gen.values.size() != n)
            throw Error(ErrorKind::Shape, "generator length does not match the graph");
    for (const auto& x : p.values)
        if (!(x.ring() == ring))
            throw Error(ErrorKind::RingMismatch, "spline value " + x.to_string() + " is not in " + ring.describe());

    Membership out;
    const std::size_t k = generators.size();
    switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::ModN: {
        std::vector<IntVector> cols;
        for (const auto& gen : generators)
            cols.push_back(integer_coordinates(gen, 1));
        if (ring.kind() == RingKind::ModN)
            for (std::size_t i = 0; i < n; ++i) {
                IntVector e(n, Integer(0));
                e[i] = ring.modulus();
                cols.push_back(std::move(e));
            }
        auto x = solve_integer(IntMatrix::from_columns(cols, n), integer_coordinates(p, 1));
        if (!x)
            return out;
        out.member = true;
        for (std::size_t i = 0; i < k; ++i)
            out.coefficients.push_back(RingElement(ring, (*x)[i]));
        return out;
    }
    case RingKind::PrimeField: {
        std::vector<IntVector> cols;
        for (const auto& gen : generators)
            cols.push_back(integer_coordinates(gen, 1));
        auto x = solve_mod_p(IntMatrix::from_columns(cols, n), integer_coordinates(p, 1), ring.modulus());
        if (!x)
            return out;
        out.member = true;
        for (std::size_t i = 0; i < k; ++i)
            out.coefficients.push_back(RingElement(ring, (*x)[i]));
        return out;
    }
    case RingKind::TruncatedPoly: {
        // Columns monomial * generator; the coefficient of a generator is the
        // polynomial assembled from its monomial weights.
        std::vector<IntVector> cols;
        std::vector<Rational> scale;
        for (const auto& gen : generators)
            for (std::size_t mono = 0; mono < dim; ++mono) {
                RatVector c = spline_coordinates(RingElement::monomial(ring, mono) * gen, dim);
                IntVector ic = primitive_integer_vector(c);
                // c = scale * ic
                Rational s = 0;
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (ic[i] != 0) {
                        s = c[i] / Rational(ic[i]);
                        break;
                    }
                cols.push_back(std::move(ic));
                scale.push_back(s);
            }
        IntMatrix a = IntMatrix::from_columns(cols, n * dim);
        std::vector<Rational> weights(cols.size());
        if (ring.rational_base()) {
            auto x = solve_rational(a, spline_coordinates(p, dim));
            if (!x)
                return out;
            for (std::size_t i = 0; i < cols.size(); ++i)
                weights[i] = (*x)[i];
        } else {
            auto x = solve_mod_p(a, integer_coordinates(p, dim), ring.modulus());
            if (!x)
                return out;
            for (std::size_t i = 0; i < cols.size(); ++i)
                weights[i] = Rational((*x)[i]);
        }
        out.member = true;
        for (std::size_t i = 0; i < k; ++i) {
            RatVector coeff(dim, Rational(0));
            for (std::size_t mono = 0; mono < dim; ++mono) {
                const Rational& s = scale[i * dim + mono];
                if (s != 0)
                    coeff[mono] = weights[i * dim + mono] / s;
            }
            out.coefficients.push_back(RingElement::from_coordinates(ring, coeff));
        }
        return out;
    }
    }
    return out;
}

Membership module_membership(const SplineModule& m, const Spline& p)
{
    if (p.values.size() != m.graph.vertex_count())
        throw Error(ErrorKind::GraphMismatch, "spline has " + std::to_string(p.values.size()) +
                                                  " values, module graph has " +
                                                  std::to_string(m.graph.vertex_count()) + " vertices");
    for (const auto& x : p.values)
        if (!(x.ring() == m.graph.ring()))
            throw Error(ErrorKind::GraphMismatch, "spline ring differs from the module ring");
    return span_membership(m.graph, m.generators, p);
}

bool same_span(const LabeledGraph& g, const std::vector<Spline>& a, const std::vector<Spline>& b)
{
    for (const auto& p : a)
        if (!span_membership(g, b, p).member)
            return false;
    for (const auto& p : b)
        if (!span_membership(g, a, p).member)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Indicator vectors from contractions

IndicatorWitness indicator_in_contraction_span(const LabeledGraph& g, Vertex u)
{
    const std::size_t n = g.vertex_count();
    if (n < 3)
        throw Error(ErrorKind::TooSmall, "needs at least 3 vertices, graph has " + std::to_string(n));
    if (u >= n)
        throw Error(ErrorKind::BadVertex, "vertex " + std::to_string(u) + " is out of range");
    if (!is_connected(g))
        throw Error(ErrorKind::Disconnected, "graph is not connected");
    const RingSpec& ring = g.ring();
    const RingElement one = RingElement::one(ring);
    const RingElement zero = RingElement::zero(ring);

    auto indicator = [&](std::size_t size, Vertex at) {
        std::vector<RingElement> v(size, zero);
        v[at] = one;
        return v;
    };

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop() || ed.a == u || ed.b == u)
            continue;
        ContractionResult r = contract_edges(g, {e});
        IndicatorWitness w{IndicatorWitness::Case::SingleEdge, u, {}, {}, {}};
        w.codomainVectors.push_back(indicator(r.graph.vertex_count(), r.contraction.vertexMap[u]));
        w.contractions.push_back(std::move(r.contraction));
        w.coefficients.push_back(one);
        return w;
    }

    // Every non-loop edge touches u, so u is the centre of a star.
    Vertex partner = n;
    std::size_t partner_edge = 0;
    std::vector<std::size_t> spokes(n, static_cast<std::size_t>(-1));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop())
            continue;
        Vertex w = ed.other(u);
        if (spokes[w] == static_cast<std::size_t>(-1))
            spokes[w] = e;
    }
    for (Vertex w = 0; w < n; ++w)
        if (w != u && spokes[w] != static_cast<std::size_t>(-1)) {
            partner = w;
            partner_edge = spokes[w];
            break;
        }
    std::vector<std::size_t> others;
    for (Vertex w = 0; w < n; ++w)
        if (w != u && w != partner)
            others.push_back(spokes[w]);

    // c1 merges u with every leaf except the partner; c2 merges u with the partner.
    ContractionResult r1 = contract_edges(g, others);
    ContractionResult r2 = contract_edges(g, {partner_edge});
    IndicatorWitness w{IndicatorWitness::Case::Star, u, {}, {}, {}};
    w.codomainVectors.push_back(indicator(r1.graph.vertex_count(), r1.contraction.vertexMap[partner]));
    w.codomainVectors.push_back(indicator(r2.graph.vertex_count(), r2.contraction.vertexMap[u]));
    w.contractions.push_back(std::move(r1.contraction));
    w.contractions.push_back(std::move(r2.contraction));
    w.coefficients = {-one, one};
    return w;
}

std::vector<RingElement> replay_indicator_witness(const IndicatorWitness& w)
{
    if (w.contractions.empty() || w.contractions.size() != w.codomainVectors.size() ||
        w.contractions.size() != w.coefficients.size())
        throw Error(ErrorKind::Shape, "witness lists have inconsistent lengths");
    const LabeledGraph& g = w.contractions.front().domain;
    std::vector<RingElement> out(g.vertex_count(), RingElement::zero(g.ring()));
    for (std::size_t i = 0; i < w.contractions.size(); ++i) {
        const Contraction& c = w.contractions[i];
        ContractionCheck check = validate_contraction(c);
        if (!check.ok)
            throw Error(ErrorKind::BadContraction, check.detail);
        if (!(c.domain == g))
            throw Error(ErrorKind::GraphMismatch, "witness contractions start from different graphs");
        if (w.codomainVectors[i].size() != c.codomain.vertex_count())
            throw Error(ErrorKind::Shape, "codomain vector length mismatch");
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out[v] = out[v] + w.coefficients[i] * w.codomainVectors[i][c.vertexMap[v]];
    }
    return out;
}

} // namespace gspline
