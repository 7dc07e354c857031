#include "gspline/dyckseries.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gspline {

std::string to_string(const DyckWord& w)
{
    std::string s;
    for (const auto& sym : w.symbols)
        s += (sym.open ? "(" : ")") + std::to_string(sym.label);
    return s;
}

std::size_t PlaneLabeledTree::edge_count() const
{
    std::size_t n = children.size();
    for (const auto& c : children)
        n += c.subtree.edge_count();
    return n;
}

bool PlaneLabeledTree::operator==(const PlaneLabeledTree& other) const
{
    if (children.size() != other.children.size())
        return false;
    for (std::size_t i = 0; i < children.size(); ++i)
        if (children[i].label != other.children[i].label || !(children[i].subtree == other.children[i].subtree))
            return false;
    return true;
}

void for_each_dyck_word(std::size_t labels, std::size_t pairs, const std::function<void(const DyckWord&)>& visit)
{
    DyckWord w;
    w.symbols.reserve(2 * pairs);
    std::vector<std::size_t> stack;
    std::function<void(std::size_t)> rec = [&](std::size_t opened) {
        if (w.symbols.size() == 2 * pairs) {
            visit(w);
            return;
        }
        if (opened < pairs)
            for (std::size_t a = 0; a < labels; ++a) {
                w.symbols.push_back({true, a});
                stack.push_back(a);
                rec(opened + 1);
                stack.pop_back();
                w.symbols.pop_back();
            }
        if (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            w.symbols.push_back({false, a});
            rec(opened);
            w.symbols.pop_back();
            stack.push_back(a);
        }
    };
    if (labels == 0 && pairs > 0)
        return;
    rec(0);
}

std::vector<DyckWord> enumerate_dyck_words(std::size_t labels, std::size_t pairs)
{
    std::vector<DyckWord> out;
    for_each_dyck_word(labels, pairs, [&](const DyckWord& w) { out.push_back(w); });
    return out;
}

PlaneLabeledTree word_to_tree(const DyckWord& w)
{
    PlaneLabeledTree root;
    std::vector<PlaneLabeledTree*> path{&root};
    std::vector<std::size_t> open_labels;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        const DyckSymbol& s = w.symbols[i];
        if (s.open) {
            path.back()->children.push_back({s.label, {}});
            path.push_back(&path.back()->children.back().subtree);
            open_labels.push_back(s.label);
        } else {
            if (open_labels.empty())
                throw Error(ErrorKind::NotDyck, "symbol " + std::to_string(i) + " closes nothing");
            if (open_labels.back() != s.label)
                throw Error(ErrorKind::NotDyck, "symbol " + std::to_string(i) + " closes label " +
                                                    std::to_string(open_labels.back()) + " with label " +
                                                    std::to_string(s.label));
            open_labels.pop_back();
            path.pop_back();
        }
    }
    if (!open_labels.empty())
        throw Error(ErrorKind::NotDyck, std::to_string(open_labels.size()) + " parentheses left open");
    return root;
}

DyckWord tree_to_word(const PlaneLabeledTree& t)
{
    DyckWord w;
    std::function<void(const PlaneLabeledTree&)> rec = [&](const PlaneLabeledTree& node) {
        for (const auto& c : node.children) {
            w.symbols.push_back({true, c.label});
            rec(c.subtree);
            w.symbols.push_back({false, c.label});
        }
    };
    rec(t);
    return w;
}

LabeledGraph tree_to_graph(const PlaneLabeledTree& t, const RingSpec& ring, const std::vector<Ideal>& labels)
{
    std::vector<Edge> edges;
    std::size_t next = 1;
    std::function<void(const PlaneLabeledTree&, Vertex)> rec = [&](const PlaneLabeledTree& node, Vertex v) {
        for (const auto& c : node.children) {
            Vertex child = next++;
            edges.push_back({v, child, c.label});
            rec(c.subtree, child);
        }
    };
    rec(t, 0);
    return LabeledGraph(ring, labels, next, std::move(edges));
}

std::size_t count_label(const DyckWord& w, std::size_t label)
{
    std::size_t n = 0;
    for (const auto& s : w.symbols)
        n += s.open && s.label == label;
    return n;
}

std::string_view to_string(SeriesMode mode)
{
    return mode == SeriesMode::FieldDimension ? "dim" : "zrank";
}

// ---------------------------------------------------------------------------
// Hilbert-Dyck coefficients

namespace {

std::vector<Integer> prime_factors(Integer n)
{
    std::vector<Integer> out;
    for (Integer p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

void check_mode(const RingSpec& ring, SeriesMode mode)
{
    if (mode == SeriesMode::FieldDimension && ring.kind() != RingKind::PrimeField &&
        ring.kind() != RingKind::TruncatedPoly)
        throw Error(ErrorKind::ModeMismatch, "dimension mode needs F_p or a truncated polynomial ring, got " +
                                                 ring.describe());
    if (mode == SeriesMode::ZRank && ring.kind() != RingKind::ModN)
        throw Error(ErrorKind::ModeMismatch, "Z-rank mode needs Z/nZ, got " + ring.describe());
}

// Per-word size of Spl(T) = R + sum of edge ideals, from label multiplicities.
class TreeSizer {
public:
    TreeSizer(const RingSpec& ring, const std::vector<Ideal>& labels, SeriesMode mode) : mode_(mode)
    {
        check_mode(ring, mode);
        for (const auto& I : labels)
            if (!(I.ring() == ring))
                throw Error(ErrorKind::RingMismatch, "label " + I.to_string() + " is not over " + ring.describe());
        if (mode == SeriesMode::FieldDimension) {
            base_ = ring.additive_dim();
            for (const auto& I : labels)
                label_size_.push_back(ideal_additive_size(I));
            return;
        }
        // Over Z/n the sum of cyclic groups Z/(n/g) has as many invariant
        // factors as the largest number of summands divisible by one prime.
        const Integer& n = ring.modulus();
        primes_ = prime_factors(n);
        for (const auto& I : labels) {
            Integer g = n;
            for (const auto& x : I.generators())
                g = gcd(g, x.value());
            Integer order = n / g;
            std::vector<bool> hit;
            for (const auto& p : primes_)
                hit.push_back(order % p == 0);
            divisible_.push_back(std::move(hit));
        }
    }

    std::size_t size(const std::vector<std::size_t>& label_counts) const
    {
        if (mode_ == SeriesMode::FieldDimension) {
            std::size_t s = base_;
            for (std::size_t i = 0; i < label_counts.size(); ++i)
                s += label_counts[i] * label_size_[i];
            return s;
        }
        std::size_t best = 0;
        for (std::size_t j = 0; j < primes_.size(); ++j) {
            std::size_t c = 1;
            for (std::size_t i = 0; i < label_counts.size(); ++i)
                if (divisible_[i][j])
                    c += label_counts[i];
            best = std::max(best, c);
        }
        return best;
    }

private:
    SeriesMode mode_;
    std::size_t base_ = 0;
    std::vector<std::size_t> label_size_;
    std::vector<Integer> primes_;
    std::vector<std::vector<bool>> divisible_;
};

std::vector<std::size_t> label_counts(const DyckWord& w, std::size_t labels)
{
    std::vector<std::size_t> counts(labels, 0);
    for (const auto& s : w.symbols)
        if (s.open)
            ++counts.at(s.label);
    return counts;
}

Integer word_count(std::size_t labels, std::size_t pairs)
{
    Integer catalan;
    mpz_bin_uiui(catalan.get_mpz_t(), 2 * pairs, pairs);
    catalan /= pairs + 1;
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), labels, pairs);
    return catalan * power;
}

} // namespace

std::size_t tree_module_size(const RingSpec& ring, const std::vector<Ideal>& labels, const DyckWord& w, SeriesMode mode)
{
    return TreeSizer(ring, labels, mode).size(label_counts(w, labels.size()));
}

SeriesPrefix hilbert_dyck_prefix(const RingSpec& ring, const std::vector<Ideal>& labels, std::size_t max_pairs,
                                 SeriesMode mode, const HilbertDyckOptions& options)
{
    TreeSizer sizer(ring, labels, mode);
    SeriesPrefix out{mode, {}};
    const std::size_t s = labels.size();
    for (std::size_t n = 0; n <= max_pairs; ++n) {
        Integer total = 0;
        Integer count = word_count(s, n);
        Integer stride = options.exhaustiveCrossCheck ? Integer(1) : count / options.samplesPerDegree;
        if (stride < 1)
            stride = 1;
        Integer index = 0;
        for_each_dyck_word(s, n, [&](const DyckWord& w) {
            std::size_t size = sizer.size(label_counts(w, s));
            total += size;
            if (index % stride == 0) {
                SplineModule m = compute_spline_module(tree_to_graph(word_to_tree(w), ring, labels));
                if (m.size() != size)
                    throw std::logic_error("tree formula gives " + std::to_string(size) + " but the solver gives " +
                                           std::to_string(m.size()) + " for word " + to_string(w));
            }
            ++index;
        });
        out.coefficients.push_back(total);
    }
    return out;
}

ClosedFormReport closed_form_check(const RingSpec& ring, const std::vector<Ideal>& labels, std::size_t max_pairs)
{
    std::vector<bool> is_zero_label;
    if (ring.kind() == RingKind::PrimeField) {
        for (const auto& I : labels) {
            bool zero = I.is_zero();
            if (!zero && !ideal_membership(RingElement::one(ring), I))
                throw Error(ErrorKind::NoClosedForm, "label " + I.to_string() + " is neither (0) nor R");
            is_zero_label.push_back(zero);
        }
    } else if (ring.kind() == RingKind::ModN) {
        auto p = ring.prime_power_base();
        if (!p || *p * *p != ring.modulus())
            throw Error(ErrorKind::NoClosedForm, ring.describe() + " is not Z/p^2");
        Ideal maximal(ring, {RingElement(ring, *p)});
        for (const auto& I : labels) {
            bool zero = I.is_zero();
            if (!zero && !ideal_equal(I, maximal))
                throw Error(ErrorKind::NoClosedForm, "label " + I.to_string() + " is neither (0) nor (p)");
            is_zero_label.push_back(zero);
        }
    } else {
        throw Error(ErrorKind::NoClosedForm, "no closed form is known over " + ring.describe());
    }

    ClosedFormReport report;
    for (std::size_t n = 0; n <= max_pairs; ++n)
        for_each_dyck_word(labels.size(), n, [&](const DyckWord& w) {
            std::size_t n0 = 0;
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (is_zero_label[i])
                    n0 += count_label(w, i);
            std::size_t expected = n - n0 + 1;
            std::size_t actual = compute_spline_module(tree_to_graph(word_to_tree(w), ring, labels)).size();
            ++report.wordsChecked;
            if (actual != expected)
                report.mismatches.push_back({to_string(w), expected, actual});
        });
    return report;
}

MarkedWordCount marked_word_count(std::size_t labels, std::size_t pairs)
{
    MarkedWordCount out{0, 0};
    for_each_dyck_word(labels, pairs, [&](const DyckWord& w) { out.direct += count_label(w, 0); });
    const std::size_t marked = labels; // the extra symbol
    for_each_dyck_word(labels + 1, pairs, [&](const DyckWord& w) {
        if (count_label(w, marked) == 1)
            ++out.marked;
    });
    if (out.direct != out.marked)
        throw std::logic_error("marked word count " + out.marked.get_str() + " differs from direct sum " +
                               out.direct.get_str());
    return out;
}

// ---------------------------------------------------------------------------
// Algebraic relations

std::size_t required_prefix_length(std::size_t deg_x, std::size_t deg_t)
{
    return (deg_x + 1) * (deg_t + 1) + 5;
}

namespace {

// Powers F^0..F^k truncated to `length` coefficients.
std::vector<std::vector<Integer>> series_powers(const std::vector<Integer>& f, std::size_t k)
{
    const std::size_t length = f.size();
    std::vector<std::vector<Integer>> pw{std::vector<Integer>(length, Integer(0))};
    pw[0][0] = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        std::vector<Integer> next(length, Integer(0));
        for (std::size_t a = 0; a < length; ++a) {
            if (pw[i - 1][a] == 0)
                continue;
            for (std::size_t b = 0; a + b < length; ++b)
                next[a + b] += pw[i - 1][a] * f[b];
        }
        pw.push_back(std::move(next));
    }
    return pw;
}

std::string monomial(std::size_t i, std::size_t j)
{
    std::string s;
    if (j > 0)
        s += j == 1 ? "t" : "t^" + std::to_string(j);
    if (i > 0) {
        if (!s.empty())
            s += "*";
        s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
}

} // namespace

std::string format_relation(const std::vector<std::vector<Integer>>& c)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;)
        for (std::size_t j = c[i].size(); j-- > 0;) {
            const Integer& a = c[i][j];
            if (a == 0)
                continue;
            std::string m = monomial(i, j);
            Integer mag = abs(a);
            if (first)
                os << (a < 0 ? "-" : "");
            else
                os << (a < 0 ? " - " : " + ");
            if (m.empty())
                os << mag;
            else if (mag == 1)
                os << m;
            else
                os << mag << "*" << m;
            first = false;
        }
    return first ? "0" : os.str();
}

bool verify_relation(const AlgebraicRelation& rel, const SeriesPrefix& prefix)
{
    const auto& f = prefix.coefficients;
    if (f.empty() || rel.coefficients.empty())
        return false;
    auto pw = series_powers(f, rel.coefficients.size() - 1);
    bool nonzero = false;
    std::vector<Integer> total(f.size(), Integer(0));
    for (std::size_t i = 0; i < rel.coefficients.size(); ++i)
        for (std::size_t j = 0; j < rel.coefficients[i].size(); ++j) {
            const Integer& c = rel.coefficients[i][j];
            if (c == 0)
                continue;
            nonzero = true;
            for (std::size_t m = j; m < f.size(); ++m)
                total[m] += c * pw[i][m - j];
        }
    return nonzero && std::all_of(total.begin(), total.end(), [](const Integer& x) { return x == 0; });
}

std::optional<AlgebraicRelation> guess_algebraic_relation(const SeriesPrefix& prefix, std::size_t deg_x, std::size_t deg_t)
{
    const auto& f = prefix.coefficients;
    if (deg_x < 1)
        throw Error(ErrorKind::Shape, "x-degree bound must be at least 1");
    if (f.size() < required_prefix_length(deg_x, deg_t))
        throw Error(ErrorKind::PrefixTooShort, "bounds (" + std::to_string(deg_x) + "," + std::to_string(deg_t) +
                                                   ") need " + std::to_string(required_prefix_length(deg_x, deg_t)) +
                                                   " coefficients, have " + std::to_string(f.size()));
    auto pw = series_powers(f, deg_x);
    const std::size_t length = f.size();
    for (std::size_t dx = 1; dx <= deg_x; ++dx)
        for (std::size_t dt = 0; dt <= deg_t; ++dt) {
            // Column (i, j) holds the coefficients of t^j F^i.
            IntMatrix a(length, (dx + 1) * (dt + 1));
            for (std::size_t i = 0; i <= dx; ++i)
                for (std::size_t j = 0; j <= dt; ++j)
                    for (std::size_t m = j; m < length; ++m)
                        a(m, i * (dt + 1) + j) = pw[i][m - j];
            auto kernel = rational_nullspace(a);
            if (kernel.empty())
                continue;
            IntVector v = primitive_integer_vector(kernel.front());
            auto lead = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
            if (lead != v.end() && *lead < 0)
                for (auto& x : v)
                    x = -x;
            AlgebraicRelation rel;
            rel.coefficients.assign(dx + 1, std::vector<Integer>(dt + 1, Integer(0)));
            for (std::size_t i = 0; i <= dx; ++i)
                for (std::size_t j = 0; j <= dt; ++j)
                    rel.coefficients[i][j] = v[i * (dt + 1) + j];
            rel.pretty = format_relation(rel.coefficients);
            if (!verify_relation(rel, prefix))
                throw std::logic_error("nullspace vector fails substitution: " + rel.pretty);
            return rel;
        }
    return std::nullopt;
}

} // namespace gspline
