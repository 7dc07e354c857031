#include "gspline/rings.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gspline {

struct RingSpec::Impl {
    RingKind kind;
    Integer modulus;        // n, p, or base prime
    bool rational_base = false;
    int num_vars = 0;
    int degree = 0;
    std::vector<Monomial> monomials;
    std::vector<std::size_t> product; // monomials.size()^2 table
};

namespace {

Integer mod_positive(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Degree-graded, then lexicographically descending: 1, x1, x2, x1^2, x1x2, ...
std::vector<Monomial> graded_monomials(int num_vars, int degree)
{
    std::vector<Monomial> out;
    for (int total = 0; total < degree; ++total) {
        std::vector<Monomial> layer;
        Monomial m(num_vars, 0);
        // Compositions of `total` into num_vars parts.
        auto rec = [&](auto&& self, int var, int remaining) -> void {
            if (var == num_vars - 1) {
                m[var] = remaining;
                layer.push_back(m);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                m[var] = e;
                self(self, var + 1, remaining - e);
            }
        };
        rec(rec, 0, total);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace

RingSpec RingSpec::integers()
{
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::Integers;
    return RingSpec(impl);
}

RingSpec RingSpec::mod_n(const Integer& n)
{
    if (n < 2)
        throw Error(ErrorKind::InvalidRing, "Z/nZ requires n >= 2, got " + n.get_str());
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::ModN;
    impl->modulus = n;
    return RingSpec(impl);
}

RingSpec RingSpec::prime_field(const Integer& p)
{
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidRing, "F_p requires a prime, got " + p.get_str());
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::PrimeField;
    impl->modulus = p;
    return RingSpec(impl);
}

RingSpec RingSpec::truncated_poly(std::optional<Integer> base_prime, int num_vars, int degree)
{
    if (num_vars < 1 || degree < 1)
        throw Error(ErrorKind::InvalidRing, "truncated polynomial ring needs n >= 1 and d >= 1");
    if (base_prime && !is_prime(*base_prime))
        throw Error(ErrorKind::InvalidRing, "base field characteristic must be prime, got " + base_prime->get_str());
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::TruncatedPoly;
    impl->rational_base = !base_prime.has_value();
    impl->modulus = base_prime.value_or(Integer(0));
    impl->num_vars = num_vars;
    impl->degree = degree;
    impl->monomials = graded_monomials(num_vars, degree);
    const std::size_t count = impl->monomials.size();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < count; ++i)
        index.emplace(impl->monomials[i], i);
    impl->product.assign(count * count, npos);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            Monomial m(num_vars);
            for (int v = 0; v < num_vars; ++v)
                m[v] = impl->monomials[i][v] + impl->monomials[j][v];
            auto it = index.find(m);
            if (it != index.end())
                impl->product[i * count + j] = it->second;
        }
    return RingSpec(impl);
}

RingKind RingSpec::kind() const { return impl_->kind; }
const Integer& RingSpec::modulus() const { return impl_->modulus; }
bool RingSpec::rational_base() const { return impl_->rational_base; }
int RingSpec::num_vars() const { return impl_->num_vars; }
int RingSpec::degree() const { return impl_->degree; }

std::size_t RingSpec::additive_dim() const
{
    return impl_->kind == RingKind::TruncatedPoly ? impl_->monomials.size() : 1;
}

const std::vector<Monomial>& RingSpec::monomials() const { return impl_->monomials; }

std::size_t RingSpec::monomial_product(std::size_t i, std::size_t j) const
{
    return impl_->product[i * impl_->monomials.size() + j];
}

ScalarKind RingSpec::scalars() const
{
    switch (impl_->kind) {
    case RingKind::Integers:
    case RingKind::ModN: return ScalarKind::Lattice;
    case RingKind::PrimeField: return ScalarKind::ModPrime;
    case RingKind::TruncatedPoly: return impl_->rational_base ? ScalarKind::Rational : ScalarKind::ModPrime;
    }
    return ScalarKind::Lattice;
}

const Integer& RingSpec::scalar_prime() const { return impl_->modulus; }

bool RingSpec::is_field() const
{
    return impl_->kind == RingKind::PrimeField || (impl_->kind == RingKind::TruncatedPoly && impl_->degree == 1);
}

bool RingSpec::is_finite() const
{
    return impl_->kind == RingKind::ModN || impl_->kind == RingKind::PrimeField ||
           (impl_->kind == RingKind::TruncatedPoly && !impl_->rational_base);
}

std::optional<Integer> RingSpec::order() const
{
    switch (impl_->kind) {
    case RingKind::ModN:
    case RingKind::PrimeField: return impl_->modulus;
    case RingKind::TruncatedPoly: {
        if (impl_->rational_base)
            return std::nullopt;
        Integer o;
        mpz_pow_ui(o.get_mpz_t(), impl_->modulus.get_mpz_t(), impl_->monomials.size());
        return o;
    }
    case RingKind::Integers: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Integer> RingSpec::prime_power_base() const
{
    if (impl_->kind == RingKind::PrimeField)
        return impl_->modulus;
    if (impl_->kind != RingKind::ModN)
        return std::nullopt;
    Integer n = impl_->modulus;
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        while (n % p == 0)
            n /= p;
        if (n == 1)
            return p;
        return std::nullopt;
    }
    return n; // n itself is prime
}

std::string RingSpec::describe() const
{
    switch (impl_->kind) {
    case RingKind::Integers: return "Z";
    case RingKind::ModN: return "Z/" + impl_->modulus.get_str();
    case RingKind::PrimeField: return "F_" + impl_->modulus.get_str();
    case RingKind::TruncatedPoly: {
        std::string base = impl_->rational_base ? "Q" : "F_" + impl_->modulus.get_str();
        return base + "[x1..x" + std::to_string(impl_->num_vars) + "]/m^" + std::to_string(impl_->degree);
    }
    }
    return "?";
}

bool RingSpec::operator==(const RingSpec& other) const
{
    if (impl_ == other.impl_)
        return true;
    const Impl& a = *impl_;
    const Impl& b = *other.impl_;
    return a.kind == b.kind && a.modulus == b.modulus && a.rational_base == b.rational_base &&
           a.num_vars == b.num_vars && a.degree == b.degree;
}

// ---------------------------------------------------------------------------
// RingElement

namespace {

Rational reduce_coefficient(const RingSpec& ring, const Rational& c)
{
    if (ring.rational_base())
        return c;
    if (c.get_den() != 1) {
        // c = a/b in F_p means a * b^{-1}.
        Integer inv;
        Integer den = c.get_den();
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ring.modulus().get_mpz_t()) == 0)
            throw Error(ErrorKind::InvalidRing, "denominator not invertible in base field");
        return Rational(mod_positive(Integer(c.get_num()) * inv, ring.modulus()));
    }
    return Rational(mod_positive(Integer(c.get_num()), ring.modulus()));
}

} // namespace

RingElement::RingElement(RingSpec ring, Integer value, RatVector coeffs)
    : ring_(std::move(ring)), value_(std::move(value)), coeffs_(std::move(coeffs))
{
}

RingElement::RingElement(RingSpec ring, const Integer& value) : ring_(std::move(ring))
{
    switch (ring_.kind()) {
    case RingKind::Integers: value_ = value; break;
    case RingKind::ModN:
    case RingKind::PrimeField: value_ = mod_positive(value, ring_.modulus()); break;
    case RingKind::TruncatedPoly:
        coeffs_.assign(ring_.additive_dim(), Rational(0));
        coeffs_[0] = reduce_coefficient(ring_, Rational(value));
        break;
    }
}

RingElement RingElement::from_coordinates(const RingSpec& ring, const RatVector& coords)
{
    if (coords.size() != ring.additive_dim())
        throw Error(ErrorKind::Shape, "coordinate vector has wrong length for " + ring.describe());
    if (ring.kind() == RingKind::TruncatedPoly) {
        RatVector c(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i)
            c[i] = reduce_coefficient(ring, coords[i]);
        return RingElement(ring, Integer(0), std::move(c));
    }
    if (coords[0].get_den() != 1)
        throw Error(ErrorKind::Shape, "non-integral coordinate for " + ring.describe());
    return RingElement(ring, Integer(coords[0].get_num()));
}

RingElement RingElement::monomial(const RingSpec& ring, std::size_t index, const Rational& coefficient)
{
    if (ring.kind() != RingKind::TruncatedPoly)
        throw Error(ErrorKind::RingMismatch, "monomials exist only in truncated polynomial rings");
    RatVector c(ring.additive_dim(), Rational(0));
    c.at(index) = coefficient;
    return from_coordinates(ring, c);
}

bool RingElement::is_zero() const
{
    if (ring_.kind() == RingKind::TruncatedPoly)
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
    return value_ == 0;
}

const Integer& RingElement::value() const
{
    if (ring_.kind() == RingKind::TruncatedPoly)
        throw Error(ErrorKind::RingMismatch, "value() is undefined for polynomial elements");
    return value_;
}

RatVector RingElement::coordinates() const
{
    if (ring_.kind() == RingKind::TruncatedPoly)
        return coeffs_;
    return {Rational(value_)};
}

void RingElement::check_same(const RingElement& rhs) const
{
    if (!(ring_ == rhs.ring_))
        throw Error(ErrorKind::RingMismatch, ring_.describe() + " vs " + rhs.ring_.describe());
}

RingElement RingElement::operator+(const RingElement& rhs) const
{
    check_same(rhs);
    if (ring_.kind() == RingKind::TruncatedPoly) {
        RatVector c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = reduce_coefficient(ring_, coeffs_[i] + rhs.coeffs_[i]);
        return RingElement(ring_, Integer(0), std::move(c));
    }
    return RingElement(ring_, value_ + rhs.value_);
}

RingElement RingElement::operator-(const RingElement& rhs) const
{
    check_same(rhs);
    return *this + (-rhs);
}

RingElement RingElement::operator-() const
{
    if (ring_.kind() == RingKind::TruncatedPoly) {
        RatVector c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = reduce_coefficient(ring_, -coeffs_[i]);
        return RingElement(ring_, Integer(0), std::move(c));
    }
    return RingElement(ring_, Integer(-value_));
}

RingElement RingElement::operator*(const RingElement& rhs) const
{
    check_same(rhs);
    if (ring_.kind() == RingKind::TruncatedPoly) {
        RatVector c(coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (rhs.coeffs_[j] == 0)
                    continue;
                std::size_t k = ring_.monomial_product(i, j);
                if (k != RingSpec::npos)
                    c[k] += coeffs_[i] * rhs.coeffs_[j];
            }
        }
        for (auto& x : c)
            x = reduce_coefficient(ring_, x);
        return RingElement(ring_, Integer(0), std::move(c));
    }
    return RingElement(ring_, value_ * rhs.value_);
}

bool RingElement::operator==(const RingElement& rhs) const
{
    return ring_ == rhs.ring_ && value_ == rhs.value_ && coeffs_ == rhs.coeffs_;
}

std::string RingElement::to_string() const
{
    if (ring_.kind() != RingKind::TruncatedPoly)
        return value_.get_str();
    std::ostringstream os;
    bool first = true;
    const auto& mons = ring_.monomials();
    for (std::size_t i = mons.size(); i-- > 0;) {
        if (coeffs_[i] == 0)
            continue;
        std::string mono;
        for (std::size_t v = 0; v < mons[i].size(); ++v) {
            if (mons[i][v] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += "x" + std::to_string(v + 1);
            if (mons[i][v] > 1)
                mono += "^" + std::to_string(mons[i][v]);
        }
        Rational c = coeffs_[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Rational mag = abs(c);
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << "*" << mono;
        first = false;
    }
    return first ? "0" : os.str();
}

RingElement ring_add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement ring_sub(const RingElement& a, const RingElement& b) { return a - b; }
RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }
RingElement ring_neg(const RingElement& a) { return -a; }

// ---------------------------------------------------------------------------
// Ideals

Ideal::Ideal(RingSpec ring, std::vector<RingElement> generators) : ring_(std::move(ring))
{
    for (auto& g : generators) {
        if (!(g.ring() == ring_))
            throw Error(ErrorKind::RingMismatch, "ideal generator " + g.to_string() + " lives in " +
                                                     g.ring().describe() + ", not " + ring_.describe());
        if (ring_.kind() == RingKind::TruncatedPoly && g.coordinates()[0] == 0) {
            // Fine: degree bound is automatic for canonical elements.
        }
        if (!g.is_zero())
            gens_.push_back(std::move(g));
    }
}

std::string Ideal::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i)
            s += ", ";
        s += gens_[i].to_string();
    }
    return s.empty() || gens_.empty() ? "(0)" : s + ")";
}

namespace {

Integer lattice_gcd(const Ideal& ideal)
{
    Integer g = ideal.ring().kind() == RingKind::ModN ? ideal.ring().modulus() : Integer(0);
    for (const auto& x : ideal.generators())
        g = gcd(g, x.value());
    return g;
}

// Coordinates of e as an integer vector (Lattice / ModPrime scalars).
IntVector integer_coordinates(const RingElement& e)
{
    RatVector c = e.coordinates();
    IntVector out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = c[i].get_num();
    return out;
}

void require_same_ring(const RingSpec& a, const RingSpec& b)
{
    if (!(a == b))
        throw Error(ErrorKind::RingMismatch, a.describe() + " vs " + b.describe());
}

} // namespace

IntMatrix ideal_quotient_presentation(const Ideal& ideal)
{
    const RingSpec& ring = ideal.ring();
    const std::size_t dim = ring.additive_dim();
    std::vector<IntVector> cols;
    switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
        for (const auto& g : ideal.generators())
            cols.push_back({g.value()});
        break;
    case RingKind::ModN:
        for (const auto& g : ideal.generators())
            cols.push_back({g.value()});
        cols.push_back({ring.modulus()});
        break;
    case RingKind::TruncatedPoly:
        for (const auto& g : ideal.generators())
            for (std::size_t m = 0; m < dim; ++m) {
                RingElement prod = RingElement::monomial(ring, m) * g;
                if (prod.is_zero())
                    continue;
                cols.push_back(primitive_integer_vector(prod.coordinates()));
            }
        break;
    }
    return IntMatrix::from_columns(cols, dim);
}

bool ideal_membership(const RingElement& e, const Ideal& ideal)
{
    require_same_ring(e.ring(), ideal.ring());
    if (e.is_zero())
        return true;
    const RingSpec& ring = ideal.ring();
    switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::ModN: {
        Integer g = lattice_gcd(ideal);
        return g != 0 && mpz_divisible_p(e.value().get_mpz_t(), g.get_mpz_t());
    }
    case RingKind::PrimeField: return !ideal.is_zero();
    case RingKind::TruncatedPoly: {
        if (ideal.is_zero())
            return false;
        IntMatrix pres = ideal_quotient_presentation(ideal);
        if (ring.rational_base())
            return solve_rational(pres, e.coordinates()).has_value();
        return solve_mod_p(pres, integer_coordinates(e), ring.modulus()).has_value();
    }
    }
    return false;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b)
{
    require_same_ring(a.ring(), b.ring());
    std::vector<RingElement> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.ring(), std::move(gens));
}

bool ideal_equal(const Ideal& a, const Ideal& b)
{
    if (!(a.ring() == b.ring()))
        return false;
    for (const auto& g : a.generators())
        if (!ideal_membership(g, b))
            return false;
    for (const auto& g : b.generators())
        if (!ideal_membership(g, a))
            return false;
    return true;
}

std::optional<std::vector<RingElement>> ideal_decompose(const RingElement& e, const std::vector<Ideal>& ideals)
{
    const RingSpec& ring = e.ring();
    for (const auto& I : ideals)
        require_same_ring(ring, I.ring());
    std::vector<RingElement> parts(ideals.size(), RingElement::zero(ring));
    if (e.is_zero())
        return parts;

    const std::size_t dim = ring.additive_dim();
    std::vector<IntMatrix> blocks;
    std::vector<IntVector> cols;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        IntMatrix p = ideal_quotient_presentation(ideals[i]);
        for (std::size_t c = 0; c < p.cols(); ++c) {
            cols.push_back(p.column(c));
            owner.push_back(i);
        }
    }
    IntMatrix all = IntMatrix::from_columns(cols, dim);

    std::vector<RatVector> partial(ideals.size(), RatVector(dim, Rational(0)));
    auto accumulate = [&](const auto& coeff) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < dim; ++r)
                partial[owner[c]][r] += Rational(coeff[c]) * Rational(cols[c][r]);
    };
    switch (ring.scalars()) {
    case ScalarKind::Lattice: {
        auto x = solve_integer(all, integer_coordinates(e));
        if (!x)
            return std::nullopt;
        accumulate(*x);
        break;
    }
    case ScalarKind::ModPrime: {
        auto x = solve_mod_p(all, integer_coordinates(e), ring.scalar_prime());
        if (!x)
            return std::nullopt;
        accumulate(*x);
        break;
    }
    case ScalarKind::Rational: {
        auto x = solve_rational(all, e.coordinates());
        if (!x)
            return std::nullopt;
        accumulate(*x);
        break;
    }
    }
    for (std::size_t i = 0; i < ideals.size(); ++i)
        parts[i] = RingElement::from_coordinates(ring, partial[i]);
    return parts;
}

std::size_t ideal_additive_size(const Ideal& ideal)
{
    const RingSpec& ring = ideal.ring();
    switch (ring.kind()) {
    case RingKind::Integers: return ideal.is_zero() ? 0 : 1;
    case RingKind::ModN: {
        // gZ/nZ is cyclic of order n/g.
        return lattice_gcd(ideal) == ring.modulus() ? 0 : 1;
    }
    case RingKind::PrimeField: return ideal.is_zero() ? 0 : 1;
    case RingKind::TruncatedPoly: {
        IntMatrix pres = ideal_quotient_presentation(ideal);
        return ring.rational_base() ? rank_rational(pres) : rank_mod_p(pres, ring.modulus());
    }
    }
    return 0;
}

} // namespace gspline
