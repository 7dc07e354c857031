#pragma once

#include "gspline/exactlinalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gspline {

enum class RingKind { Integers, ModN, PrimeField, TruncatedPoly };

/// How the additive group of a ring is presented to the linear algebra layer.
///   Lattice   - Z-coordinates; for Z/nZ the coordinate is an integer lift.
///   ModPrime  - F_p-coordinates.
///   Rational  - Q-coordinates.
enum class ScalarKind { Lattice, ModPrime, Rational };

using Monomial = std::vector<int>;

/// A concrete coefficient ring: Z, Z/nZ, F_p, or k[x_1..x_n]/m^d with k = F_p or Q.
class RingSpec {
public:
    static RingSpec integers();
    static RingSpec mod_n(const Integer& n);
    static RingSpec prime_field(const Integer& p);
    // base_prime == nullopt means the base field is Q.
    static RingSpec truncated_poly(std::optional<Integer> base_prime, int num_vars, int degree);

    RingKind kind() const;
    /// n for ModN, p for PrimeField, the base characteristic for TruncatedPoly over F_p.
    const Integer& modulus() const;
    bool rational_base() const;
    int num_vars() const;
    int degree() const;

    /// Rank of the additive presentation: 1 for the scalar rings, the number of
    /// monomials of degree < d for truncated polynomials.
    std::size_t additive_dim() const;
    const std::vector<Monomial>& monomials() const;
    /// Index of the product of monomials i and j, or npos once it is truncated.
    std::size_t monomial_product(std::size_t i, std::size_t j) const;

    ScalarKind scalars() const;
    /// Characteristic used for ModPrime scalars.
    const Integer& scalar_prime() const;
    bool is_field() const;
    bool is_finite() const;
    /// Cardinality for finite rings.
    std::optional<Integer> order() const;
    /// For ModN: p when n = p^k.
    std::optional<Integer> prime_power_base() const;

    std::string describe() const;

    bool operator==(const RingSpec& other) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    struct Impl;
    explicit RingSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Element of a RingSpec in canonical form. Scalar rings store one integer
/// (residues in [0, n)); truncated polynomials store dense monomial
/// coefficients over the base field.
class RingElement {
public:
    RingElement(RingSpec ring, const Integer& value);
    static RingElement zero(const RingSpec& ring) { return RingElement(ring, 0); }
    static RingElement one(const RingSpec& ring) { return RingElement(ring, 1); }
    static RingElement from_coordinates(const RingSpec& ring, const RatVector& coords);
    static RingElement monomial(const RingSpec& ring, std::size_t index, const Rational& coefficient = 1);

    const RingSpec& ring() const { return ring_; }
    bool is_zero() const;

    /// Scalar-ring value (throws for truncated polynomials).
    const Integer& value() const;
    /// Additive coordinates; length RingSpec::additive_dim().
    RatVector coordinates() const;

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator*(const RingElement& rhs) const;
    RingElement operator-() const;
    bool operator==(const RingElement& rhs) const;

    std::string to_string() const;

private:
    RingElement(RingSpec ring, Integer value, RatVector coeffs);
    void check_same(const RingElement& rhs) const;

    RingSpec ring_;
    Integer value_;
    RatVector coeffs_; // truncated polynomials only
};

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);

/// Finitely generated ideal, stored by generators. Zero generators are dropped,
/// so the zero ideal has an empty generator list.
class Ideal {
public:
    Ideal(RingSpec ring, std::vector<RingElement> generators);
    static Ideal zero(const RingSpec& ring) { return Ideal(ring, {}); }
    static Ideal unit(const RingSpec& ring) { return Ideal(ring, {RingElement::one(ring)}); }

    const RingSpec& ring() const { return ring_; }
    const std::vector<RingElement>& generators() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }

    std::string to_string() const;

private:
    RingSpec ring_;
    std::vector<RingElement> gens_;
};

bool ideal_membership(const RingElement& e, const Ideal& ideal);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
/// Extensional equality: each generator set lies in the other ideal.
bool ideal_equal(const Ideal& a, const Ideal& b);

// Columns span the ideal inside the additive presentation: a lattice for
// Lattice scalars (the Z/nZ case includes the column n), a subspace otherwise.
// Rational columns are scaled to primitive integer vectors.
IntMatrix ideal_quotient_presentation(const Ideal& ideal);

/// Writes e = r_1 + ... + r_k with r_i in ideals[i], or nullopt when e is not
/// in the sum.
std::optional<std::vector<RingElement>> ideal_decompose(const RingElement& e, const std::vector<Ideal>& ideals);

/// Size of the ideal as an additive group in the sense used by Hilbert-Dyck
/// coefficients: dimension over the base field, or number of cyclic factors
/// for Z/nZ.
std::size_t ideal_additive_size(const Ideal& ideal);

} // namespace gspline
