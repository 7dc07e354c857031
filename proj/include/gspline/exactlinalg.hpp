#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gspline {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows);
    // Columns of equal length `height`; needed so that an empty column list
    // still has a well-defined row count.
    static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t height);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Integer> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    IntVector column(std::size_t c) const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

struct SNFResult {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

// U * A * V = D with D diagonal, nonnegative, and d_i | d_{i+1}. Pivot rule:
// smallest nonzero absolute value in the active block, ties to the lowest
// row-major index.
SNFResult smith_normal_form(const IntMatrix& a);

/// Diagonal of D from smith_normal_form, length min(rows, cols).
std::vector<Integer> smith_invariants(const IntMatrix& a);

/// Column Hermite form H = A * T with T unimodular.
struct ColumnHermite {
    IntMatrix H;
    IntMatrix T;
    std::vector<std::size_t> pivot_rows; // pivot_rows[k] = row of the pivot of column k
};

// Pivots are positive and each column's first nonzero row strictly increases;
// entries to the left of a pivot are reduced into [0, pivot).
ColumnHermite column_hermite(const IntMatrix& a);

/// Lattice basis of {x in Z^cols : A x = 0}, in Hermite normal form.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Canonical (column Hermite) basis of the lattice spanned by `generators`.
/// All generators must share one length. Idempotent and order independent.
std::vector<IntVector> lattice_hnf(const std::vector<IntVector>& generators);

/// Some x in Z^cols with A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

bool is_prime(const Integer& n);

/// Basis of the right nullspace of A over F_p. Throws InvalidModulus.
std::vector<IntVector> nullspace_mod_p(const IntMatrix& a, const Integer& p);
std::size_t rank_mod_p(const IntMatrix& a, const Integer& p);
std::optional<IntVector> solve_mod_p(const IntMatrix& a, const IntVector& b, const Integer& p);
/// Reduced row echelon basis of the span of `vectors` over F_p.
std::vector<IntVector> row_basis_mod_p(const std::vector<IntVector>& vectors, const Integer& p);

std::vector<RatVector> rational_nullspace(const IntMatrix& a);
std::size_t rank_rational(const IntMatrix& a);
std::optional<RatVector> solve_rational(const IntMatrix& a, const RatVector& b);
std::vector<RatVector> row_basis_rational(const std::vector<RatVector>& vectors);

/// Scales a rational vector to a primitive integer vector (zero stays zero).
IntVector primitive_integer_vector(const RatVector& v);

} // namespace gspline
