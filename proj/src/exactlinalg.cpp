#include "gspline/exactlinalg.hpp"

#include "gspline/error.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace gspline {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Shape: return "Shape";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::InvalidRing: return "InvalidRing";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::CycleContraction: return "CycleContraction";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::BadStructure: return "BadStructure";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::BadVertex: return "BadVertex";
    case ErrorKind::BadContraction: return "BadContraction";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NotCutVertex: return "NotCutVertex";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NotABridgePath: return "NotABridgePath";
    case ErrorKind::NotDegreeTwoPath: return "NotDegreeTwoPath";
    case ErrorKind::NotDyck: return "NotDyck";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0))
{
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows)
{
    if (rows.empty())
        return {};
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw Error(ErrorKind::Shape, "ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t height)
{
    IntMatrix m(height, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != height)
            throw Error(ErrorKind::Shape, "column length does not match matrix height");
        for (std::size_t r = 0; r < height; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error(ErrorKind::Shape, "matrix product dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& rhs) const
{
    if (cols_ != rhs.size())
        throw Error(ErrorKind::Shape, "matrix-vector dimension mismatch");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            out[i] += (*this)(i, k) * rhs[k];
    return out;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

namespace {

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_positive(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Elementary operations on a matrix, mirrored onto a transform.
void swap_rows(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t r = 0; r < m.rows(); ++r)
        std::swap(m(r, a), m(r, b));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(src, c) != 0)
            m(dst, c) -= q * m(src, c);
}

// col[dst] -= q * col[src]
void sub_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m(r, src) != 0)
            m(r, dst) -= q * m(r, src);
}

void negate_row(IntMatrix& m, std::size_t r)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(r, c) = -m(r, c);
}

void negate_col(IntMatrix& m, std::size_t c)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
        m(r, c) = -m(r, c);
}

} // namespace

// ---------------------------------------------------------------------------
// Smith normal form

SNFResult smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix D = a;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero |entry| in the active block.
            bool found = false;
            std::size_t pi = t, pj = t;
            Integer best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) == 0)
                        continue;
                    Integer mag = abs(D(i, j));
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found)
                return {std::move(U), std::move(D), std::move(V)};

            swap_rows(D, t, pi);
            swap_rows(U, t, pi);
            swap_cols(D, t, pj);
            swap_cols(V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0)
                    continue;
                Integer q = floor_div(D(i, t), D(t, t));
                sub_row(D, i, t, q);
                sub_row(U, i, t, q);
                if (D(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0)
                    continue;
                Integer q = floor_div(D(t, j), D(t, t));
                sub_col(D, j, t, q);
                sub_col(V, j, t, q);
                if (D(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Divisibility: fold an offending row into the pivot row.
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (mod_positive(D(i, j), abs(D(t, t))) != 0) {
                        for (std::size_t c = 0; c < n; ++c)
                            D(t, c) += D(i, c);
                        for (std::size_t c = 0; c < m; ++c)
                            U(t, c) += U(i, c);
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (D(t, t) < 0) {
            negate_row(D, t);
            negate_row(U, t);
        }
    }
    return {std::move(U), std::move(D), std::move(V)};
}

std::vector<Integer> smith_invariants(const IntMatrix& a)
{
    SNFResult r = smith_normal_form(a);
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        d.push_back(r.D(i, i));
    return d;
}

// ---------------------------------------------------------------------------
// Hermite forms, kernels, lattice solving

ColumnHermite column_hermite(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix H = a;
    IntMatrix T = IntMatrix::identity(n);
    std::vector<std::size_t> pivots;

    std::size_t k = 0;
    for (std::size_t r = 0; r < m && k < n; ++r) {
        bool have_pivot = false;
        for (;;) {
            bool found = false;
            std::size_t pj = k;
            Integer best;
            for (std::size_t j = k; j < n; ++j) {
                if (H(r, j) == 0)
                    continue;
                Integer mag = abs(H(r, j));
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pj = j;
                }
            }
            if (!found)
                break;
            have_pivot = true;
            swap_cols(H, k, pj);
            swap_cols(T, k, pj);
            bool done = true;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (H(r, j) == 0)
                    continue;
                Integer q = floor_div(H(r, j), H(r, k));
                sub_col(H, j, k, q);
                sub_col(T, j, k, q);
                if (H(r, j) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (!have_pivot)
            continue;
        if (H(r, k) < 0) {
            negate_col(H, k);
            negate_col(T, k);
        }
        for (std::size_t j = 0; j < k; ++j) {
            Integer q = floor_div(H(r, j), H(r, k));
            if (q != 0) {
                sub_col(H, j, k, q);
                sub_col(T, j, k, q);
            }
        }
        pivots.push_back(r);
        ++k;
    }
    return {std::move(H), std::move(T), std::move(pivots)};
}

std::vector<IntVector> integer_kernel(const IntMatrix& a)
{
    ColumnHermite ch = column_hermite(a);
    std::vector<IntVector> basis;
    for (std::size_t j = ch.pivot_rows.size(); j < a.cols(); ++j)
        basis.push_back(ch.T.column(j));
    if (basis.empty())
        return basis;
    return lattice_hnf(basis);
}

std::vector<IntVector> lattice_hnf(const std::vector<IntVector>& generators)
{
    if (generators.empty())
        return {};
    const std::size_t dim = generators.front().size();
    ColumnHermite ch = column_hermite(IntMatrix::from_columns(generators, dim));
    std::vector<IntVector> basis;
    basis.reserve(ch.pivot_rows.size());
    for (std::size_t j = 0; j < ch.pivot_rows.size(); ++j)
        basis.push_back(ch.H.column(j));
    return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b)
{
    if (b.size() != a.rows())
        throw Error(ErrorKind::Shape, "right-hand side length does not match matrix rows");
    ColumnHermite ch = column_hermite(a);
    // H y = b by forward substitution along pivot rows; then x = T y.
    const std::size_t rank = ch.pivot_rows.size();
    IntVector y(a.cols(), Integer(0));
    IntVector residual = b;
    for (std::size_t k = 0; k < rank; ++k) {
        const std::size_t r = ch.pivot_rows[k];
        // Rows strictly between pivots must already be satisfied.
        const std::size_t prev = k == 0 ? 0 : ch.pivot_rows[k - 1] + 1;
        for (std::size_t rr = prev; rr < r; ++rr)
            if (residual[rr] != 0)
                return std::nullopt;
        if (!mpz_divisible_p(residual[r].get_mpz_t(), ch.H(r, k).get_mpz_t()))
            return std::nullopt;
        y[k] = residual[r] / ch.H(r, k);
        for (std::size_t rr = r; rr < a.rows(); ++rr)
            residual[rr] -= y[k] * ch.H(rr, k);
    }
    for (const Integer& x : residual)
        if (x != 0)
            return std::nullopt;
    return ch.T * y;
}

// ---------------------------------------------------------------------------
// Field linear algebra

bool is_prime(const Integer& n)
{
    if (n < 2)
        return false;
    if (n < Integer(1) << 40) {
        unsigned long long v = n.get_ui();
        if (n.fits_ulong_p()) {
            if (v < 4)
                return true;
            if (v % 2 == 0)
                return false;
            for (unsigned long long d = 3; d * d <= v; d += 2)
                if (v % d == 0)
                    return false;
            return true;
        }
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

void require_prime(const Integer& p)
{
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidModulus, "modulus " + p.get_str() + " is not prime");
}

// Field element policies for a shared row-reduction routine.
struct ModP {
    Integer p;
    using Value = Integer;
    Value reduce(const Value& x) const { return mod_positive(x, p); }
    bool zero(const Value& x) const { return x == 0; }
    Value inverse(const Value& x) const
    {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        return inv;
    }
    Value mul(const Value& a, const Value& b) const { return reduce(a * b); }
    Value sub(const Value& a, const Value& b) const { return reduce(a - b); }
    Value neg(const Value& a) const { return reduce(-a); }
};

struct QField {
    using Value = Rational;
    Value reduce(const Value& x) const { return x; }
    bool zero(const Value& x) const { return x == 0; }
    Value inverse(const Value& x) const { return Rational(1) / x; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
};

// In-place reduced row echelon form; returns pivot columns.
template <typename F>
std::vector<std::size_t> rref(std::vector<std::vector<typename F::Value>>& rows, std::size_t ncols, const F& f)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (!f.zero(rows[i][c])) {
                sel = i;
                break;
            }
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        auto inv = f.inverse(rows[r][c]);
        for (auto& x : rows[r])
            x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || f.zero(rows[i][c]))
                continue;
            auto factor = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (!f.zero(rows[r][j]))
                    rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

template <typename F>
std::vector<std::vector<typename F::Value>> rows_of(const IntMatrix& a, const F& f)
{
    std::vector<std::vector<typename F::Value>> rows(a.rows(), std::vector<typename F::Value>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            rows[i][j] = f.reduce(typename F::Value(a(i, j)));
    return rows;
}

template <typename F>
std::vector<std::vector<typename F::Value>> nullspace(const IntMatrix& a, const F& f)
{
    auto rows = rows_of(a, f);
    auto pivots = rref(rows, a.cols(), f);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<typename F::Value>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<typename F::Value> v(a.cols(), typename F::Value(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = f.neg(rows[i][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves A x = b by row reducing the augmented matrix.
template <typename F>
std::optional<std::vector<typename F::Value>> solve(const IntMatrix& a, std::vector<typename F::Value> b, const F& f)
{
    if (b.size() != a.rows())
        throw Error(ErrorKind::Shape, "right-hand side length does not match matrix rows");
    auto rows = rows_of(a, f);
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].push_back(f.reduce(b[i]));
    auto pivots = rref(rows, a.cols() + 1, f);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    std::vector<typename F::Value> x(a.cols(), typename F::Value(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = rows[i][a.cols()];
    return x;
}

} // namespace

std::vector<IntVector> nullspace_mod_p(const IntMatrix& a, const Integer& p)
{
    require_prime(p);
    return nullspace(a, ModP{p});
}

std::size_t rank_mod_p(const IntMatrix& a, const Integer& p)
{
    require_prime(p);
    ModP f{p};
    auto rows = rows_of(a, f);
    return rref(rows, a.cols(), f).size();
}

std::optional<IntVector> solve_mod_p(const IntMatrix& a, const IntVector& b, const Integer& p)
{
    require_prime(p);
    return solve(a, b, ModP{p});
}

std::vector<IntVector> row_basis_mod_p(const std::vector<IntVector>& vectors, const Integer& p)
{
    require_prime(p);
    if (vectors.empty())
        return {};
    ModP f{p};
    std::vector<IntVector> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        IntVector r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            r[i] = f.reduce(v[i]);
        rows.push_back(std::move(r));
    }
    rref(rows, vectors.front().size(), f);
    return rows;
}

std::vector<RatVector> rational_nullspace(const IntMatrix& a)
{
    return nullspace(a, QField{});
}

std::size_t rank_rational(const IntMatrix& a)
{
    QField f;
    auto rows = rows_of(a, f);
    return rref(rows, a.cols(), f).size();
}

std::optional<RatVector> solve_rational(const IntMatrix& a, const RatVector& b)
{
    return solve(a, b, QField{});
}

std::vector<RatVector> row_basis_rational(const std::vector<RatVector>& vectors)
{
    if (vectors.empty())
        return {};
    std::vector<RatVector> rows = vectors;
    rref(rows, vectors.front().size(), QField{});
    return rows;
}

IntVector primitive_integer_vector(const RatVector& v)
{
    Integer den = 1;
    for (const auto& x : v)
        den = lcm(den, Integer(x.get_den()));
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * den;
        out[i] = scaled.get_num();
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out)
            x /= g;
    return out;
}

} // namespace gspline
