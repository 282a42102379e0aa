#ifndef LCA_POLYMATRIX_HPP
#define LCA_POLYMATRIX_HPP

#include "mpoly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lca {

// ---------------------------------------------------------------------------
// Univariate polynomials in ∂. These are MPoly values that only use ∂; dense
// coefficient vectors are used internally for division.

namespace detail {

inline void require_univariate(const MPoly& p, const char* what)
{
    if (!p.uses_only({Var::partial}))
        throw std::invalid_argument(std::string(what) + ": polynomial must be univariate in ∂, got " + p.to_string());
}

inline std::vector<Rat> to_dense(const MPoly& p)
{
    std::vector<Rat> c;
    int d = p.deg_in(Var::partial);
    if (d == kMinusInfinity) return c;
    c.resize(static_cast<std::size_t>(d) + 1);
    for (const auto& [m, v] : p.terms()) c[m.exp(Var::partial)] = v;
    return c;
}

inline MPoly from_dense(const std::vector<Rat>& c)
{
    std::vector<MPoly::Term> ts;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) ts.emplace_back(Monomial::of(Var::partial, static_cast<unsigned>(i)), c[i]);
    return MPoly::from_terms(std::move(ts));
}

} // namespace detail

inline Rat leading_coeff_partial(const MPoly& p)
{
    int d = p.deg_in(Var::partial);
    if (d == kMinusInfinity) return Rat(0);
    return p.coeff_in(Var::partial, static_cast<unsigned>(d)).constant_term();
}

/// Euclidean division in Q[∂]: f = q*g + r with deg r < deg g.
inline std::pair<MPoly, MPoly> udivmod(const MPoly& f, const MPoly& g)
{
    detail::require_univariate(f, "udivmod");
    detail::require_univariate(g, "udivmod");
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    auto r = detail::to_dense(f);
    auto gd = detail::to_dense(g);
    std::size_t dg = gd.size() - 1;
    if (r.size() < gd.size()) return {MPoly{}, f};
    std::vector<Rat> q(r.size() - dg);
    Rat inv_lc = 1 / gd.back();
    for (std::size_t i = r.size(); i-- > dg;) {
        if (r[i] == 0) continue;
        Rat k = r[i] * inv_lc;
        q[i - dg] = k;
        for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] -= k * gd[j];
    }
    r.resize(dg);
    return {detail::from_dense(q), detail::from_dense(r)};
}

inline MPoly make_monic(const MPoly& p)
{
    if (p.is_zero()) return p;
    return (1 / leading_coeff_partial(p)) * p;
}

struct BezoutResult {
    MPoly gcd;
    MPoly s;
    MPoly t;
};

/// Extended Euclid over Q[∂]: s*f + t*g = gcd with gcd monic.
inline BezoutResult bezout(const MPoly& f, const MPoly& g)
{
    detail::require_univariate(f, "bezout");
    detail::require_univariate(g, "bezout");
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("bezout: both inputs are zero");
    MPoly r0 = f, r1 = g, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = udivmod(r0, r1);
        MPoly s2 = s0 - q * s1;
        MPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rat inv = 1 / leading_coeff_partial(r0);
    return {inv * r0, inv * s0, inv * t0};
}

inline MPoly ugcd(const MPoly& f, const MPoly& g)
{
    if (f.is_zero() && g.is_zero()) return {};
    return bezout(f, g).gcd;
}

/// Exact quotient in Q[∂], or nullopt when g does not divide f.
inline std::optional<MPoly> udiv_exact(const MPoly& f, const MPoly& g)
{
    auto [q, r] = udivmod(f, g);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

// ---------------------------------------------------------------------------

/// Dense matrix over Q[∂].
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    PolyMatrix(std::initializer_list<std::initializer_list<MPoly>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& e : row) data_.push_back(e);
        }
        for (const auto& e : data_) detail::require_univariate(e, "PolyMatrix");
    }

    static PolyMatrix identity(std::size_t n)
    {
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = MPoly(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    MPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const MPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool row_is_zero(std::size_t r) const
    {
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) return false;
        return true;
    }

    int max_degree() const
    {
        int d = kMinusInfinity;
        for (const auto& e : data_) d = std::max(d, e.deg_in(Var::partial));
        return d;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    /// row[target] += k * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const MPoly& k)
    {
        if (k.is_zero()) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) += k * (*this)(source, c);
    }

    void scale_row(std::size_t r, const Rat& k)
    {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = k * (*this)(r, c);
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        PolyMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                MPoly s;
                for (std::size_t k = 0; k < a.cols_; ++k) s += a(i, k) * b(k, j);
                r(i, j) = std::move(s);
            }
        return r;
    }

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<MPoly> data_;
};

inline MPoly det2(const PolyMatrix& m)
{
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("det2 needs a 2x2 matrix");
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Inverse over Q[∂]; exists iff the determinant is a nonzero constant.
inline std::optional<PolyMatrix> inverse2(const PolyMatrix& m)
{
    MPoly det = det2(m);
    if (det.is_zero() || !det.is_constant()) return std::nullopt;
    Rat inv = 1 / det.constant_term();
    PolyMatrix r(2, 2);
    r(0, 0) = inv * m(1, 1);
    r(0, 1) = -inv * m(0, 1);
    r(1, 0) = -inv * m(1, 0);
    r(1, 1) = inv * m(0, 0);
    return r;
}

struct HermiteResult {
    PolyMatrix h; ///< row echelon, monic pivots, entries above pivots reduced; zero rows last
    PolyMatrix u; ///< unimodular with u * m == h
    std::vector<std::size_t> pivot_cols;
};

/// Row Hermite normal form over the PID Q[∂].
inline HermiteResult hermite_form(const PolyMatrix& m)
{
    PolyMatrix h = m, u = PolyMatrix::identity(m.rows());
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        for (;;) {
            // Smallest-degree nonzero entry at or below row r.
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < m.rows(); ++i) {
                if (h(i, col).is_zero()) continue;
                if (!best || h(i, col).deg_in(Var::partial) < h(*best, col).deg_in(Var::partial)) best = i;
            }
            if (!best) break;
            bool others = false;
            for (std::size_t i = r; i < m.rows(); ++i) {
                if (i == *best || h(i, col).is_zero()) continue;
                auto q = udivmod(h(i, col), h(*best, col)).first;
                h.add_row_multiple(i, *best, -q);
                u.add_row_multiple(i, *best, -q);
                if (!h(i, col).is_zero()) others = true;
            }
            if (others) continue;
            h.swap_rows(r, *best);
            u.swap_rows(r, *best);
            Rat inv = 1 / leading_coeff_partial(h(r, col));
            h.scale_row(r, inv);
            u.scale_row(r, inv);
            for (std::size_t i = 0; i < r; ++i) {
                auto q = udivmod(h(i, col), h(r, col)).first;
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
            }
            pivots.push_back(col);
            ++r;
            break;
        }
    }
    return {std::move(h), std::move(u), std::move(pivots)};
}

} // namespace lca

#endif
