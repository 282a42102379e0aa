#ifndef LCA_LINALG_HPP
#define LCA_LINALG_HPP

#include "mpoly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace lca {

/// Dense matrix over Q, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref()
    {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        Rat tmp;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(p, k), (*this)(r, k));
            Rat inv = 1 / (*this)(r, c);
            for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0) continue;
                Rat f = (*this)(i, c);
                for (std::size_t k = c; k < cols_; ++k) {
                    if ((*this)(r, k) == 0) continue;
                    mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), (*this)(r, k).get_mpq_t());
                    (*this)(i, k) -= tmp;
                }
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        QMatrix copy = *this;
        return copy.rref().size();
    }

    /// Basis of {v : M v = 0}, one vector per free column (free entry = 1).
    std::vector<std::vector<Rat>> nullspace() const
    {
        QMatrix copy = *this;
        auto pivots = copy.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rat>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rat> v(cols_);
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -copy(i, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// A particular solution of M v = b (free variables zero), or nullopt.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const
    {
        QMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<Rat> x(cols_);
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
        return x;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Coefficient matrix of a family of polynomials: column j holds polys[j],
/// rows are indexed by the union of their monomials.
inline QMatrix coefficient_matrix(const std::vector<MPoly>& polys, std::vector<Monomial>* row_monomials = nullptr)
{
    std::map<Monomial, std::size_t> index;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
    std::size_t i = 0;
    for (auto& [m, idx] : index) idx = i++;
    QMatrix mat(index.size(), polys.size());
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (const auto& [m, c] : polys[j].terms()) mat(index[m], j) = c;
    if (row_monomials) {
        row_monomials->clear();
        for (auto& [m, idx] : index) row_monomials->push_back(m);
    }
    return mat;
}

inline MPoly combine(const std::vector<MPoly>& polys, const std::vector<Rat>& coeffs)
{
    PolyAccumulator acc;
    for (std::size_t i = 0; i < polys.size(); ++i) acc.add(polys[i], coeffs[i]);
    return acc.take();
}

/// Coordinates of target in span(polys), or nullopt when it is outside the span.
inline std::optional<std::vector<Rat>> solve_in_span(const std::vector<MPoly>& polys, const MPoly& target)
{
    std::vector<MPoly> all = polys;
    all.push_back(target);
    std::vector<Monomial> rows;
    QMatrix full = coefficient_matrix(all, &rows);
    QMatrix a(full.rows(), polys.size());
    std::vector<Rat> b(full.rows());
    for (std::size_t i = 0; i < full.rows(); ++i) {
        for (std::size_t j = 0; j < polys.size(); ++j) a(i, j) = full(i, j);
        b[i] = full(i, polys.size());
    }
    return a.solve(b);
}

/// target == k * reference for some rational k (k may be 0 only when target is 0).
inline std::optional<Rat> proportionality(const MPoly& target, const MPoly& reference)
{
    if (reference.is_zero()) {
        if (target.is_zero()) return Rat(0);
        return std::nullopt;
    }
    const auto& [m, c] = reference.leading_term();
    Rat k = target.coefficient(m) / c;
    if (target == k * reference) return k;
    return std::nullopt;
}

} // namespace lca

#endif
