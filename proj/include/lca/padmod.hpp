#ifndef LCA_PADMOD_HPP
#define LCA_PADMOD_HPP

#include "lca.hpp"

#include <stdexcept>
#include <vector>

namespace lca {

/// Submodule of Q[∂]X¹ ⊕ Q[∂]X², stored as the nonzero rows of a Hermite form.
class Submodule {
public:
    Submodule() = default;

    static Submodule full()
    {
        Submodule s;
        s.basis_ = {Element::basis(0), Element::basis(1)};
        s.pivots_ = {0, 1};
        return s;
    }

    const std::vector<Element>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }

    bool contains(const Element& e) const
    {
        Element rest = e;
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            std::size_t p = pivots_[r];
            if (rest[p].is_zero()) continue;
            auto [q, rem] = udivmod(rest[p], basis_[r][p]);
            if (!rem.is_zero()) return false;
            rest = rest - q * basis_[r];
        }
        return rest.is_zero();
    }

    bool contains(const Submodule& other) const
    {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const Submodule& a, const Submodule& b) { return a.basis_ == b.basis_; }

    friend Submodule span(const std::vector<Element>& gens);

private:
    std::vector<Element> basis_;
    std::vector<std::size_t> pivots_;
};

inline Submodule span(const std::vector<Element>& gens)
{
    Submodule s;
    if (gens.empty()) return s;
    PolyMatrix m(gens.size(), 2);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            detail::require_univariate(gens[i][j], "span");
            m(i, j) = gens[i][j];
        }
    auto hf = hermite_form(m);
    for (std::size_t r = 0; r < hf.pivot_cols.size(); ++r) {
        s.basis_.push_back(Element{{hf.h(r, 0), hf.h(r, 1)}});
        s.pivots_.push_back(hf.pivot_cols[r]);
    }
    return s;
}

/// Submodule generated by all a_(n)b with a, b running over the bases of s and t.
inline Submodule derived_algebra(const LCA2& r, const Submodule& s, const Submodule& t)
{
    std::vector<Element> gens;
    for (const auto& a : s.basis())
        for (const auto& b : t.basis())
            for (auto& [n, e] : nth_products(bracket(r, a, b))) gens.push_back(std::move(e));
    return span(gens);
}

inline constexpr int kSeriesCutoff = 8;

/// R, R', R'', ... until the zero module or stabilization.
inline std::vector<Submodule> derived_series(const LCA2& r)
{
    std::vector<Submodule> series{Submodule::full()};
    for (int i = 0; i < kSeriesCutoff && !series.back().is_zero(); ++i) {
        Submodule next = derived_algebra(r, series.back(), series.back());
        bool stable = next == series.back();
        series.push_back(std::move(next));
        if (stable) break;
    }
    return series;
}

/// R, R², R³, ... with R^{k+1} = [R_λ R^k].
inline std::vector<Submodule> lower_central_series(const LCA2& r)
{
    std::vector<Submodule> series{Submodule::full()};
    for (int i = 0; i < kSeriesCutoff && !series.back().is_zero(); ++i) {
        Submodule next = derived_algebra(r, Submodule::full(), series.back());
        bool stable = next == series.back();
        series.push_back(std::move(next));
        if (stable) break;
    }
    return series;
}

inline bool is_solvable(const LCA2& r) { return derived_series(r).back().is_zero(); }
inline bool is_nilpotent(const LCA2& r) { return lower_central_series(r).back().is_zero(); }

inline bool is_ideal(const LCA2& r, const Submodule& s)
{
    return s.contains(derived_algebra(r, Submodule::full(), s));
}

/// {v : [v_λ X^i] = 0 for i = 1, 2}.
inline Submodule center(const LCA2& r)
{
    // [v_λ X^i]^k = Σ_j v_j(-λ) Q_{j,i}^k(λ, ∂). Splitting by powers of ∂ and
    // renaming λ -> -∂ turns each coefficient into the Q[∂]-linear condition
    // Σ_j v_j(∂) q_{j,i,k,p}(-∂) = 0.
    std::vector<std::array<MPoly, 2>> columns;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            int top = std::max(r.q(0, i, k).deg_in(Var::partial), r.q(1, i, k).deg_in(Var::partial));
            for (int p = 0; p <= top; ++p) {
                std::array<MPoly, 2> col;
                for (std::size_t j = 0; j < 2; ++j)
                    col[j] = subst(r.q(j, i, k).coeff_in(Var::partial, static_cast<unsigned>(p)), Var::lambda, -del());
                if (!col[0].is_zero() || !col[1].is_zero()) columns.push_back(std::move(col));
            }
        }
    if (columns.empty()) return Submodule::full();
    PolyMatrix c(2, columns.size());
    for (std::size_t col = 0; col < columns.size(); ++col)
        for (std::size_t j = 0; j < 2; ++j) c(j, col) = columns[col][j];
    auto hf = hermite_form(c);
    std::vector<Element> kernel;
    for (std::size_t row = hf.pivot_cols.size(); row < 2; ++row) kernel.push_back(Element{{hf.u(row, 0), hf.u(row, 1)}});
    return span(kernel);
}

/// Primitive generator of the saturation of a rank-one submodule.
inline Element saturate(const Submodule& s)
{
    if (s.rank() != 1) throw std::invalid_argument("saturate: submodule must have rank 1");
    const Element& g = s.basis().front();
    MPoly content = ugcd(g[0], g[1]);
    Element out{{*udiv_exact(g[0], content), *udiv_exact(g[1], content)}};
    std::size_t lead = out[0].is_zero() ? 1 : 0;
    return MPoly(1 / leading_coeff_partial(out[lead])) * out;
}

} // namespace lca

#endif
