#ifndef LCA_SKEWSYM_HPP
#define LCA_SKEWSYM_HPP

#include "linalg.hpp"
#include "mpoly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lca {

/// f(x, y) = (2x + y) g(x^2 + xy, y).
/// The x slot of `cofactor` stands for u = x^2 + xy.
struct SkewDecomposition {
    MPoly cofactor;
    MPoly original;
};

inline MPoly skew_u() { return MPoly::var(Var::x).pow(2) + MPoly::var(Var::x) * MPoly::var(Var::y); }
inline MPoly skew_factor() { return 2 * MPoly::var(Var::x) + MPoly::var(Var::y); }

/// λ -> x, ∂ -> y (and back). Skew predicates work in (x, y).
inline MPoly to_xy(const MPoly& p)
{
    return p.substitute({{Var::lambda, MPoly::var(Var::x)}, {Var::partial, MPoly::var(Var::y)}});
}
inline MPoly from_xy(const MPoly& p)
{
    return p.substitute({{Var::x, lam()}, {Var::y, del()}});
}

inline bool is_skew(const MPoly& p)
{
    if (!p.uses_only({Var::x, Var::y}))
        throw std::invalid_argument("is_skew: only x and y may occur, got " + p.to_string());
    MPoly reflected = p.substitute({{Var::x, -MPoly::var(Var::x) - MPoly::var(Var::y)}});
    return (p + reflected).is_zero();
}

/// Same predicate for structure polynomials written in (λ, ∂).
inline bool is_skew_lambda(const MPoly& p) { return is_skew(to_xy(p)); }

inline MPoly expand(const SkewDecomposition& d)
{
    return skew_factor() * d.cofactor.substitute({{Var::x, skew_u()}});
}

inline SkewDecomposition skew_decompose(const MPoly& p)
{
    if (!p.uses_only({Var::x, Var::y}))
        throw std::invalid_argument("skew_decompose: only x and y may occur");
    const MPoly x = MPoly::var(Var::x);
    const MPoly y = MPoly::var(Var::y);

    // Exact division by 2x + y, descending in x.
    MPoly rest = p, quotient;
    for (int a = rest.deg_in(Var::x); a >= 1; a = rest.deg_in(Var::x)) {
        MPoly h = rest.coeff_in(Var::x, static_cast<unsigned>(a));
        MPoly q = make_rat(1, 2) * h * x.pow(static_cast<unsigned>(a - 1));
        quotient += q;
        rest -= q * skew_factor();
    }
    if (!rest.is_zero()) throw std::invalid_argument("skew_decompose: input is not skew-symmetric");

    // Rewrite the invariant quotient in the (u, y) chart: x^2 -> u - xy.
    MPoly g;
    const MPoly u = skew_u();
    for (int a = quotient.deg_in(Var::x); a != kMinusInfinity; a = quotient.deg_in(Var::x)) {
        if (a % 2 != 0) throw std::invalid_argument("skew_decompose: input is not skew-symmetric");
        MPoly h = quotient.coeff_in(Var::x, static_cast<unsigned>(a));
        unsigned i = static_cast<unsigned>(a / 2);
        g += h * x.pow(i); // x slot = u
        quotient -= h * u.pow(i);
    }
    return {g, p};
}

/// (2x+y)(x^2+xy)^i y^(n-1-2i), 0 <= i <= (n-1)/2.
inline std::vector<MPoly> skew_basis(int n)
{
    if (n < 1) throw std::invalid_argument("skew_basis: degree must be >= 1");
    std::vector<MPoly> basis;
    const MPoly y = MPoly::var(Var::y);
    for (int i = 0; 2 * i <= n - 1; ++i)
        basis.push_back(skew_factor() * skew_u().pow(static_cast<unsigned>(i)) * y.pow(static_cast<unsigned>(n - 1 - 2 * i)));
    return basis;
}

/// Coordinates of a homogeneous skew polynomial of degree n in skew_basis(n).
inline std::optional<std::vector<Rat>> skew_coordinates(const MPoly& p, int n)
{
    return solve_in_span(skew_basis(n), p);
}

} // namespace lca

#endif
