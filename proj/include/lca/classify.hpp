#ifndef LCA_CLASSIFY_HPP
#define LCA_CLASSIFY_HPP

#include "lca.hpp"
#include "linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lca {

/// One representative per isomorphism class of rank-two algebras. Generators are
/// ordered (A, B); for Rcs this is (K, L) with K central.
struct CanonicalForm {
    enum class Kind { Commutative, SemisimpleVirVir, Rcs, Rnil, Rsol, Rcdq };

    Kind kind = Kind::Commutative;
    bool qualified = false; ///< SemisimpleVirVir only: verdict rests on a failed bounded search
    MPoly poly;             ///< Rnil: Q, Rsol: a(λ), Rcdq: Q_c
    Rat scalar = 1;         ///< Rnil: the bracket before normalization was scalar * poly
    Rat c, d;               ///< Rcdq
    Rat beta, gamma;        ///< Rcdq table parameters

    static CanonicalForm commutative() { return {}; }
    static CanonicalForm semisimple(bool qualified = false)
    {
        CanonicalForm f;
        f.kind = Kind::SemisimpleVirVir;
        f.qualified = qualified;
        return f;
    }
    static CanonicalForm rcs()
    {
        CanonicalForm f;
        f.kind = Kind::Rcs;
        return f;
    }
    static CanonicalForm rnil(const MPoly& q, const Rat& scalar = 1)
    {
        if (q.is_zero() || !q.uses_only({Var::lambda, Var::partial}) || !is_skew_lambda(q))
            throw std::invalid_argument("Rnil needs a nonzero skew-symmetric polynomial");
        CanonicalForm f;
        f.kind = Kind::Rnil;
        f.poly = q;
        f.scalar = scalar;
        return f;
    }
    static CanonicalForm rsol(const MPoly& a)
    {
        if (a.is_zero() || !a.uses_only({Var::lambda})) throw std::invalid_argument("Rsol needs a nonzero polynomial in λ");
        CanonicalForm f;
        f.kind = Kind::Rsol;
        f.poly = a;
        return f;
    }
    static CanonicalForm rcdq(const Rat& c, const Rat& d, const MPoly& qc)
    {
        CanonicalForm f;
        f.kind = Kind::Rcdq;
        f.c = c;
        f.d = d;
        f.poly = qc;
        if (!qc.is_zero()) {
            auto params = d == 0 ? table_parameters(c, qc) : std::nullopt;
            if (!params) throw std::invalid_argument("Q_c is not an instance of the table row for (c, d)");
            f.beta = params->first;
            f.gamma = params->second;
        }
        return f;
    }

    /// Structure polynomials of the representative, without running the checker.
    StructurePolys structure() const
    {
        switch (kind) {
        case Kind::Commutative: return {};
        case Kind::SemisimpleVirVir: return vir_plus_vir_structure();
        case Kind::Rcs: return central_plus_vir_structure();
        case Kind::Rnil: return nil_structure(poly);
        case Kind::Rsol: return sol_structure(poly);
        case Kind::Rcdq: return cdq_structure(c, d, poly);
        }
        throw std::logic_error("unknown canonical form");
    }

    /// The representative as a validated algebra.
    LCA2 algebra() const
    {
        switch (kind) {
        case Kind::Commutative: return commutative2();
        case Kind::SemisimpleVirVir: return r_ss();
        case Kind::Rcs: return r_cs();
        case Kind::Rnil: return r_nil(poly);
        case Kind::Rsol: return r_sol(poly);
        case Kind::Rcdq: return r_cdq(c, d, poly);
        }
        throw std::logic_error("unknown canonical form");
    }

    std::string to_string() const
    {
        switch (kind) {
        case Kind::Commutative: return "commutative";
        case Kind::SemisimpleVirVir: return qualified ? "Vir + Vir (no abelian ideal within the degree bound)" : "Vir + Vir";
        case Kind::Rcs: return "Vir + commutative line";
        case Kind::Rnil: return "R_nil(" + poly.to_string() + ")";
        case Kind::Rsol: return "R_sol(" + poly.to_string() + ")";
        case Kind::Rcdq: return "R(" + lca::to_string(c) + ", " + lca::to_string(d) + ", " + poly.to_string() + ")";
        }
        return {};
    }
};

inline const char* kind_name(CanonicalForm::Kind k)
{
    switch (k) {
    case CanonicalForm::Kind::Commutative: return "Commutative";
    case CanonicalForm::Kind::SemisimpleVirVir: return "SemisimpleVirVir";
    case CanonicalForm::Kind::Rcs: return "Rcs";
    case CanonicalForm::Kind::Rnil: return "Rnil";
    case CanonicalForm::Kind::Rsol: return "Rsol";
    case CanonicalForm::Kind::Rcdq: return "Rcdq";
    }
    return "?";
}

/// A ↦ s A', B ↦ t B' + p(∂) A'. Read as a basis change on the second algebra,
/// the rows (s, 0) and (p, t) produce exactly the structure of the first one.
struct IsoWitness {
    Rat s = 1, t = 1;
    MPoly p;
    bool scalar_only = false; ///< kept for the serialized shape; rational data never needs it
    Rat k = 1;                ///< ratio between the compared parameters

    PolyMatrix matrix() const { return PolyMatrix{{MPoly(s), MPoly()}, {p, MPoly(t)}}; }
};

struct IsoResult {
    bool isomorphic = false;
    std::optional<IsoWitness> witness;
};

/// Decides F1 ≅ F2 on canonical data. Association is decided over Q: for rational
/// polynomials a complex proportionality factor is a ratio of rational coefficients.
inline IsoResult are_isomorphic(const CanonicalForm& f1, const CanonicalForm& f2)
{
    using Kind = CanonicalForm::Kind;
    IsoResult out;
    if (f1.kind != f2.kind) return out;
    switch (f1.kind) {
    case Kind::Commutative:
    case Kind::SemisimpleVirVir:
    case Kind::Rcs:
        out.isomorphic = true;
        out.witness = IsoWitness{};
        return out;
    case Kind::Rsol: {
        auto k = proportionality(f1.poly, f2.poly);
        if (!k || *k == 0) return out;
        // [tB'_λ A'] = t a'(λ) A' = a(λ) A'
        IsoWitness w;
        w.t = *k;
        w.k = *k;
        out = {true, w};
        return out;
    }
    case Kind::Rnil: {
        auto k = proportionality(f1.poly, f2.poly);
        if (!k || *k == 0) return out;
        // [tB'_λ tB'] = t² Q' A' = (t²/s) Q' (sA'), so t²/s = k.
        IsoWitness w;
        w.k = *k;
        Rat root;
        if (rational_sqrt(*k, root)) {
            w.t = root;
        } else {
            w.s = 1 / *k;
        }
        out = {true, w};
        return out;
    }
    case Kind::Rcdq: {
        if (f1.c != f2.c || f1.d != f2.d) return out;
        IsoWitness w;
        if (f1.poly.is_zero() || f2.poly.is_zero()) {
            if (!(f1.poly.is_zero() && f2.poly.is_zero())) return out;
        } else {
            auto k = proportionality(f2.poly, f1.poly);
            if (!k || *k == 0) return out;
            // [B'_λ B'] = Q' A' + (2λ+∂)B' = (Q'/s)(sA') + ..., so s = Q'/Q.
            w.s = *k;
            w.k = *k;
        }
        out = {true, w};
        return out;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coboundaries of the semidirect family

/// S_f = f(λ+∂)(cλ+d+∂) + f(-λ)(cλ+c∂-d-∂) - (2λ+∂) f(∂): the change in Q under B ↦ B + f(∂)A.
inline MPoly coboundary(const Rat& c, const Rat& d, const MPoly& f)
{
    detail::require_univariate(f, "coboundary");
    const MPoly l = lam(), p = del();
    return subst(f, Var::partial, l + p) * (c * l + MPoly(d) + p) + subst(f, Var::partial, -l) * (c * l + c * p - MPoly(d) - p) -
           (2 * l + p) * f;
}

namespace detail {

inline std::vector<MPoly> coboundary_images(const Rat& c, const Rat& d, int max_degree)
{
    std::vector<MPoly> images;
    for (int i = 0; i <= max_degree; ++i) images.push_back(coboundary(c, d, del().pow(static_cast<unsigned>(i))));
    return images;
}

inline MPoly poly_from_coeffs(const std::vector<Rat>& coeffs)
{
    MPoly f;
    for (std::size_t i = 0; i < coeffs.size(); ++i) f += coeffs[i] * del().pow(static_cast<unsigned>(i));
    return f;
}

} // namespace detail

/// f(∂) with S_f = P, or nullopt. Free directions (the kernel) are set to zero.
inline std::optional<MPoly> solve_coboundary(const Rat& c, const Rat& d, const MPoly& p)
{
    if (p.is_zero()) return MPoly();
    if (!p.uses_only({Var::lambda, Var::partial})) return std::nullopt;
    // S raises total degree by one (d = 0) and is injective on ∂^i for i >= 4, so
    // deg f <= max(4, deg P) covers every solution.
    int bound = std::max(4, p.total_degree());
    auto images = detail::coboundary_images(c, d, bound);
    auto coeffs = solve_in_span(images, p);
    if (!coeffs) return std::nullopt;
    return detail::poly_from_coeffs(*coeffs);
}

/// Basis of {f : S_f = 0}, in reduced echelon form ordered by lowest degree.
inline std::vector<MPoly> coboundary_kernel(const Rat& c, const Rat& d)
{
    constexpr int kBound = 4;
    auto ns = coefficient_matrix(detail::coboundary_images(c, d, kBound)).nullspace();
    if (ns.empty()) return {};
    QMatrix rows(ns.size(), kBound + 1);
    for (std::size_t r = 0; r < ns.size(); ++r)
        for (std::size_t i = 0; i <= kBound; ++i) rows(r, i) = ns[r][i];
    auto pivots = rows.rref();
    std::vector<MPoly> basis;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Rat> v(kBound + 1);
        for (std::size_t i = 0; i <= kBound; ++i) v[i] = rows(r, i);
        basis.push_back(detail::poly_from_coeffs(v));
    }
    return basis;
}

} // namespace lca

#endif
