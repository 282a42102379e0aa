#ifndef LCA_NORMALIZE_HPP
#define LCA_NORMALIZE_HPP

#include "classify.hpp"
#include "lca.hpp"
#include "padmod.hpp"
#include "skewsym.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lca {

/// Raised when a residue that must vanish on a valid algebra does not.
class InternalInconsistency : public std::logic_error {
public:
    InternalInconsistency(std::string check, const std::string& detail)
        : std::logic_error("internal inconsistency [" + check + "]: " + detail), check_(std::move(check))
    {
    }
    const std::string& check() const { return check_; }

private:
    std::string check_;
};

/// Invertible 2x2 matrix over Q[∂]; rows are new generators in input coordinates.
struct BasisChange {
    PolyMatrix m = PolyMatrix::identity(2);
    Rat det = 1;

    static BasisChange of(const PolyMatrix& m)
    {
        MPoly d = det2(m);
        if (d.is_zero() || !d.is_constant()) throw std::invalid_argument("basis change must have a nonzero constant determinant");
        return {m, d.constant_term()};
    }

    /// The change obtained by applying `step` in the coordinates this change produces.
    BasisChange then(const PolyMatrix& step) const { return of(step * m); }

    BasisChange inverse() const { return of(*inverse2(m)); }
};

enum class CaseTag { Case1, Case2, Case3a, Case3b };

inline const char* case_name(CaseTag t)
{
    switch (t) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3a: return "Case3a";
    case CaseTag::Case3b: return "Case3b";
    }
    return "?";
}

struct CertificateStep {
    std::string rule;
    PolyMatrix matrix;
    int residual_degree = kMinusInfinity; ///< total degree of Q afterwards
};

struct Certificate {
    std::optional<CaseTag> case_tag;
    std::string abelian_method;
    std::vector<CertificateStep> steps;
    std::vector<std::string> lemmas;
    bool qualified = false;
};

/// {A, B} coordinates with [A_λ A] = 0, [B_λ A] = (a + b∂)A, [B_λ B] = Q A + α(2λ+∂)B.
struct PreNormalForm {
    MPoly a, b, q;
    Rat alpha;
    Rat c, d; ///< a = cλ + d in case 3
    CaseTag tag = CaseTag::Case1;
    BasisChange basis_change;
    LCA2 algebra;
    std::vector<CertificateStep> steps;
};

struct Classification {
    CanonicalForm form;
    BasisChange change;
    Certificate certificate;
};

struct ClassifyOptions {
    int degree_bound = -1;         ///< negative: max total degree of the input + 2
    bool revalidate_steps = false; ///< re-run the λ-checker after every step
};

namespace detail {

inline PolyMatrix shift_b(const MPoly& p) { return PolyMatrix{{MPoly(1), MPoly()}, {p, MPoly(1)}}; }
inline PolyMatrix scale_a(const Rat& k) { return PolyMatrix{{MPoly(k), MPoly()}, {MPoly(), MPoly(1)}}; }
inline PolyMatrix scale_b(const Rat& k) { return PolyMatrix{{MPoly(1), MPoly()}, {MPoly(), MPoly(k)}}; }

inline void require(bool ok, const char* check, const std::string& detail)
{
    if (!ok) throw InternalInconsistency(check, detail);
}

inline Rat lambda_coeff(const MPoly& p, unsigned i, unsigned j = 0)
{
    return p.coefficient(Monomial::of(Var::lambda, i) * Monomial::of(Var::partial, j));
}

inline Element primitive(const Element& v)
{
    MPoly g = ugcd(v[0], v[1]);
    Element out{{*udiv_exact(v[0], g), *udiv_exact(v[1], g)}};
    std::size_t lead = out[0].is_zero() ? 1 : 0;
    return MPoly(1 / leading_coeff_partial(out[lead])) * out;
}

/// Rational roots of k2 t² + k1 t + k0 (all of Q when the polynomial vanishes, reported as nullopt).
inline std::optional<std::vector<Rat>> rational_roots_quadratic(const Rat& k2, const Rat& k1, const Rat& k0)
{
    if (k2 == 0) {
        if (k1 == 0) {
            if (k0 == 0) return std::nullopt;
            return std::vector<Rat>{};
        }
        return std::vector<Rat>{-k0 / k1};
    }
    Rat disc = k1 * k1 - 4 * k2 * k0, root;
    if (!rational_sqrt(disc, root)) return std::vector<Rat>{};
    std::vector<Rat> roots{(-k1 + root) / (2 * k2)};
    if (root != 0) roots.push_back((-k1 - root) / (2 * k2));
    return roots;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Abelian ideal

/// True when A spans an abelian ideal: [A_λ A] = 0 and [X^i_λ A] ∈ Q[λ,∂]·A.
inline bool is_abelian_ideal_generator(const LCA2& r, const Element& a)
{
    if (a.is_zero() || !bracket(r, a, a).is_zero()) return false;
    for (std::size_t i = 0; i < 2; ++i) {
        auto w = bracket(r, Element::basis(i), a);
        if (!(w.comps[0] * a[1] - w.comps[1] * a[0]).is_zero()) return false;
    }
    return true;
}

/// Candidate kernels of homomorphisms onto Vir. A homomorphism v ↦ ℓ(v)L satisfies
/// Σ_k Q_{ij}^k(λ,∂) ℓ_k(∂) = ℓ_i(-λ) ℓ_j(λ+∂)(2λ+∂). At ∂ = 0 its λ-linear part is a
/// quadratic system for c = ℓ(0), and the remaining λ-dependence fixes ℓ(-λ) up to scalar.
inline std::vector<Element> virasoro_quotient_kernels(const LCA2& r)
{
    auto q = [&](std::size_t i, std::size_t j, std::size_t k) { return detail::lambda_coeff(r.q(i, j, k), 1); };
    auto satisfies = [&](const Rat& c0, const Rat& c1) {
        std::array<Rat, 2> c{c0, c1};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                if (q(i, j, 0) * c[0] + q(i, j, 1) * c[1] != 2 * c[i] * c[j]) return false;
        return true;
    };

    std::vector<std::array<Rat, 2>> candidates;
    if (q(1, 1, 1) != 0 && satisfies(Rat(0), q(1, 1, 1) / 2)) candidates.push_back({Rat(0), q(1, 1, 1) / 2});
    // c = (c0, t c0) with c0 = (q_111 + q_112 t)/2 from the (1,1) equation.
    auto ts = detail::rational_roots_quadratic(q(0, 0, 1), q(0, 0, 0) - q(0, 1, 1), -q(0, 1, 0));
    if (!ts) {
        // (1,1) and (1,2) equations agree for every t; use the (2,2) one.
        ts = detail::rational_roots_quadratic(q(0, 0, 0), -q(1, 1, 1), -q(1, 1, 0));
        if (!ts) ts = std::vector<Rat>{};
    }
    for (const auto& t : *ts) {
        Rat c0 = (q(0, 0, 0) + q(0, 0, 1) * t) / 2;
        if (c0 != 0 && satisfies(c0, t * c0)) candidates.push_back({c0, t * c0});
    }

    std::vector<Element> kernels;
    for (const auto& c : candidates) {
        // P_ij(λ) = ℓ_i(-λ) ℓ_j(λ) = Σ_k Q_ij^k(λ, 0) c_k / (2λ)
        std::array<std::array<MPoly, 2>, 2> pij;
        bool ok = true;
        for (std::size_t i = 0; i < 2 && ok; ++i)
            for (std::size_t j = 0; j < 2 && ok; ++j) {
                MPoly v = c[0] * subst(r.q(i, j, 0), Var::partial, MPoly()) + c[1] * subst(r.q(i, j, 1), Var::partial, MPoly());
                if (!v.coeff_in(Var::lambda, 0).is_zero()) {
                    ok = false;
                    break;
                }
                std::vector<MPoly::Term> shifted;
                for (const auto& [m, coef] : v.terms())
                    shifted.emplace_back(m.with(Var::lambda, m.exp(Var::lambda) - 1), coef / 2);
                pij[i][j] = MPoly::from_terms(std::move(shifted));
            }
        if (!ok) continue;
        for (std::size_t j = 0; j < 2; ++j) {
            Element ell{{subst(pij[0][j], Var::lambda, -del()), subst(pij[1][j], Var::lambda, -del())}};
            if (ell.is_zero()) continue;
            ell = detail::primitive(ell);
            kernels.push_back(detail::primitive(Element{{-ell[1], ell[0]}}));
            break;
        }
    }
    return kernels;
}

struct AbelianSearch {
    std::optional<Element> vector;
    std::string method;
    std::string diagnostic;
};

/// Primitive A spanning an abelian ideal, or nothing when none exists with coordinate
/// degrees <= degree_bound. Candidates come from the solvable derived line, the central
/// line, and kernels of homomorphisms onto Vir; each is checked by direct evaluation.
inline AbelianSearch find_abelian_vector(const LCA2& r, int degree_bound)
{
    AbelianSearch out;
    std::vector<std::pair<Element, std::string>> candidates;
    Submodule derived = derived_algebra(r, Submodule::full(), Submodule::full());
    if (derived.rank() == 1 && is_solvable(r)) candidates.emplace_back(saturate(derived), "derived-line");
    Submodule z = center(r);
    if (z.rank() == 1) candidates.emplace_back(saturate(z), "central-line");
    for (auto& k : virasoro_quotient_kernels(r)) candidates.emplace_back(std::move(k), "virasoro-quotient");

    for (const auto& [a, method] : candidates) {
        if (!is_abelian_ideal_generator(r, a)) continue;
        if (a.degree() > degree_bound) {
            out.diagnostic = "abelian ideal generator of degree " + std::to_string(a.degree()) + " exceeds the bound " +
                             std::to_string(degree_bound);
            continue;
        }
        out.vector = a;
        out.method = method;
        return out;
    }
    if (out.diagnostic.empty()) out.diagnostic = "no abelian ideal of rank one";
    return out;
}

/// Dimension of the kernel of the polarized square v ⊗ w ↦ [v_λ w] + [w_λ v] on
/// symmetric tensors of coordinate degree <= D. Diagnostic only.
inline std::size_t polar_kernel_dimension(const LCA2& r, int degree)
{
    std::vector<Element> basis;
    for (std::size_t k = 0; k < 2; ++k)
        for (int i = 0; i <= degree; ++i) {
            Element e;
            e[k] = del().pow(static_cast<unsigned>(i));
            basis.push_back(e);
        }
    std::vector<MPoly> columns;
    // Both components packed into one polynomial by tagging the X² part with µ^0 x.
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            auto v = bracket(r, basis[a], basis[b]);
            if (a != b) {
                auto w = bracket(r, basis[b], basis[a]);
                v.comps[0] += w.comps[0];
                v.comps[1] += w.comps[1];
            }
            columns.push_back(v.comps[0] + MPoly::var(Var::x) * v.comps[1]);
        }
    return columns.size() - coefficient_matrix(columns).rank();
}

// ---------------------------------------------------------------------------
// Pre-normal form

inline PreNormalForm to_prenormal(const LCA2& r, const Element& a)
{
    PreNormalForm out;
    auto bz = bezout(a[0], a[1]);
    detail::require(bz.gcd == MPoly(1), "primitive-abelian-vector", "A = " + a.to_string() + " is not primitive");
    PolyMatrix completion{{a[0], a[1]}, {-bz.t, bz.s}};
    out.basis_change = BasisChange::of(completion);
    out.algebra = apply_basis_change(r, completion);
    out.steps.push_back({"basis-completion", completion, out.algebra.q(1, 1, 0).total_degree()});

    const LCA2& cur = out.algebra;
    detail::require(cur.q(0, 0, 0).is_zero() && cur.q(0, 0, 1).is_zero(), "abelian", "[A_λ A] != 0");
    detail::require(cur.q(1, 0, 1).is_zero() && cur.q(0, 1, 1).is_zero(), "ideal", "[B_λ A] leaves the A-line");

    auto rank1 = classify_rank1(cur.q(1, 1, 1));
    detail::require(rank1.kind != Rank1Verdict::Kind::Invalid, "quotient-rank-one",
                    "B-component of [B_λ B] is not a rank-one bracket: " + cur.q(1, 1, 1).to_string());
    if (rank1.kind == Rank1Verdict::Kind::Virasoro && rank1.alpha != 1) {
        PolyMatrix m = detail::scale_b(1 / rank1.alpha);
        out.algebra = apply_basis_change(out.algebra, m);
        out.basis_change = out.basis_change.then(m);
        out.steps.push_back({"vir-rescale", m, out.algebra.q(1, 1, 0).total_degree()});
    }
    out.alpha = rank1.kind == Rank1Verdict::Kind::Virasoro ? Rat(1) : Rat(0);

    const MPoly& ba = out.algebra.q(1, 0, 0);
    detail::require(ba.deg_in(Var::partial) <= 1, "ideal-action-degree", "deg_∂ [B_λ A] > 1: " + ba.to_string());
    out.a = ba.coeff_in(Var::partial, 0);
    out.b = ba.coeff_in(Var::partial, 1);
    out.q = out.algebra.q(1, 1, 0);
    detail::require(is_skew_lambda(out.q), "skew-Q", "Q is not skew-symmetric");

    if (out.alpha == 0) {
        detail::require(out.b.is_zero(), "b-vanishes", "α = 0 forces b = 0, got b = " + out.b.to_string());
        out.tag = CaseTag::Case1;
    } else if (out.b.is_zero()) {
        detail::require(out.a.is_zero(), "a-vanishes", "α = 1, b = 0 forces a = 0, got a = " + out.a.to_string());
        out.tag = CaseTag::Case2;
    } else {
        detail::require(out.b == MPoly(1), "b-is-one", "α = 1 forces b ∈ {0, 1}, got b = " + out.b.to_string());
        detail::require(out.a.deg_in(Var::lambda) <= 1, "a-linear", "a(λ) must be linear, got " + out.a.to_string());
        out.c = detail::lambda_coeff(out.a, 1);
        out.d = detail::lambda_coeff(out.a, 0);
        out.tag = out.d != 0 ? CaseTag::Case3a : CaseTag::Case3b;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Case reductions

namespace detail {

class Reducer {
public:
    Reducer(const PreNormalForm& p, bool revalidate)
        : algebra_(p.algebra), change_(p.basis_change), revalidate_(revalidate)
    {
        cert_.steps = p.steps;
        cert_.case_tag = p.tag;
    }

    const MPoly& q() const { return algebra_.q(1, 1, 0); }
    const MPoly& action() const { return algebra_.q(1, 0, 0); }

    void apply(const std::string& rule, const PolyMatrix& m)
    {
        algebra_ = apply_basis_change(algebra_, m);
        change_ = change_.then(m);
        if (revalidate_) require(check_axioms_lambda(algebra_).valid(), "step-validity", "step " + rule + " broke the axioms");
        cert_.steps.push_back({rule, m, q().total_degree()});
    }

    void lemma(std::string text) { cert_.lemmas.push_back(std::move(text)); }

    Classification finish(CanonicalForm form)
    {
        require(algebra_.structure() == form.structure(), "canonical-structure",
                "reduced structure does not match " + form.to_string());
        return {std::move(form), change_, std::move(cert_)};
    }

private:
    LCA2 algebra_;
    BasisChange change_;
    Certificate cert_;
    bool revalidate_;
};

} // namespace detail

/// α = 0, b = 0: R_nil(Q) when a = 0, otherwise Q is removed and R_sol(a) remains.
inline Classification reduce_case1(const PreNormalForm& p, bool revalidate = false)
{
    detail::require(p.tag == CaseTag::Case1, "case-dispatch", "reduce_case1 called on another case");
    detail::Reducer red(p, revalidate);
    if (p.a.is_zero()) {
        Rat lc = red.q().leading_term().second;
        if (lc != 1) red.apply("nil-normalize", detail::scale_a(lc));
        red.lemma("A is central, Q is an arbitrary skew-symmetric polynomial");
        return red.finish(CanonicalForm::rnil(red.q(), lc));
    }

    const MPoly a = red.action();
    const int m = a.deg_in(Var::lambda);
    red.lemma("deg a <= deg_∂ Q whenever Q != 0");
    while (!red.q().is_zero()) {
        int n = red.q().deg_in(Var::partial);
        detail::require(n >= m, "solvable-degree", "deg_∂ Q < deg a with Q != 0");
        MPoly fn = red.q().coeff_in(Var::partial, static_cast<unsigned>(n));
        if (n > m) {
            auto k = proportionality(fn, a);
            detail::require(k.has_value(), "solvable-proportional", "leading coefficient of Q is not a multiple of a(λ)");
            red.apply("solvable-proportional-shift", detail::shift_b(-*k * del().pow(static_cast<unsigned>(n))));
            detail::require(red.q().deg_in(Var::partial) < n, "solvable-descent", "∂-degree of Q did not drop");
            continue;
        }
        // n == m: C = B + p(∂)A with monic p of degree m.
        detail::require(fn.deg_in(Var::lambda) <= m - 1, "skew-top-coefficient", "top ∂-coefficient of Q has λ-degree >= m");
        Rat am = detail::lambda_coeff(a, static_cast<unsigned>(m));
        MPoly shift = del().pow(static_cast<unsigned>(m));
        for (int i = 0; i < m; ++i) {
            Rat pi = (detail::lambda_coeff(a, static_cast<unsigned>(i)) + detail::lambda_coeff(fn, static_cast<unsigned>(i))) / am;
            if ((m + i) % 2) pi = -pi;
            shift += pi * del().pow(static_cast<unsigned>(i));
        }
        red.apply("solvable-final-shift", detail::shift_b(shift));
        detail::require(red.q().is_zero(), "solvable-final", "Q survived the final shift: " + red.q().to_string());
    }
    Rat lc = detail::lambda_coeff(a, static_cast<unsigned>(m));
    if (lc != 1) red.apply("monic-a", detail::scale_b(1 / lc));
    return red.finish(CanonicalForm::rsol(red.action()));
}

/// α = 1, a = b = 0: Q = (2λ+∂)p(∂) is removed by B ↦ B + p(∂)A.
inline Classification reduce_case2(const PreNormalForm& p, bool revalidate = false)
{
    detail::require(p.tag == CaseTag::Case2, "case-dispatch", "reduce_case2 called on another case");
    detail::Reducer red(p, revalidate);
    if (!red.q().is_zero()) {
        MPoly g = skew_decompose(to_xy(red.q())).cofactor;
        detail::require(g.uses_only({Var::y}), "central-lambda-free", "Q/(2λ+∂) depends on λ: " + from_xy(g).to_string());
        red.lemma("setting µ = 0 forces Q/(2λ+∂) to be independent of λ");
        red.apply("central-shift", detail::shift_b(from_xy(g)));
        detail::require(red.q().is_zero(), "central-final", "Q survived the shift");
    }
    return red.finish(CanonicalForm::rcs());
}

/// α = 1, b = 1, a = cλ + d with d != 0: Q can always be removed.
inline Classification reduce_case3a(const PreNormalForm& p, bool revalidate = false)
{
    detail::require(p.tag == CaseTag::Case3a, "case-dispatch", "reduce_case3a called on another case");
    detail::Reducer red(p, revalidate);
    for (int m = red.q().deg_in(Var::partial); m >= 2; m = red.q().deg_in(Var::partial)) {
        MPoly fm = red.q().coeff_in(Var::partial, static_cast<unsigned>(m));
        Rat k = detail::lambda_coeff(fm, 0) / p.d;
        red.apply("nonzero-d-descent", detail::shift_b(-k * del().pow(static_cast<unsigned>(m))));
        detail::require(red.q().deg_in(Var::partial) < m, "nonzero-d-degree", "∂-degree of Q did not drop");
    }
    if (!red.q().is_zero()) {
        auto k = proportionality(red.q(), vir_poly());
        detail::require(k.has_value(), "nonzero-d-linear", "Q of ∂-degree <= 1 is not a multiple of 2λ+∂");
        red.apply("nonzero-d-final", detail::shift_b(-(*k / p.d) * del()));
        detail::require(red.q().is_zero(), "nonzero-d-final", "Q survived the final shift");
    }
    return red.finish(CanonicalForm::rcdq(p.c, p.d, MPoly()));
}

/// α = 1, b = 1, a = cλ: every homogeneous component of Q is removed except the table residue.
inline Classification reduce_case3b(const PreNormalForm& p, bool revalidate = false)
{
    detail::require(p.tag == CaseTag::Case3b, "case-dispatch", "reduce_case3b called on another case");
    detail::Reducer red(p, revalidate);
    const Rat c = p.c;
    auto component = [&](int n) { return red.q().homogeneous_component(n); };
    auto shift = [&](const std::string& rule, const Rat& k, int e) {
        red.apply(rule, detail::shift_b(k * del().pow(static_cast<unsigned>(e))));
    };
    auto coords = [&](int n) {
        auto v = skew_coordinates(to_xy(component(n)), n);
        detail::require(v.has_value(), "homogeneous-skew", "component is not skew-symmetric");
        return *v;
    };

    std::vector<int> degrees;
    for (const auto& [n, qn] : red.q().homogeneous_components()) degrees.push_back(n);

    for (int n : degrees) {
        const std::string tag = "degree " + std::to_string(n);
        if (n == 1) {
            Rat a1 = coords(1)[0];
            if (c != 1) shift("low-degree-kill-k0", -a1 / (c - 1), 0);
        } else if (n == 2) {
            if (c != 0) detail::require(component(2).is_zero(), "alpha2", "Q_2 must vanish unless c = 0");
        } else if (n == 3) {
            auto v = coords(3); // (α3, β3) on (2λ+∂)∂², (2λ+∂)u
            if (c != -1) detail::require(v[0] == 0, "alpha3", "α3 must vanish unless c = -1");
            if (c != 0 && v[1] != 0) shift("low-degree-kill-k2", -v[1] / c, 2);
        } else if (n == 4) {
            auto v = coords(4); // (α4, β4) on (2λ+∂)∂³, (2λ+∂)u∂
            detail::require(v[0] == 0, "alpha4", "α4 must vanish");
            if (c != -1 && v[1] != 0) shift("low-degree-kill-k3", -v[1] / (c + 1), 3);
        } else {
            MPoly qn = component(n);
            detail::require(detail::lambda_coeff(qn, 0, static_cast<unsigned>(n)) == 0, "top-partial",
                            tag + ": Q_n(0, ∂) must vanish");
            MPoly s = coboundary(c, 0, del().pow(static_cast<unsigned>(n - 1)));
            if (c != 3 - n) {
                Rat coef = detail::lambda_coeff(qn, 1, static_cast<unsigned>(n - 1));
                if (coef != 0) shift("linear-term-kill", -coef / detail::lambda_coeff(s, 1, static_cast<unsigned>(n - 1)), n - 1);
                detail::require(component(n).is_zero(), "generic-degree", tag + ": component survived the linear-term kill");
            } else {
                detail::require(detail::lambda_coeff(qn, 1, static_cast<unsigned>(n - 1)) == 0, "critical-linear",
                                tag + ": λ∂^(n-1) term must vanish when n = 3 - c");
                Rat coef = detail::lambda_coeff(qn, 2, static_cast<unsigned>(n - 2));
                if (coef != 0)
                    shift("quadratic-term-kill", -coef / detail::lambda_coeff(s, 2, static_cast<unsigned>(n - 2)), n - 1);
                if (c == -4 || c == -6) {
                    auto k = proportionality(component(n), table_row_span(c)[0]);
                    detail::require(k.has_value(), "table-match", tag + ": residue is not a multiple of the table row");
                    red.lemma("the degree " + std::to_string(n) + " residue is unique up to scalar");
                } else {
                    detail::require(component(n).is_zero(), "critical-degree", tag + ": component must vanish");
                }
            }
        }
    }
    if (!red.q().is_zero()) red.lemma("table residue is not a coboundary");
    return red.finish(CanonicalForm::rcdq(c, 0, red.q()));
}

// ---------------------------------------------------------------------------
// Driver

inline int default_degree_bound(const LCA2& r) { return std::max(0, r.structure().max_total_degree()) + 2; }

inline Classification classify(const LCA2& input, const ClassifyOptions& opts = {})
{
    LCA2 r = input;
    if (!r.validated()) r = require_valid(r);
    if (r.is_commutative()) {
        Classification out;
        out.certificate.lemmas.push_back("all structure polynomials vanish");
        return out;
    }

    int bound = opts.degree_bound >= 0 ? opts.degree_bound : default_degree_bound(r);
    auto search = find_abelian_vector(r, bound);
    if (!search.vector) {
        Classification out;
        bool perfect = derived_algebra(r, Submodule::full(), Submodule::full()) == Submodule::full();
        bool centerless = center(r).is_zero();
        out.form = CanonicalForm::semisimple(!(perfect && centerless));
        out.certificate.qualified = true;
        out.certificate.abelian_method = "none";
        out.certificate.lemmas.push_back(search.diagnostic);
        if (perfect) out.certificate.lemmas.push_back("R' = R");
        if (centerless) out.certificate.lemmas.push_back("trivial center");
        return out;
    }

    PreNormalForm pre = to_prenormal(r, *search.vector);
    Classification out;
    switch (pre.tag) {
    case CaseTag::Case1: out = reduce_case1(pre, opts.revalidate_steps); break;
    case CaseTag::Case2: out = reduce_case2(pre, opts.revalidate_steps); break;
    case CaseTag::Case3a: out = reduce_case3a(pre, opts.revalidate_steps); break;
    case CaseTag::Case3b: out = reduce_case3b(pre, opts.revalidate_steps); break;
    }
    out.certificate.abelian_method = search.method;
    detail::require(apply_basis_change(r, out.change.m).structure() == out.form.structure(), "final-revalidation",
                    "the composed basis change does not reproduce the canonical structure");
    return out;
}

// ---------------------------------------------------------------------------
// Test-oracle generators

/// Applies a random D·L·U·P with unipotent L, U whose off-diagonal degrees sum to
/// at most max_deg, a random diagonal rational scaling D and an optional swap P.
inline std::pair<LCA2, BasisChange> scramble(const LCA2& r, std::uint64_t seed, int max_deg)
{
    if (!r.validated()) throw std::invalid_argument("scramble: input must be validated");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_poly = [&](int deg) {
        MPoly p;
        for (int i = 0; i <= deg; ++i) p += MPoly(Rat(coeff(rng))) * del().pow(static_cast<unsigned>(i));
        return p;
    };
    static const long scalars[][2] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 1}, {-3, 1}, {1, 3}, {-1, 3}};
    auto scalar = [&]() {
        const auto& s = scalars[rng() % std::size(scalars)];
        return make_rat(s[0], s[1]);
    };
    int deg_p = max_deg > 0 ? static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1)) : 0;
    int deg_r = max_deg - deg_p > 0 ? static_cast<int>(rng() % static_cast<unsigned>(max_deg - deg_p + 1)) : 0;
    PolyMatrix u{{MPoly(1), random_poly(deg_p)}, {MPoly(), MPoly(1)}};
    PolyMatrix l{{MPoly(1), MPoly()}, {random_poly(deg_r), MPoly(1)}};
    PolyMatrix d{{MPoly(scalar()), MPoly()}, {MPoly(), MPoly(scalar())}};
    PolyMatrix p = rng() % 2 ? PolyMatrix{{MPoly(), MPoly(1)}, {MPoly(1), MPoly()}} : PolyMatrix::identity(2);
    BasisChange change = BasisChange::of(d * l * u * p);
    return {apply_basis_change(r, change.m), change};
}

/// h_j^m(c, λ, µ) = ((c+m-2)λ - µ)µ^j - ((c+m-2)µ - λ)λ^j - (λ-µ)(λ+µ)^j.
inline MPoly obstruction_polynomial(unsigned j, int m, const Rat& c)
{
    const MPoly l = lam(), u = mu();
    Rat k = c + m - 2;
    return (k * l - u) * u.pow(j) - (k * u - l) * l.pow(j) - (l - u) * (l + u).pow(j);
}

} // namespace lca

#endif
