#ifndef LCA_LCA_HPP
#define LCA_LCA_HPP

#include "mpoly.hpp"
#include "polymatrix.hpp"
#include "skewsym.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lca {

/// f(∂)X¹ + g(∂)X², coordinates univariate in ∂.
struct Element {
    std::array<MPoly, 2> coords;

    static Element basis(std::size_t i)
    {
        Element e;
        e.coords[i] = MPoly(1);
        return e;
    }

    MPoly& operator[](std::size_t i) { return coords[i]; }
    const MPoly& operator[](std::size_t i) const { return coords[i]; }

    bool is_zero() const { return coords[0].is_zero() && coords[1].is_zero(); }
    int degree() const { return std::max(coords[0].deg_in(Var::partial), coords[1].deg_in(Var::partial)); }

    friend Element operator+(const Element& a, const Element& b) { return {{a[0] + b[0], a[1] + b[1]}}; }
    friend Element operator-(const Element& a, const Element& b) { return {{a[0] - b[0], a[1] - b[1]}}; }
    friend Element operator*(const MPoly& f, const Element& a) { return {{f * a[0], f * a[1]}}; }
    friend bool operator==(const Element&, const Element&) = default;

    std::string to_string() const { return "(" + coords[0].to_string() + ", " + coords[1].to_string() + ")"; }
};

/// X¹- and X²-components of [u_λ v], polynomials in (λ, ∂).
struct BracketValue {
    std::array<MPoly, 2> comps;

    bool is_zero() const { return comps[0].is_zero() && comps[1].is_zero(); }
    friend bool operator==(const BracketValue&, const BracketValue&) = default;
};

/// Q_{i,j}^k(λ, ∂) with [X^i_λ X^j] = Σ_k Q_{i,j}^k X^k. Indices are 0-based here;
/// the file format and reports use 1-based labels.
struct StructurePolys {
    std::array<MPoly, 8> q;

    MPoly& at(std::size_t i, std::size_t j, std::size_t k) { return q[i * 4 + j * 2 + k]; }
    const MPoly& at(std::size_t i, std::size_t j, std::size_t k) const { return q[i * 4 + j * 2 + k]; }

    bool is_zero() const
    {
        for (const auto& p : q)
            if (!p.is_zero()) return false;
        return true;
    }

    int max_total_degree() const
    {
        int d = kMinusInfinity;
        for (const auto& p : q) d = std::max(d, p.total_degree());
        return d;
    }

    friend bool operator==(const StructurePolys&, const StructurePolys&) = default;
};

struct Violation {
    std::string kind;         ///< "skew", "jacobi", "C2", "C3"
    std::vector<int> indices; ///< 1-based generator labels, then product orders for C2/C3
    std::vector<MPoly> residual;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

class LCA2;
ValidationReport check_axioms_lambda(const LCA2& r);
LCA2 apply_basis_change(const LCA2& r, const PolyMatrix& m);

class LCA2 {
public:
    LCA2() = default;
    explicit LCA2(StructurePolys s) : structure_(std::move(s)) {}

    const StructurePolys& structure() const { return structure_; }
    const MPoly& q(std::size_t i, std::size_t j, std::size_t k) const { return structure_.at(i, j, k); }
    bool validated() const { return validated_; }
    bool is_commutative() const { return structure_.is_zero(); }

    friend bool operator==(const LCA2& a, const LCA2& b) { return a.structure_ == b.structure_; }

    /// Runs the λ-bracket checker; the flag is only ever set from a passing report.
    friend ValidationReport validate(LCA2& r)
    {
        auto report = check_axioms_lambda(r);
        r.validated_ = report.valid();
        return report;
    }

    /// A change of basis over Q[∂] cannot break the axioms, so validity carries over.
    friend LCA2 apply_basis_change(const LCA2& r, const PolyMatrix& m);

private:
    StructurePolys structure_;
    bool validated_ = false;
};

/// Throws std::invalid_argument carrying the first residual when r is not a Lie conformal algebra.
inline LCA2 require_valid(LCA2 r)
{
    auto report = validate(r);
    if (!report.valid()) {
        const auto& v = report.violations.front();
        throw std::invalid_argument("structure polynomials violate the " + v.kind + " axiom; residual " +
                                    v.residual.front().to_string());
    }
    return r;
}

// ---------------------------------------------------------------------------
// λ-bracket calculus

/// [u_λ v] = Σ u_i(-λ) v_j(λ+∂) Q_{i,j}^k(λ,∂) X^k.
inline BracketValue bracket(const LCA2& r, const Element& u, const Element& v)
{
    std::array<MPoly, 2> uneg, vshift;
    for (std::size_t i = 0; i < 2; ++i) {
        uneg[i] = subst(u[i], Var::partial, -lam());
        vshift[i] = subst(v[i], Var::partial, lam() + del());
    }
    BracketValue out;
    for (std::size_t k = 0; k < 2; ++k) {
        PolyAccumulator acc;
        for (std::size_t i = 0; i < 2; ++i) {
            if (uneg[i].is_zero()) continue;
            for (std::size_t j = 0; j < 2; ++j) {
                if (vshift[j].is_zero() || r.q(i, j, k).is_zero()) continue;
                acc.add_product(uneg[i] * vshift[j], r.q(i, j, k));
            }
        }
        out.comps[k] = acc.take();
    }
    return out;
}

/// a_(n)b = n! * [λ^n] of the bracket; only nonzero products are listed.
inline std::vector<std::pair<unsigned, Element>> nth_products(const BracketValue& bv)
{
    std::vector<std::pair<unsigned, Element>> out;
    int top = std::max(bv.comps[0].deg_in(Var::lambda), bv.comps[1].deg_in(Var::lambda));
    if (top == kMinusInfinity) return out;
    for (unsigned n = 0; n <= static_cast<unsigned>(top); ++n) {
        Rat nf = factorial(n);
        Element e{{nf * bv.comps[0].coeff_in(Var::lambda, n), nf * bv.comps[1].coeff_in(Var::lambda, n)}};
        if (!e.is_zero()) out.emplace_back(n, std::move(e));
    }
    return out;
}

/// Σ λ^n/n! a_(n)b, the inverse of nth_products.
inline BracketValue from_nth_products(const std::vector<std::pair<unsigned, Element>>& products)
{
    BracketValue bv;
    for (const auto& [n, e] : products) {
        MPoly w = (1 / factorial(n)) * lam().pow(n);
        for (std::size_t k = 0; k < 2; ++k) bv.comps[k] += w * e[k];
    }
    return bv;
}

// ---------------------------------------------------------------------------
// Axiom checks

inline ValidationReport check_axioms_lambda(const LCA2& r)
{
    ValidationReport report;
    const MPoly l = lam(), m = mu(), d = del();

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                MPoly res = r.q(i, j, k) + subst(r.q(j, i, k), Var::lambda, -l - d);
                if (!res.is_zero())
                    report.violations.push_back({"skew", {int(i) + 1, int(j) + 1, int(k) + 1}, {std::move(res)}});
            }

    // Substituted copies of every structure polynomial.
    std::array<MPoly, 8> mu_lpd, lam_mpd, mu_d, lam_mlm, lpm_d;
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const MPoly& q = r.structure().q[idx];
        mu_lpd[idx] = subst2(q, m, l + d);
        lam_mpd[idx] = subst(q, Var::partial, m + d);
        mu_d[idx] = subst(q, Var::lambda, m);
        lam_mlm[idx] = subst(q, Var::partial, -l - m);
        lpm_d[idx] = subst(q, Var::lambda, l + m);
    }
    auto at = [](std::size_t i, std::size_t j, std::size_t k) { return i * 4 + j * 2 + k; };

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t t = 0; t < 2; ++t) {
                    PolyAccumulator acc;
                    for (std::size_t s = 0; s < 2; ++s) {
                        acc.add_product(mu_lpd[at(j, k, s)], r.structure().q[at(i, s, t)]);
                        acc.add_product(lam_mpd[at(i, k, s)], mu_d[at(j, s, t)], Rat(-1));
                        acc.add_product(lam_mlm[at(i, j, s)], lpm_d[at(s, k, t)], Rat(-1));
                    }
                    MPoly res = acc.take();
                    if (!res.is_zero())
                        report.violations.push_back(
                            {"jacobi", {int(i) + 1, int(j) + 1, int(k) + 1, int(t) + 1}, {std::move(res)}});
                }
    return report;
}

/// n-th product calculus on generators, extended to Q[∂]-combinations by the
/// (C1) rules alone: (∂a)_(n)b = -n a_(n-1)b and a_(n)(∂b) = ∂(a_(n)b) + n a_(n-1)b.
class NthProductTable {
public:
    explicit NthProductTable(const LCA2& r)
    {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                BracketValue bv{{r.q(i, j, 0), r.q(i, j, 1)}};
                auto& row = base_[i * 2 + j];
                for (auto& [n, e] : nth_products(bv)) {
                    if (row.size() <= n) row.resize(n + 1);
                    row[n] = std::move(e);
                }
                lambda_degree_ = std::max(lambda_degree_, static_cast<int>(row.size()) - 1);
            }
    }

    int lambda_degree() const { return lambda_degree_; }

    /// X^i_(m)(∂^q X^j).
    const Element& generator_product(std::size_t i, std::size_t j, unsigned q, unsigned m)
    {
        auto& tables = shifted_[i * 2 + j];
        while (tables.size() <= q) {
            std::vector<Element> next;
            if (tables.empty()) {
                next = base_[i * 2 + j];
            } else {
                const auto& prev = tables.back();
                next.resize(prev.size() + 1);
                for (std::size_t n = 0; n < next.size(); ++n) {
                    Element e;
                    if (n < prev.size()) e = del() * prev[n];
                    if (n >= 1 && n - 1 < prev.size()) e = e + MPoly(Rat(static_cast<long>(n))) * prev[n - 1];
                    next[n] = std::move(e);
                }
            }
            tables.push_back(std::move(next));
        }
        const auto& t = tables[q];
        if (m >= t.size()) return zero_;
        return t[m];
    }

    /// a_(n)b for arbitrary elements.
    Element product(const Element& a, unsigned n, const Element& b)
    {
        Element out;
        for (std::size_t i = 0; i < 2; ++i)
            for (const auto& [ma, ca] : a[i].terms()) {
                unsigned p = ma.exp(Var::partial);
                if (p > n) continue;
                // (∂^p X^i)_(n) = (-1)^p n!/(n-p)! X^i_(n-p)
                Rat left = factorial(n) / factorial(n - p);
                if (p % 2) left = -left;
                left *= ca;
                for (std::size_t j = 0; j < 2; ++j)
                    for (const auto& [mb, cb] : b[j].terms()) {
                        const Element& g = generator_product(i, j, mb.exp(Var::partial), n - p);
                        if (g.is_zero()) continue;
                        out = out + MPoly(left * cb) * g;
                    }
            }
        return out;
    }

private:
    std::array<std::vector<Element>, 4> base_;
    std::array<std::vector<std::vector<Element>>, 4> shifted_;
    int lambda_degree_ = 0;
    Element zero_;
};

/// Checks (C2) on generator pairs and (C3) on generator triples. (C0) holds because
/// products come from polynomials; (C1) is how the table extends to all elements.
inline ValidationReport check_axioms_nth(const LCA2& r)
{
    ValidationReport report;
    NthProductTable table(r);
    int dl = table.lambda_degree();
    int dd = 0;
    for (const auto& q : r.structure().q) dd = std::max(dd, q.deg_in(Var::partial));
    const unsigned bound = static_cast<unsigned>(2 * dl + dd + 1);

    std::array<Element, 2> gen{Element::basis(0), Element::basis(1)};

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (unsigned n = 0; n <= bound; ++n) {
                // b_(n)a + Σ_l (-1)^(n+l) ∂^(l)(a_(n+l)b) = 0 with a = X^i, b = X^j
                Element res = table.product(gen[j], n, gen[i]);
                for (unsigned l = 0; n + l <= static_cast<unsigned>(dl); ++l) {
                    Rat w = 1 / factorial(l);
                    if ((n + l) % 2) w = -w;
                    res = res + (w * del().pow(l)) * table.product(gen[i], n + l, gen[j]);
                }
                if (!res.is_zero())
                    report.violations.push_back(
                        {"C2", {int(i) + 1, int(j) + 1, int(n)}, {res[0], res[1]}});
            }

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (unsigned m = 0; m <= bound; ++m)
                    for (unsigned n = 0; n <= bound; ++n) {
                        Element res = table.product(gen[i], m, table.product(gen[j], n, gen[k])) -
                                      table.product(gen[j], n, table.product(gen[i], m, gen[k]));
                        for (unsigned l = 0; l <= m; ++l) {
                            Element ab = table.product(gen[i], l, gen[j]);
                            if (ab.is_zero()) continue;
                            res = res - MPoly(binomial(m, l)) * table.product(ab, m + n - l, gen[k]);
                        }
                        if (!res.is_zero())
                            report.violations.push_back({"C3",
                                                         {int(i) + 1, int(j) + 1, int(k) + 1, int(m), int(n)},
                                                         {res[0], res[1]}});
                    }
    return report;
}

// ---------------------------------------------------------------------------
// Change of basis

/// Rows of m are the new generators written in the old ones: Y^a = Σ_b m(a,b) X^b.
inline LCA2 apply_basis_change(const LCA2& r, const PolyMatrix& m)
{
    auto inv = inverse2(m);
    if (!inv) throw std::invalid_argument("basis change is not invertible over Q[∂]");
    std::array<std::array<MPoly, 2>, 2> neg, shift;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < 2; ++i) {
            neg[a][i] = subst(m(a, i), Var::partial, -lam());
            shift[a][i] = subst(m(a, i), Var::partial, lam() + del());
        }
    StructurePolys out;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            std::array<MPoly, 2> v;
            for (std::size_t k = 0; k < 2; ++k) {
                PolyAccumulator acc;
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) {
                        if (neg[a][i].is_zero() || shift[b][j].is_zero() || r.q(i, j, k).is_zero()) continue;
                        acc.add_product(neg[a][i] * shift[b][j], r.q(i, j, k));
                    }
                v[k] = acc.take();
            }
            for (std::size_t c = 0; c < 2; ++c) {
                PolyAccumulator acc;
                for (std::size_t k = 0; k < 2; ++k) acc.add_product(v[k], (*inv)(k, c));
                out.at(a, b, c) = acc.take();
            }
        }
    LCA2 result(std::move(out));
    result.validated_ = r.validated_;
    return result;
}

// ---------------------------------------------------------------------------
// Table of exceptional Q_c rows

inline MPoly vir_poly() { return 2 * lam() + del(); }
inline MPoly u_poly() { return lam().pow(2) + lam() * del(); }

inline bool is_table_c(const Rat& c) { return c == 1 || c == 0 || c == -1 || c == -4 || c == -6; }

/// Parameter polynomials of a table row: Q_c = β * span[0] + γ * span[1].
inline std::vector<MPoly> table_row_span(const Rat& c)
{
    const MPoly s = vir_poly(), u = u_poly(), d = del();
    if (c == 1) return {s};
    if (c == 0) return {s * u, s * d};
    if (c == -1) return {s * d.pow(2), s * u * d};
    if (c == -4) return {s * u.pow(3)};
    if (c == -6) return {s * (11 * u.pow(4) + 2 * u.pow(3) * d.pow(2))};
    return {};
}

inline MPoly table_row(const Rat& c, const Rat& beta, const Rat& gamma = Rat(0))
{
    auto span = table_row_span(c);
    if (span.empty()) throw std::invalid_argument("c = " + to_string(c) + " has no exceptional table row");
    MPoly q = beta * span[0];
    if (span.size() > 1) q += gamma * span[1];
    else if (gamma != 0) throw std::invalid_argument("this table row has a single parameter");
    return q;
}

/// (β, γ) with q = β span[0] + γ span[1], or nullopt when q is outside the row.
inline std::optional<std::pair<Rat, Rat>> table_parameters(const Rat& c, const MPoly& q)
{
    auto span = table_row_span(c);
    if (span.empty()) {
        if (q.is_zero()) return std::pair<Rat, Rat>{Rat(0), Rat(0)};
        return std::nullopt;
    }
    auto coords = solve_in_span(span, q);
    if (!coords) return std::nullopt;
    return std::pair<Rat, Rat>{(*coords)[0], span.size() > 1 ? (*coords)[1] : Rat(0)};
}

// ---------------------------------------------------------------------------
// Constructors. The *_structure builders only assemble polynomials; the named
// constructors run the checker before returning.

inline StructurePolys vir_plus_vir_structure()
{
    StructurePolys s;
    s.at(0, 0, 0) = vir_poly();
    s.at(1, 1, 1) = vir_poly();
    return s;
}

inline StructurePolys central_plus_vir_structure()
{
    StructurePolys s;
    s.at(1, 1, 1) = vir_poly();
    return s;
}

inline StructurePolys nil_structure(const MPoly& q)
{
    StructurePolys s;
    s.at(1, 1, 0) = q;
    return s;
}

inline StructurePolys sol_structure(const MPoly& a)
{
    StructurePolys s;
    s.at(1, 0, 0) = a;
    s.at(0, 1, 0) = -subst(a, Var::lambda, -lam() - del());
    return s;
}

inline StructurePolys cdq_structure(const Rat& c, const Rat& d, const MPoly& qc)
{
    StructurePolys s;
    MPoly a = c * lam() + MPoly(d) + del();
    s.at(1, 0, 0) = a;
    s.at(0, 1, 0) = -subst(a, Var::lambda, -lam() - del());
    s.at(1, 1, 0) = qc;
    s.at(1, 1, 1) = vir_poly();
    return s;
}

inline LCA2 commutative2() { return require_valid(LCA2{}); }

/// [X¹_λ X¹] = (2λ+∂)X¹, everything else zero.
inline LCA2 vir()
{
    StructurePolys s;
    s.at(0, 0, 0) = vir_poly();
    return require_valid(LCA2(s));
}

/// Vir ⊕ Vir: [X^i_λ X^j] = δ_ij (2λ+∂) X^i.
inline LCA2 r_ss() { return require_valid(LCA2(vir_plus_vir_structure())); }

/// K = X¹ central, L = X² Virasoro.
inline LCA2 r_cs() { return require_valid(LCA2(central_plus_vir_structure())); }

/// Current algebra of the 2-dimensional Lie algebra with [e1, e2] = c1 e1 + c2 e2.
inline LCA2 current2(const Rat& c1, const Rat& c2)
{
    StructurePolys s;
    s.at(0, 1, 0) = MPoly(c1);
    s.at(0, 1, 1) = MPoly(c2);
    s.at(1, 0, 0) = MPoly(-c1);
    s.at(1, 0, 1) = MPoly(-c2);
    return require_valid(LCA2(s));
}

/// A = X¹, B = X²: [B_λ B] = Q A.
inline LCA2 r_nil(const MPoly& q)
{
    if (!q.uses_only({Var::lambda, Var::partial}) || !is_skew_lambda(q))
        throw std::invalid_argument("r_nil: Q must be a skew-symmetric polynomial in (λ, ∂)");
    return require_valid(LCA2(nil_structure(q)));
}

/// [B_λ A] = a(λ) A.
inline LCA2 r_sol(const MPoly& a)
{
    if (a.is_zero() || !a.uses_only({Var::lambda})) throw std::invalid_argument("r_sol: a must be a nonzero polynomial in λ");
    return require_valid(LCA2(sol_structure(a)));
}

/// [B_λ A] = (cλ + d + ∂) A, [B_λ B] = Q_c A + (2λ+∂) B.
inline LCA2 r_cdq(const Rat& c, const Rat& d, const MPoly& qc)
{
    if (!qc.is_zero()) {
        if (d != 0 || !is_table_c(c))
            throw std::invalid_argument("r_cdq: a nonzero Q_c requires d = 0 and c in {1, 0, -1, -4, -6}");
        if (!table_parameters(c, qc)) throw std::invalid_argument("r_cdq: Q_c is not in the table row for c = " + to_string(c));
    }
    return require_valid(LCA2(cdq_structure(c, d, qc)));
}

// ---------------------------------------------------------------------------
// Rank one

struct Rank1Verdict {
    enum class Kind { Invalid, Commutative, Virasoro };
    Kind kind = Kind::Invalid;
    Rat alpha;           ///< Virasoro scale, [L_λ L] = α(2λ+∂)L
    MPoly residual;      ///< first nonzero residual when Invalid
    std::string reason;
};

inline MPoly rank1_jacobi_residual(const MPoly& f)
{
    const MPoly l = lam(), m = mu(), d = del();
    PolyAccumulator acc;
    acc.add_product(subst2(f, m, l + d), f);
    acc.add_product(subst(f, Var::partial, m + d), subst(f, Var::lambda, m), Rat(-1));
    acc.add_product(subst(f, Var::partial, -l - m), subst(f, Var::lambda, l + m), Rat(-1));
    return acc.take();
}

inline Rank1Verdict classify_rank1(const MPoly& q)
{
    Rank1Verdict v;
    if (!q.uses_only({Var::lambda, Var::partial})) {
        v.reason = "bracket polynomial may only involve λ and ∂";
        return v;
    }
    MPoly skew = q + subst(q, Var::lambda, -lam() - del());
    if (!skew.is_zero()) {
        v.reason = "skew-symmetry fails";
        v.residual = skew;
        return v;
    }
    MPoly jac = rank1_jacobi_residual(q);
    if (!jac.is_zero()) {
        v.reason = "Jacobi identity fails";
        v.residual = jac;
        return v;
    }
    if (q.is_zero()) {
        v.kind = Rank1Verdict::Kind::Commutative;
        return v;
    }
    if (auto k = proportionality(q, vir_poly()); k && *k != 0) {
        v.kind = Rank1Verdict::Kind::Virasoro;
        v.alpha = *k;
        return v;
    }
    v.reason = "valid bracket outside the Virasoro family";
    return v;
}

} // namespace lca

#endif
