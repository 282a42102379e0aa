#ifndef LCA_AUT_HPP
#define LCA_AUT_HPP

#include "classify.hpp"
#include "lca.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lca {

/// A ↦ k1 A, B ↦ k2 B + f(∂) A.
struct AutElement {
    Rat k1 = 1, k2 = 1;
    MPoly f;

    AutElement() = default;
    AutElement(Rat a, Rat b, MPoly g = {}) : k1(std::move(a)), k2(std::move(b)), f(std::move(g))
    {
        if (k1 == 0 || k2 == 0) throw std::invalid_argument("automorphism diagonal entries must be nonzero");
        detail::require_univariate(f, "AutElement");
    }

    PolyMatrix matrix() const { return PolyMatrix{{MPoly(k1), MPoly()}, {f, MPoly(k2)}}; }

    friend bool operator==(const AutElement&, const AutElement&) = default;
};

/// φ ∘ ψ.
inline AutElement compose(const AutElement& phi, const AutElement& psi)
{
    return {phi.k1 * psi.k1, phi.k2 * psi.k2, phi.k1 * psi.f + psi.k2 * phi.f};
}

inline AutElement inverse(const AutElement& phi) { return {1 / phi.k1, 1 / phi.k2, -(1 / (phi.k1 * phi.k2)) * phi.f}; }

/// Reads a matrix with constant diagonal and zero upper-right entry as an AutElement.
inline std::optional<AutElement> as_triangular(const PolyMatrix& m)
{
    if (!m(0, 1).is_zero() || !m(0, 0).is_constant() || !m(1, 1).is_constant()) return std::nullopt;
    if (m(0, 0).is_zero() || m(1, 1).is_zero()) return std::nullopt;
    return AutElement(m(0, 0).constant_term(), m(1, 1).constant_term(), m(1, 0));
}

inline bool is_automorphism(const LCA2& r, const PolyMatrix& m)
{
    MPoly d = det2(m);
    if (d.is_zero() || !d.is_constant()) return false;
    return apply_basis_change(r, m).structure() == r.structure();
}

inline bool is_automorphism(const LCA2& r, const AutElement& phi) { return is_automorphism(r, phi.matrix()); }

// ---------------------------------------------------------------------------
// Descriptors

struct AutGroupDescriptor {
    enum class Group { GL2PolyRing, Z2, Cstar, CstarSemidirectPolyRing, CstarSemidirectC, Cvector, CstarSemidirectCvector };
    enum class K1Rule { Free, One, SquareOfK2 };

    Group group = Group::GL2PolyRing;
    int dim = 0; ///< Cvector and CstarSemidirectCvector
    std::vector<std::string> constraints;
    std::vector<AutElement> generators;
    std::vector<PolyMatrix> matrices; ///< non-triangular generators (permutations)

    // Membership test for triangular elements; unused for GL2PolyRing and Z2.
    K1Rule k1_rule = K1Rule::Free;
    bool k2_is_one = true;
    std::optional<std::vector<MPoly>> f_span; ///< nullopt: f unconstrained

    bool admits(const AutElement& e) const
    {
        if (group == Group::GL2PolyRing) return true;
        if (group == Group::Z2) return e == AutElement{};
        if (k1_rule == K1Rule::One && e.k1 != 1) return false;
        if (k1_rule == K1Rule::SquareOfK2 && e.k1 != e.k2 * e.k2) return false;
        if (k2_is_one && e.k2 != 1) return false;
        if (!f_span) return true;
        if (e.f.is_zero()) return true;
        return f_span->empty() ? false : solve_in_span(*f_span, e.f).has_value();
    }

    bool admits(const PolyMatrix& m) const
    {
        if (group == Group::GL2PolyRing) {
            MPoly d = det2(m);
            return !d.is_zero() && d.is_constant();
        }
        if (group == Group::Z2) return std::find(matrices.begin(), matrices.end(), m) != matrices.end();
        auto e = as_triangular(m);
        return e && admits(*e);
    }
};

inline const char* group_name(AutGroupDescriptor::Group g)
{
    using G = AutGroupDescriptor::Group;
    switch (g) {
    case G::GL2PolyRing: return "GL2PolyRing";
    case G::Z2: return "Z2";
    case G::Cstar: return "Cstar";
    case G::CstarSemidirectPolyRing: return "CstarSemidirectPolyRing";
    case G::CstarSemidirectC: return "CstarSemidirectC";
    case G::Cvector: return "Cvector";
    case G::CstarSemidirectCvector: return "CstarSemidirectCvector";
    }
    return "?";
}

inline PolyMatrix swap_matrix() { return PolyMatrix{{MPoly(), MPoly(1)}, {MPoly(1), MPoly()}}; }

/// Automorphism group of a canonical representative, in its (A, B) basis.
inline AutGroupDescriptor automorphism_group(const CanonicalForm& form)
{
    using G = AutGroupDescriptor::Group;
    using K1 = AutGroupDescriptor::K1Rule;
    using Kind = CanonicalForm::Kind;
    AutGroupDescriptor out;
    switch (form.kind) {
    case Kind::Commutative:
        out.group = G::GL2PolyRing;
        out.constraints = {"det in Q^x"};
        out.generators = {AutElement(2, 1), AutElement(1, 1, MPoly(1)), AutElement(1, 1, del())};
        out.matrices = {swap_matrix()};
        return out;
    case Kind::SemisimpleVirVir:
        out.group = G::Z2;
        out.constraints = {"phi in {I, swap}"};
        out.matrices = {PolyMatrix::identity(2), swap_matrix()};
        return out;
    case Kind::Rcs:
        out.group = G::Cstar;
        out.constraints = {"k2=1", "f=0"};
        out.f_span = std::vector<MPoly>{};
        out.generators = {AutElement(2, 1)};
        return out;
    case Kind::Rnil:
        out.group = G::CstarSemidirectPolyRing;
        out.constraints = {"k1=k2^2"};
        out.k1_rule = K1::SquareOfK2;
        out.k2_is_one = false;
        out.generators = {AutElement(4, 2), AutElement(1, 1, MPoly(1)), AutElement(1, 1, del()), AutElement(1, 1, del().pow(2))};
        return out;
    case Kind::Rsol: {
        MPoly f = subst(form.poly, Var::lambda, -del());
        out.group = G::CstarSemidirectC;
        out.constraints = {"k2=1", "f=k*a(-d)"};
        out.f_span = std::vector<MPoly>{f};
        out.generators = {AutElement(2, 1), AutElement(1, 1, f)};
        return out;
    }
    case Kind::Rcdq: {
        auto kernel = coboundary_kernel(form.c, form.d);
        bool rigid = !form.poly.is_zero();
        out.f_span = kernel;
        out.constraints = {"k2=1", "f in span{"};
        for (std::size_t i = 0; i < kernel.size(); ++i) out.constraints[1] += (i ? ", " : "") + kernel[i].to_string();
        out.constraints[1] += "}";
        if (rigid) {
            out.k1_rule = K1::One;
            out.constraints.insert(out.constraints.begin(), "k1=1");
        } else {
            out.generators.push_back(AutElement(2, 1));
        }
        for (const auto& f : kernel) out.generators.push_back(AutElement(1, 1, f));
        out.dim = static_cast<int>(kernel.size());
        if (kernel.size() == 1) out.group = rigid ? G::Cvector : G::CstarSemidirectC;
        else out.group = rigid ? G::Cvector : G::CstarSemidirectCvector;
        return out;
    }
    }
    throw std::logic_error("unknown canonical form");
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace detail {

/// Arithmetic modulo the Mersenne prime 2^61 - 1, used to reject candidates cheaply.
/// A nonzero residue proves a rational identity false; survivors are rechecked exactly.
struct ModP {
    static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
    static std::uint64_t reduce(unsigned __int128 x)
    {
        std::uint64_t r = static_cast<std::uint64_t>(x & p) + static_cast<std::uint64_t>(x >> 61);
        return r >= p ? r - p : r;
    }
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return reduce(static_cast<unsigned __int128>(a) * b); }
    static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a + b >= p ? a + b - p : a + b; }
    static std::uint64_t from_long(long v) { return v >= 0 ? static_cast<std::uint64_t>(v) % p : p - static_cast<std::uint64_t>(-v) % p; }
    static std::uint64_t pow(std::uint64_t a, std::uint64_t e)
    {
        std::uint64_t r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    static std::uint64_t from_rat(const Rat& q)
    {
        auto reduce_z = [](const mpz_class& z) {
            const mpz_class modulus(static_cast<unsigned long>(p));
            mpz_class m = z % modulus;
            if (m < 0) m += modulus;
            return static_cast<std::uint64_t>(m.get_ui());
        };
        return mul(reduce_z(q.get_num()), pow(reduce_z(q.get_den()), p - 2));
    }
    static std::uint64_t eval(const MPoly& poly, std::uint64_t l, std::uint64_t d)
    {
        std::uint64_t acc = 0;
        for (const auto& [m, c] : poly.terms())
            acc = add(acc, mul(from_rat(c), mul(pow(l, m.exp(Var::lambda)), pow(d, m.exp(Var::partial)))));
        return acc;
    }
};

struct KeyHash {
    std::size_t operator()(const std::vector<long>& v) const
    {
        std::size_t h = 0;
        for (long x : v) h = h * 1000003u ^ std::hash<long>{}(x);
        return h;
    }
};

} // namespace detail

/// Every invertible M with entries of degree <= deg_bound and coefficients in coeff_set
/// such that the basis change M turns `from` into `to`, sorted by entry coefficients.
/// Only unimodular candidates are evaluated: for each first row the second rows with
/// constant determinant are found by matching the non-constant coefficients of f0 g1 and g0 f1.
inline std::vector<PolyMatrix> bounded_iso_search(const LCA2& from, const LCA2& to, int deg_bound = 2,
                                                  std::vector<long> coeff_set = {-2, -1, 0, 1, 2})
{
    using detail::ModP;
    if (deg_bound < 0 || coeff_set.empty()) return {};
    std::sort(coeff_set.begin(), coeff_set.end());
    coeff_set.erase(std::unique(coeff_set.begin(), coeff_set.end()), coeff_set.end());
    const std::size_t len = static_cast<std::size_t>(deg_bound) + 1;

    std::vector<std::vector<long>> polys{{}};
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<std::vector<long>> next;
        for (const auto& p : polys)
            for (long c : coeff_set) {
                next.push_back(p);
                next.back().push_back(c);
            }
        polys = std::move(next);
    }
    const std::size_t n = polys.size();

    auto product = [&](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> out(2 * len - 1, 0);
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < len; ++j) out[i + j] += a[i] * b[j];
        return out;
    };

    // Evaluation points (λ, ∂) and, per polynomial, its values at ∂, -λ and λ+∂.
    static constexpr std::array<std::array<long, 2>, 3> points{{{3, 5}, {-7, 11}, {13, -2}}};
    std::vector<std::array<std::uint64_t, 9>> vals(n);
    for (std::size_t idx = 0; idx < n; ++idx)
        for (std::size_t pt = 0; pt < points.size(); ++pt) {
            long l = points[pt][0], d = points[pt][1];
            std::array<long, 3> at{d, -l, l + d};
            for (std::size_t w = 0; w < 3; ++w) {
                std::uint64_t acc = 0, x = ModP::from_long(at[w]);
                for (std::size_t i = len; i-- > 0;) acc = ModP::add(ModP::mul(acc, x), ModP::from_long(polys[idx][i]));
                vals[idx][pt * 3 + w] = acc;
            }
        }
    std::array<std::array<std::uint64_t, 8>, 3> qv, qt;
    for (std::size_t pt = 0; pt < points.size(); ++pt)
        for (std::size_t t = 0; t < 8; ++t) {
            auto l = ModP::from_long(points[pt][0]), d = ModP::from_long(points[pt][1]);
            qv[pt][t] = ModP::eval(from.structure().q[t], l, d);
            qt[pt][t] = ModP::eval(to.structure().q[t], l, d);
        }

    auto passes_mod_p = [&](const std::array<std::size_t, 4>& m) {
        auto entry = [&](std::size_t i, std::size_t k, std::size_t pt, std::size_t w) { return vals[m[i * 2 + k]][pt * 3 + w]; };
        for (std::size_t pt = 0; pt < points.size(); ++pt)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    for (std::size_t out = 0; out < 2; ++out) {
                        std::uint64_t lhs = 0, rhs = 0;
                        for (std::size_t k = 0; k < 2; ++k) lhs = ModP::add(lhs, ModP::mul(qt[pt][i * 4 + j * 2 + k], entry(k, out, pt, 0)));
                        for (std::size_t k = 0; k < 2; ++k)
                            for (std::size_t l = 0; l < 2; ++l)
                                rhs = ModP::add(rhs, ModP::mul(ModP::mul(entry(i, k, pt, 1), entry(j, l, pt, 2)), qv[pt][k * 4 + l * 2 + out]));
                        if (lhs != rhs) return false;
                    }
        return true;
    };

    auto to_mpoly = [&](std::size_t idx) {
        MPoly p;
        for (std::size_t i = 0; i < len; ++i) p += MPoly(Rat(polys[idx][i])) * del().pow(static_cast<unsigned>(i));
        return p;
    };

    std::vector<std::array<std::size_t, 4>> found;
    std::unordered_map<std::vector<long>, std::vector<std::size_t>, detail::KeyHash> by_key;
    for (std::size_t f0 = 0; f0 < n; ++f0)
        for (std::size_t g0 = 0; g0 < n; ++g0) {
            by_key.clear();
            std::vector<long> consts(n);
            for (std::size_t g1 = 0; g1 < n; ++g1) {
                auto pr = product(polys[f0], polys[g1]);
                consts[g1] = pr[0];
                pr.erase(pr.begin());
                by_key[pr].push_back(g1);
            }
            for (std::size_t f1 = 0; f1 < n; ++f1) {
                auto pr = product(polys[g0], polys[f1]);
                long c = pr[0];
                pr.erase(pr.begin());
                auto it = by_key.find(pr);
                if (it == by_key.end()) continue;
                for (std::size_t g1 : it->second) {
                    if (consts[g1] == c) continue;
                    std::array<std::size_t, 4> m{f0, g0, f1, g1};
                    if (!passes_mod_p(m)) continue;
                    PolyMatrix pm{{to_mpoly(f0), to_mpoly(g0)}, {to_mpoly(f1), to_mpoly(g1)}};
                    if (apply_basis_change(from, pm).structure() == to.structure()) found.push_back(m);
                }
            }
        }

    std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < 4; ++i)
            if (polys[a[i]] != polys[b[i]]) return polys[a[i]] < polys[b[i]];
        return false;
    });
    std::vector<PolyMatrix> out;
    for (const auto& m : found) out.push_back(PolyMatrix{{to_mpoly(m[0]), to_mpoly(m[1])}, {to_mpoly(m[2]), to_mpoly(m[3])}});
    return out;
}

/// Automorphisms within the bounds of bounded_iso_search.
inline std::vector<PolyMatrix> bounded_aut_search(const LCA2& r, int deg_bound = 2, std::vector<long> coeff_set = {-2, -1, 0, 1, 2})
{
    return bounded_iso_search(r, r, deg_bound, std::move(coeff_set));
}

} // namespace lca

#endif
