#ifndef LCA_MPOLY_HPP
#define LCA_MPOLY_HPP

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lca {

/// The fixed, ordered variable set: lambda < mu < partial < x < y.
enum class Var : std::uint8_t { lambda = 0, mu = 1, partial = 2, x = 3, y = 4 };

inline constexpr std::size_t kNumVars = 5;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::lambda, Var::mu, Var::partial, Var::x, Var::y};

/// Degree of the zero polynomial. Never -1.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

inline const char* var_name(Var v)
{
    switch (v) {
    case Var::lambda: return "λ";
    case Var::mu: return "µ";
    case Var::partial: return "∂";
    case Var::x: return "x";
    case Var::y: return "y";
    }
    return "?";
}

/// Dense length-5 exponent vector packed 12 bits per variable. Lambda sits in
/// the most significant field, so integer order on keys is lex order.
class Monomial {
public:
    static constexpr unsigned kBits = 12;
    static constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;
    static constexpr unsigned kMaxExponent = static_cast<unsigned>(kMask);

    constexpr Monomial() = default;

    static constexpr Monomial from_key(std::uint64_t key)
    {
        Monomial m;
        m.key_ = key;
        return m;
    }

    static Monomial of(Var v, unsigned e)
    {
        if (e > kMaxExponent) throw std::overflow_error("exponent out of range");
        return from_key(std::uint64_t{e} << shift(v));
    }

    static Monomial from_exponents(const std::array<unsigned, kNumVars>& e)
    {
        Monomial m;
        for (std::size_t i = 0; i < kNumVars; ++i) m = m * of(kAllVars[i], e[i]);
        return m;
    }

    constexpr unsigned exp(Var v) const { return static_cast<unsigned>((key_ >> shift(v)) & kMask); }

    Monomial with(Var v, unsigned e) const
    {
        if (e > kMaxExponent) throw std::overflow_error("exponent out of range");
        return from_key((key_ & ~(kMask << shift(v))) | (std::uint64_t{e} << shift(v)));
    }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (Var v : kAllVars) d += exp(v);
        return d;
    }

    constexpr std::uint64_t key() const { return key_; }

    /// Callers guarantee per-field sums stay below 2^12 (checked at polynomial level).
    friend constexpr Monomial operator*(Monomial a, Monomial b) { return from_key(a.key_ + b.key_); }

    friend constexpr auto operator<=>(Monomial, Monomial) = default;

private:
    static constexpr unsigned shift(Var v) { return (4u - static_cast<unsigned>(v)) * kBits; }

    std::uint64_t key_ = 0;
};

/// Sparse multivariate polynomial over Q. Terms sorted ascending by monomial,
/// no zero coefficients stored, so structural equality is polynomial equality.
class MPoly {
public:
    using Term = std::pair<Monomial, Rat>;

    MPoly() = default;
    MPoly(const Rat& c)
    {
        if (c != 0) terms_.emplace_back(Monomial{}, c);
    }
    MPoly(long c) : MPoly(Rat(c)) {}

    static MPoly var(Var v) { return term(Rat(1), Monomial::of(v, 1)); }

    static MPoly term(const Rat& c, Monomial m)
    {
        MPoly p;
        if (c != 0) p.terms_.emplace_back(m, c);
        return p;
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    static MPoly from_terms(std::vector<Term> terms)
    {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        MPoly p;
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second += t.second;
            } else {
                if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{}); }
    Rat constant_term() const
    {
        if (!terms_.empty() && terms_.front().first == Monomial{}) return terms_.front().second;
        return Rat(0);
    }

    /// Lex-greatest term (lambda first).
    const Term& leading_term() const
    {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.back();
    }

    Rat coefficient(Monomial m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, Monomial key) { return t.first < key; });
        if (it != terms_.end() && it->first == m) return it->second;
        return Rat(0);
    }

    int deg_in(Var v) const
    {
        if (terms_.empty()) return kMinusInfinity;
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.exp(v));
        return static_cast<int>(d);
    }

    int total_degree() const
    {
        if (terms_.empty()) return kMinusInfinity;
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
        return static_cast<int>(d);
    }

    bool uses_only(std::initializer_list<Var> allowed) const
    {
        for (const auto& t : terms_)
            for (Var v : kAllVars)
                if (t.first.exp(v) != 0 && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
        return true;
    }

    /// Coefficient of v^k, as a polynomial free of v.
    MPoly coeff_in(Var v, unsigned k) const
    {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (t.first.exp(v) == k) out.emplace_back(t.first.with(v, 0), t.second);
        return from_terms(std::move(out));
    }

    /// (total degree, component) pairs in ascending degree; components sum to *this.
    std::vector<std::pair<int, MPoly>> homogeneous_components() const
    {
        std::map<int, std::vector<Term>> buckets;
        for (const auto& t : terms_) buckets[static_cast<int>(t.first.total_degree())].push_back(t);
        std::vector<std::pair<int, MPoly>> out;
        for (auto& [d, ts] : buckets) out.emplace_back(d, from_terms(std::move(ts)));
        return out;
    }

    MPoly homogeneous_component(int degree) const
    {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (static_cast<int>(t.first.total_degree()) == degree) out.push_back(t);
        return from_terms(std::move(out));
    }

    MPoly operator-() const
    {
        MPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = add(*this, o, Rat(1)); }
    MPoly& operator-=(const MPoly& o) { return *this = add(*this, o, Rat(-1)); }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    friend MPoly operator+(const MPoly& a, const MPoly& b) { return add(a, b, Rat(1)); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return add(a, b, Rat(-1)); }

    friend MPoly operator*(const Rat& c, const MPoly& p)
    {
        if (c == 0) return {};
        MPoly r = p;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }
    friend MPoly operator*(const MPoly& p, const Rat& c) { return c * p; }
    friend MPoly operator*(long c, const MPoly& p) { return Rat(c) * p; }
    friend MPoly operator*(const MPoly& p, long c) { return Rat(c) * p; }
    friend MPoly operator*(int c, const MPoly& p) { return Rat(c) * p; }
    friend MPoly operator*(const MPoly& p, int c) { return Rat(c) * p; }

    friend MPoly operator*(const MPoly& a, const MPoly& b);

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    MPoly pow(unsigned e) const
    {
        MPoly result(1), base = *this;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    /// Simultaneous substitution; variables without a binding stay as they are.
    MPoly substitute(const std::map<Var, MPoly>& bindings) const;

    std::string to_string() const;

private:
    static MPoly add(const MPoly& a, const MPoly& b, const Rat& sign)
    {
        MPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, sign * j->second);
                ++j;
            } else {
                Rat c = i->second + sign * j->second;
                if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

/// Hash accumulator for sums of many products; avoids repeated sorted merges.
class PolyAccumulator {
public:
    void add(const MPoly& p, const Rat& scale = Rat(1))
    {
        if (scale == 0) return;
        for (const auto& [m, c] : p.terms()) acc_[m.key()] += scale * c;
    }

    void add_product(const MPoly& a, const MPoly& b, const Rat& scale = Rat(1))
    {
        if (a.is_zero() || b.is_zero() || scale == 0) return;
        check_degrees(a, b);
        Rat tmp;
        for (const auto& [ma, ca] : a.terms()) {
            for (const auto& [mb, cb] : b.terms()) {
                mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
                if (scale != 1) tmp *= scale;
                Rat& slot = acc_[(ma * mb).key()];
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
            }
        }
    }

    MPoly take()
    {
        std::vector<MPoly::Term> ts;
        ts.reserve(acc_.size());
        for (auto& [k, c] : acc_)
            if (c != 0) ts.emplace_back(Monomial::from_key(k), std::move(c));
        acc_.clear();
        return MPoly::from_terms(std::move(ts));
    }

    static void check_degrees(const MPoly& a, const MPoly& b)
    {
        if (a.total_degree() + b.total_degree() > static_cast<int>(Monomial::kMaxExponent))
            throw std::overflow_error("polynomial degree exceeds exponent field width");
    }

private:
    std::unordered_map<std::uint64_t, Rat> acc_;
};

inline MPoly operator*(const MPoly& a, const MPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && a.terms_[0].first == Monomial{}) return a.terms_[0].second * b;
    if (b.terms_.size() == 1 && b.terms_[0].first == Monomial{}) return b.terms_[0].second * a;
    PolyAccumulator acc;
    acc.add_product(a, b);
    return acc.take();
}

inline MPoly MPoly::substitute(const std::map<Var, MPoly>& bindings) const
{
    if (terms_.empty()) return {};
    std::array<std::vector<MPoly>, kNumVars> powers;
    std::array<const MPoly*, kNumVars> target{};
    for (Var v : kAllVars) {
        auto it = bindings.find(v);
        target[static_cast<std::size_t>(v)] = it == bindings.end() ? nullptr : &it->second;
    }
    auto power = [&](Var v, unsigned e) -> const MPoly& {
        auto& cache = powers[static_cast<std::size_t>(v)];
        if (cache.empty()) cache.emplace_back(1);
        while (cache.size() <= e) cache.push_back(cache.back() * *target[static_cast<std::size_t>(v)]);
        return cache[e];
    };

    PolyAccumulator acc;
    for (const auto& [m, c] : terms_) {
        // Keep unbound variables as a residual monomial.
        Monomial rest;
        MPoly prod = MPoly::term(c, Monomial{});
        for (Var v : kAllVars) {
            unsigned e = m.exp(v);
            if (e == 0) continue;
            if (target[static_cast<std::size_t>(v)] == nullptr) {
                rest = rest * Monomial::of(v, e);
            } else {
                prod = prod * power(v, e);
            }
        }
        acc.add_product(prod, MPoly::term(Rat(1), rest));
    }
    return acc.take();
}

inline std::string MPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit_monomial = m == Monomial{};
        if (mag != 1 || unit_monomial) {
            os << mag.get_str();
            if (!unit_monomial) os << "*";
        }
        bool first_var = true;
        for (Var v : kAllVars) {
            unsigned e = m.exp(v);
            if (e == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << var_name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

// Shorthands used throughout.
inline MPoly lam() { return MPoly::var(Var::lambda); }
inline MPoly mu() { return MPoly::var(Var::mu); }
inline MPoly del() { return MPoly::var(Var::partial); }

/// p(-λ-∂, ∂) style substitutions are the bread and butter of the bracket calculus.
inline MPoly subst(const MPoly& p, Var v, const MPoly& value) { return p.substitute({{v, value}}); }

/// p(λ, ∂) -> p(u, w) in one go.
inline MPoly subst2(const MPoly& p, const MPoly& lambda_to, const MPoly& partial_to)
{
    return p.substitute({{Var::lambda, lambda_to}, {Var::partial, partial_to}});
}

} // namespace lca

#endif
