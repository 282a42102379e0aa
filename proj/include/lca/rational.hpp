#ifndef LCA_RATIONAL_HPP
#define LCA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lca {

/// Exact rational scalar. gmpxx keeps every value canonical (reduced, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" with arbitrary-precision digits.
inline Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    Int num, den(1);
    try {
        if (slash == std::string::npos) {
            num = Int(s, 10);
        } else {
            num = Int(s.substr(0, slash), 10);
            den = Int(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    return make_rat(num, den);
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Exact square root when r is the square of a rational; false otherwise.
inline bool rational_sqrt(const Rat& r, Rat& root)
{
    if (r < 0) return false;
    Int n = r.get_num(), d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    root = make_rat(sn, sd);
    return true;
}

inline Rat factorial(unsigned n)
{
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

inline Rat binomial(unsigned n, unsigned k)
{
    if (k > n) return Rat(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

} // namespace lca

#endif
