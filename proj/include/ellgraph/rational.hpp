#ifndef ELLGRAPH_RATIONAL_HPP
#define ELLGRAPH_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellgraph
{

// All arithmetic in the library is exact; GMP rationals back every coefficient.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("make_rational: zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "n" or "n/d" with an optional leading sign. Decimal points are rejected.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
    if (s.front() == '+') {
        s.erase(0, 1);
    }
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline Integer factorial(long n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative number");
    }
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

} // namespace ellgraph

#endif
