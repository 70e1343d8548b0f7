#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mulrep {

// Arbitrary-precision integer. All arithmetic in this library is exact.
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int int_sign(const Int& a) { return sgn(a); }

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// mpz_class lacks an unsigned long long constructor, so split into halves.
inline Int int_from_u64(unsigned long long v) {
    Int hi(static_cast<unsigned long>(v >> 32));
    return (hi << 32) + Int(static_cast<unsigned long>(v & 0xffffffffULL));
}

inline Int factorial(unsigned long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// Quotient a/b when b divides a exactly; throws otherwise.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0 || a % b != 0)
        throw std::logic_error("exact_div: " + b.get_str() + " does not divide " + a.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline std::string to_dec(const Int& a) { return a.get_str(); }

// Parses a decimal integer with optional sign; rejects anything else.
inline Int from_dec(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw std::invalid_argument("not a decimal integer: '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return Int(s, 10);
}

}  // namespace mulrep
