#ifndef ABMOD_RATIONAL_HPP
#define ABMOD_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "abmod/errors.hpp"

namespace abmod {

// Exact rational scalar.  mpq_class keeps values canonical (reduced,
// positive denominator) through arithmetic; constructors below canonicalize.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Largest integer <= r.
inline mpz_class rat_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// Fractional part in [0, 1); two rationals are congruent mod Z iff these agree.
inline Rational frac_part(const Rational& r) { return r - Rational(rat_floor(r)); }

// "p" or "p/q", always canonical.
inline std::string rat_to_string(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p" and "p/q" with optional sign.  Position info is supplied by
// the series parser; standalone use reports column 0.
Rational rat_from_string(const std::string& text);

}  // namespace abmod

#endif
