#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace yv {

// Exact rationals. mpq_class keeps values in canonical form (reduced,
// positive denominator) as long as arithmetic goes through its operators;
// the helpers below canonicalize at construction and parse boundaries.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q". Returns nothing on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

std::string to_string(const Rational& q);

Rational pow_rat(const Rational& base, long e);

// Generalized binomial coefficient with integer (possibly negative) top.
Rational binomial(long n, long k);

Integer factorial(long n);

}  // namespace yv
