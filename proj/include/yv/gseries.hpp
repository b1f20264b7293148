#pragma once

#include <vector>

#include "yv/series.hpp"

namespace yv {

// Coefficients g_0..g_K of the unique normalizing scalar series
// g = 1 + g_1 x^{-1} + g_2 x^{-2} + ... satisfying the difference equation
// g(x + N) = g(x) (1 - x^{-2}). Cached per (N, K); thread safe.
const std::vector<Rational>& norm_scalar_coeffs(long N, int K);

// Residual coefficients of g(x+N) - g(x)(1 - x^{-2}) through x^{-K} for a
// candidate coefficient vector; all zero iff the equation holds to that order.
std::vector<Rational> norm_scalar_residual(long N, const std::vector<Rational>& g, int K);

// g((x + beta*h)/h) as an h-series: 1 + g_1 h/(x+beta*h) + ... expanded
// in h with rational-function coefficients in x.
HSeries norm_scalar_series(const RatFunc& x, const Rational& beta, long N, int prec);

}  // namespace yv
