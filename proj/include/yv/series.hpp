#pragma once

#include <map>
#include <string>

#include "yv/ratfunc.hpp"

namespace yv {

// Truncated power series in h with rational-function coefficients.
// prec() is the number of known coefficients: exponents 0..prec()-1.
// Arithmetic propagates precision; out-of-precision coefficients are
// unknown, never assumed zero.
class HSeries {
public:
    static constexpr int kInfPrec = 1 << 28;

    HSeries() : prec_(kInfPrec) {}
    explicit HSeries(const RatFunc& c0, int prec = kInfPrec) : prec_(prec) { set(0, c0); }
    explicit HSeries(const Rational& c0, int prec = kInfPrec) : prec_(prec) {
        set(0, RatFunc(c0));
    }

    int prec() const { return prec_; }
    bool known(int k) const { return k < prec_; }
    RatFunc coeff(int k) const;
    void set(int k, const RatFunc& c);

    HSeries operator+(const HSeries& o) const;
    HSeries operator-(const HSeries& o) const;
    HSeries operator*(const HSeries& o) const;
    HSeries operator-() const;
    HSeries& operator+=(const HSeries& o);
    HSeries scaled(const RatFunc& s) const;
    HSeries shifted(int k) const;  // multiply by h^k, k >= 0

    HSeries truncated(int prec) const;
    // Multiplicative inverse; requires finite precision and invertible h^0 term.
    HSeries inverse() const;

    // h-adic valuation of the stored coefficients (prec() when all zero).
    int valuation() const;
    // True when every known coefficient is zero, i.e. the series is 0 mod h^prec.
    bool is_zero_known() const;

    bool operator==(const HSeries& o) const;

    std::string str() const;

private:
    int prec_;
    std::map<int, RatFunc> c_;
};

// (x + beta*h)^k as an h-series, k any integer (x an invertible RatFunc for k<0).
HSeries pow_series(const RatFunc& x, const Rational& beta, int k, int prec);

}  // namespace yv
