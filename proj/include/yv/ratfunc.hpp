#pragma once

#include <map>
#include <string>

#include "yv/poly.hpp"

namespace yv {

// Reduced rational function num/den, den nonzero with leading coefficient 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    explicit RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    explicit RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}
    RatFunc(const Poly& num, const Poly& den);  // reduces

    static RatFunc variable(int id) { return RatFunc(Poly::variable(id)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc inv() const;
    RatFunc scaled(const Rational& s) const;
    RatFunc pow(int e) const;  // e may be negative

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    Rational eval(const std::map<int, Rational>& point) const;  // throws on pole
    RatFunc subst(int var, const Poly& value) const;            // throws if den vanishes

    // Substitutes var = point after cancelling every common (var - point)
    // factor between numerator and denominator; throws on a genuine pole.
    RatFunc cancel_and_eval(int var, const Poly& point) const;

    std::string str() const;

private:
    Poly num_, den_;
    void normalize();
};

}  // namespace yv
