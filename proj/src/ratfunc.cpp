#include "yv/ratfunc.hpp"

#include <stdexcept>

namespace yv {

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void RatFunc::normalize() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = Poly::exact_div(num_, g);
        den_ = Poly::exact_div(den_, g);
    }
    Rational lc = den_.leading_coeff();
    if (lc != 1) {
        num_ = num_.scaled(Rational(1) / lc);
        den_ = den_.scaled(Rational(1) / lc);
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    *this = *this + o;
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
    *this = *this - o;
    return *this;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    // Cross-cancel first; the factors that remain are pairwise coprime.
    Poly g1 = Poly::gcd(num_, o.den_);
    Poly g2 = Poly::gcd(o.num_, den_);
    Poly n1 = g1.is_constant() ? num_ : Poly::exact_div(num_, g1);
    Poly d2 = g1.is_constant() ? o.den_ : Poly::exact_div(o.den_, g1);
    Poly n2 = g2.is_constant() ? o.num_ : Poly::exact_div(o.num_, g2);
    Poly d1 = g2.is_constant() ? den_ : Poly::exact_div(den_, g2);
    RatFunc r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    if (r.den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (r.num_.is_zero()) {
        r.den_ = Poly(Rational(1));
        return r;
    }
    Rational lc = r.den_.leading_coeff();
    if (lc != 1) {
        r.num_ = r.num_.scaled(Rational(1) / lc);
        r.den_ = r.den_.scaled(Rational(1) / lc);
    }
    return r;
}

RatFunc RatFunc::inv() const {
    if (num_.is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    Rational lc = r.den_.leading_coeff();
    if (lc != 1) {
        r.num_ = r.num_.scaled(Rational(1) / lc);
        r.den_ = r.den_.scaled(Rational(1) / lc);
    }
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::scaled(const Rational& s) const {
    RatFunc r = *this;
    r.num_ = r.num_.scaled(s);
    if (s == 0) r.den_ = Poly(Rational(1));
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc(Rational(1));
    RatFunc b = e < 0 ? inv() : *this;
    RatFunc acc(Rational(1));
    for (int i = 0, n = e < 0 ? -e : e; i < n; ++i) acc = acc * b;
    return acc;
}

bool RatFunc::operator==(const RatFunc& o) const {
    // Cross-multiplication avoids relying on unique normal forms.
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

Rational RatFunc::eval(const std::map<int, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw std::domain_error("RatFunc::eval: pole");
    return num_.eval(point) / d;
}

RatFunc RatFunc::subst(int var, const Poly& value) const {
    return RatFunc(num_.subst(var, value), den_.subst(var, value));
}

RatFunc RatFunc::cancel_and_eval(int var, const Poly& point) const {
    Poly n = num_, d = den_;
    while (true) {
        Poly dsub = d.subst(var, point);
        if (!dsub.is_zero()) {
            Poly nsub = n.subst(var, point);
            return RatFunc(nsub, dsub);
        }
        Poly nq, dq;
        if (!Poly::divide_linear(n, var, point, nq))
            throw std::domain_error("cancel_and_eval: pole at substitution point");
        if (!Poly::divide_linear(d, var, point, dq))
            throw std::domain_error("cancel_and_eval: denominator not divisible");
        n = nq;
        d = dq;
    }
}

std::string RatFunc::str() const {
    if (is_poly()) {
        if (den_.constant_value() == 1) return num_.str();
        return "(" + num_.str() + ")/" + to_string(den_.constant_value());
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace yv
