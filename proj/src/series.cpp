#include "yv/series.hpp"

#include <stdexcept>

namespace yv {

RatFunc HSeries::coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? RatFunc() : it->second;
}

void HSeries::set(int k, const RatFunc& c) {
    if (k < 0) throw std::domain_error("HSeries: negative h exponent");
    if (k >= prec_) return;
    if (c.is_zero())
        c_.erase(k);
    else
        c_[k] = c;
}

HSeries HSeries::operator+(const HSeries& o) const {
    HSeries r;
    r.prec_ = std::min(prec_, o.prec_);
    for (const auto& [k, v] : c_)
        if (k < r.prec_) r.c_[k] = v;
    for (const auto& [k, v] : o.c_) {
        if (k >= r.prec_) continue;
        auto it = r.c_.find(k);
        if (it == r.c_.end()) {
            r.c_[k] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

HSeries HSeries::operator-(const HSeries& o) const { return *this + (-o); }

HSeries HSeries::operator-() const {
    HSeries r = *this;
    for (auto& [k, v] : r.c_) v = -v;
    return r;
}

HSeries& HSeries::operator+=(const HSeries& o) {
    *this = *this + o;
    return *this;
}

int HSeries::valuation() const {
    if (c_.empty()) return prec_;
    return c_.begin()->first;
}

HSeries HSeries::operator*(const HSeries& o) const {
    HSeries r;
    long pa = static_cast<long>(prec_) + o.valuation();
    long pb = static_cast<long>(o.prec_) + valuation();
    r.prec_ = static_cast<int>(std::min({pa, pb, static_cast<long>(kInfPrec)}));
    for (const auto& [ka, va] : c_)
        for (const auto& [kb, vb] : o.c_) {
            int k = ka + kb;
            if (k >= r.prec_) continue;
            auto it = r.c_.find(k);
            if (it == r.c_.end()) {
                RatFunc p = va * vb;
                if (!p.is_zero()) r.c_[k] = p;
            } else {
                it->second += va * vb;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    return r;
}

HSeries HSeries::scaled(const RatFunc& s) const {
    HSeries r;
    r.prec_ = prec_;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * s;
    return r;
}

HSeries HSeries::shifted(int k) const {
    if (k < 0) throw std::domain_error("HSeries::shifted: negative shift");
    HSeries r;
    r.prec_ = prec_ >= kInfPrec ? kInfPrec : prec_ + k;
    for (const auto& [e, v] : c_) r.c_[e + k] = v;
    return r;
}

HSeries HSeries::truncated(int prec) const {
    HSeries r;
    r.prec_ = std::min(prec, prec_);
    for (const auto& [k, v] : c_)
        if (k < r.prec_) r.c_[k] = v;
    return r;
}

HSeries HSeries::inverse() const {
    if (prec_ >= kInfPrec)
        throw std::domain_error("HSeries::inverse: truncate to finite precision first");
    RatFunc a0 = coeff(0);
    if (a0.is_zero()) throw std::domain_error("HSeries::inverse: h^0 term is zero");
    RatFunc b0 = a0.inv();
    HSeries r;
    r.prec_ = prec_;
    r.set(0, b0);
    for (int n = 1; n < prec_; ++n) {
        RatFunc acc;
        for (const auto& [k, v] : c_) {
            if (k < 1 || k > n) continue;
            RatFunc bn = r.coeff(n - k);
            if (!bn.is_zero()) acc += v * bn;
        }
        if (!acc.is_zero()) r.set(n, -(b0 * acc));
    }
    return r;
}

bool HSeries::is_zero_known() const { return c_.empty(); }

bool HSeries::operator==(const HSeries& o) const {
    return prec_ == o.prec_ && (*this - o).is_zero_known();
}

std::string HSeries::str() const {
    std::string s = "[";
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) s += " + ";
        s += "(" + v.str() + ")h^" + std::to_string(k);
        first = false;
    }
    if (first) s += "0";
    s += " ; prec " + (prec_ >= kInfPrec ? std::string("inf") : std::to_string(prec_)) + "]";
    return s;
}

HSeries pow_series(const RatFunc& x, const Rational& beta, int k, int prec) {
    HSeries r;
    r = r.truncated(prec);
    if (beta == 0) {
        r.set(0, x.pow(k));
        return r;
    }
    int cap = prec >= HSeries::kInfPrec ? (k >= 0 ? k + 1 : HSeries::kInfPrec) : prec;
    if (cap >= HSeries::kInfPrec)
        throw std::domain_error("pow_series: infinite expansion needs finite precision");
    for (int l = 0; l < cap; ++l) {
        Rational b = binomial(k, l);
        if (b == 0) continue;
        r.set(l, x.pow(k - l).scaled(b * pow_rat(beta, l)));
    }
    return r;
}

}  // namespace yv
