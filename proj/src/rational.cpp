#include "yv/rational.hpp"

namespace yv {

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(text, 10);
            return Rational(n);
        }
        std::string ns = text.substr(0, slash);
        std::string ds = text.substr(slash + 1);
        if (ns.empty() || ds.empty()) return std::nullopt;
        Integer n(ns, 10), d(ds, 10);
        if (d == 0) return std::nullopt;
        Rational q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("pow_rat: 0 to negative power");
        return Rational(0);
    }
    Rational b = e < 0 ? Rational(1) / base : base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

Rational binomial(long n, long k) {
    if (k < 0) return Rational(0);
    Rational acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= Rational(n - i);
        acc /= Rational(i + 1);
    }
    return acc;
}

Integer factorial(long n) {
    Integer acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace yv
