#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "yv/rational.hpp"
#include "yv/variables.hpp"

namespace yv {

// Monomial: (variable id, exponent) pairs, sorted by id, exponents > 0.
using Mono = std::vector<std::pair<int, int>>;

// Graded order, ties broken lexicographically with h ranked after every
// spectral variable. Returns -1, 0, 1.
int cmp_mono(const Mono& a, const Mono& b);

struct MonoDesc {
    bool operator()(const Mono& a, const Mono& b) const { return cmp_mono(a, b) > 0; }
};

// Sparse multivariate polynomial over Rational. Leading term first.
class Poly {
public:
    using Terms = std::map<Mono, Rational, MonoDesc>;

    Poly() = default;
    explicit Poly(const Rational& c);
    explicit Poly(long c) : Poly(Rational(c)) {}
    static Poly variable(int id, int exp = 1);
    static Poly linform(const LinForm& f);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant
    const Terms& terms() const { return terms_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly scaled(const Rational& s) const;
    Poly pow(int e) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    int total_degree() const;          // -1 for zero
    int deg_in(int var) const;         // -1 for zero, 0 if var absent
    std::set<int> vars() const;
    const Rational& leading_coeff() const;  // requires nonzero

    std::vector<Poly> coeffs_in(int var) const;  // index = exponent in var
    Poly coeff_in(int var, int exp) const;
    static Poly assemble_in(int var, const std::vector<Poly>& cs);

    Poly subst(int var, const Poly& value) const;
    Rational eval(const std::map<int, Rational>& point) const;

    // Rational content with the sign of the leading coefficient; primitive()
    // divides it out, leaving coprime integer coefficients, positive leading.
    Rational content_rat() const;
    Poly primitive() const;

    static bool try_exact_div(const Poly& a, const Poly& b, Poly& q);
    static Poly exact_div(const Poly& a, const Poly& b);  // throws if inexact

    // Quotient by (var - p) where p does not involve var; false if remainder
    // is nonzero (i.e. f does not vanish at var = p).
    static bool divide_linear(const Poly& f, int var, const Poly& p, Poly& q);

    static Poly gcd(const Poly& a, const Poly& b);

    std::string str() const;

private:
    Terms terms_;
    void add_term(const Mono& m, const Rational& c);
    friend Poly mono_times(const Poly&, const Mono&, const Rational&);
};

}  // namespace yv
