#include "yv/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace yv {

namespace {

int mono_degree(const Mono& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

// h is ranked after all spectral variables.
inline long rank_of(int var) { return is_h(var) ? 1L << 30 : var; }

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            r.push_back(a[i++]);
        else if (a[i].first > b[j].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
}

// Divides a by b exponent-wise; false if b does not divide a.
bool mono_div(const Mono& a, const Mono& b, Mono& q) {
    q.clear();
    size_t i = 0;
    for (const auto& [v, e] : b) {
        while (i < a.size() && a[i].first < v) q.push_back(a[i++]);
        if (i >= a.size() || a[i].first != v || a[i].second < e) return false;
        if (a[i].second > e) q.emplace_back(v, a[i].second - e);
        ++i;
    }
    while (i < a.size()) q.push_back(a[i++]);
    return true;
}

}  // namespace

int cmp_mono(const Mono& a, const Mono& b) {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db ? -1 : 1;
    // Entries are sorted by id with h (id 0) stored first, but h ranks last,
    // so compare the spectral entries first and the h exponent at the end.
    size_t i = 0, j = 0;
    int ha = 0, hb = 0;
    if (i < a.size() && is_h(a[i].first)) ha = a[i++].second;
    if (j < b.size() && is_h(b[j].first)) hb = b[j++].second;
    while (i < a.size() || j < b.size()) {
        long ra = i < a.size() ? rank_of(a[i].first) : (1L << 31);
        long rb = j < b.size() ? rank_of(b[j].first) : (1L << 31);
        if (ra < rb) return 1;  // a has the earlier-ranked variable
        if (ra > rb) return -1;
        if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
        ++i, ++j;
    }
    if (ha != hb) return ha > hb ? 1 : -1;
    return 0;
}

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.emplace(Mono{}, c);
}

Poly Poly::variable(int id, int exp) {
    Poly p;
    if (exp < 0) throw std::domain_error("Poly::variable: negative exponent");
    if (exp == 0) return Poly(Rational(1));
    p.terms_.emplace(Mono{{id, exp}}, Rational(1));
    return p;
}

Poly Poly::linform(const LinForm& f) {
    Poly p;
    for (const auto& [id, c] : f.terms()) p.add_term(Mono{{id, 1}}, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::domain_error("constant_value on non-constant poly");
    return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Rational& s) const {
    Poly r;
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::domain_error("Poly::pow: negative exponent");
    Poly acc(Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

int Poly::deg_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v == var) d = std::max(d, e);
    return d;
}

std::set<int> Poly::vars() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) s.insert(v);
    return s;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("leading_coeff of zero poly");
    return terms_.begin()->second;
}

std::vector<Poly> Poly::coeffs_in(int var) const {
    int d = deg_in(var);
    std::vector<Poly> cs(static_cast<size_t>(std::max(d, 0)) + 1);
    for (const auto& [m, c] : terms_) {
        int e = 0;
        Mono stripped;
        for (const auto& [v, k] : m) {
            if (v == var)
                e = k;
            else
                stripped.emplace_back(v, k);
        }
        cs[static_cast<size_t>(e)].add_term(stripped, c);
    }
    return cs;
}

Poly Poly::coeff_in(int var, int exp) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = 0;
        Mono stripped;
        for (const auto& [v, k] : m) {
            if (v == var)
                e = k;
            else
                stripped.emplace_back(v, k);
        }
        if (e == exp) r.add_term(stripped, c);
    }
    return r;
}

Poly Poly::assemble_in(int var, const std::vector<Poly>& cs) {
    Poly r;
    for (size_t e = 0; e < cs.size(); ++e)
        r += cs[e] * Poly::variable(var, static_cast<int>(e));
    return r;
}

Poly Poly::subst(int var, const Poly& value) const {
    if (deg_in(var) <= 0) return *this;
    auto cs = coeffs_in(var);
    Poly r = cs.back();
    for (size_t k = cs.size() - 1; k-- > 0;) r = r * value + cs[k];
    return r;
}

Rational Poly::eval(const std::map<int, Rational>& point) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end()) throw std::domain_error("eval: unbound variable " + var_name(v));
            t *= pow_rat(it->second, e);
        }
        acc += t;
    }
    return acc;
}

Rational Poly::content_rat() const {
    if (terms_.empty()) return Rational(0);
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        Integer n = c.get_num(), d = c.get_den();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (leading_coeff() < 0) content = -content;
    return content;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    return scaled(Rational(1) / content_rat());
}

bool Poly::try_exact_div(const Poly& a, const Poly& b, Poly& q) {
    if (b.is_zero()) throw std::domain_error("exact_div by zero");
    q = Poly();
    Poly r = a;
    const Mono& lbm = b.terms_.begin()->first;
    const Rational& lbc = b.terms_.begin()->second;
    while (!r.is_zero()) {
        Mono qm;
        if (!mono_div(r.terms_.begin()->first, lbm, qm)) return false;
        Rational qc = r.terms_.begin()->second / lbc;
        Poly term;
        term.terms_.emplace(qm, qc);
        q += term;
        r -= term * b;
    }
    return true;
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
    Poly q;
    if (!try_exact_div(a, b, q)) throw std::domain_error("exact_div: not divisible");
    return q;
}

bool Poly::divide_linear(const Poly& f, int var, const Poly& p, Poly& q) {
    if (p.deg_in(var) > 0) throw std::domain_error("divide_linear: point involves the variable");
    auto cs = f.coeffs_in(var);
    if (cs.size() <= 1) {
        q = Poly();
        return f.is_zero();
    }
    size_t d = cs.size() - 1;
    std::vector<Poly> qc(d);
    qc[d - 1] = cs[d];
    for (size_t k = d - 1; k >= 1; --k) qc[k - 1] = cs[k] + p * qc[k];
    Poly rem = cs[0] + p * qc[0];
    if (!rem.is_zero()) return false;
    q = assemble_in(var, qc);
    return true;
}

namespace {

// Pseudo-remainder of A by B in var (B of positive degree in var).
Poly prem(const Poly& A, const Poly& B, int var) {
    int db = B.deg_in(var);
    Poly lc = B.coeff_in(var, db);
    Poly R = A;
    while (!R.is_zero()) {
        int dr = R.deg_in(var);
        if (dr < db) break;
        Poly top = R.coeff_in(var, dr);
        R = lc * R - top * Poly::variable(var, dr - db) * B;
    }
    return R;
}

Poly content_in(const Poly& p, int var) {
    Poly acc;
    for (const Poly& c : p.coeffs_in(var)) {
        if (c.is_zero()) continue;
        acc = acc.is_zero() ? c.primitive() : Poly::gcd(acc, c);
        if (acc.is_constant()) return Poly(Rational(1));
    }
    return acc;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive();
    if (b.is_zero()) return a.primitive();
    Poly pa = a.primitive(), pb = b.primitive();
    if (pa.is_constant() || pb.is_constant()) return Poly(Rational(1));

    auto va = pa.vars(), vb = pb.vars();
    std::set<int> all = va;
    all.insert(vb.begin(), vb.end());
    int v = *all.begin();

    Poly ca = content_in(pa, v), cb = content_in(pb, v);
    Poly c = gcd(ca, cb);
    Poly A = exact_div(pa, ca), B = exact_div(pb, cb);
    if (A.deg_in(v) < B.deg_in(v)) std::swap(A, B);
    while (!B.is_zero() && B.deg_in(v) > 0) {
        Poly R = prem(A, B, v);
        if (!R.is_zero()) {
            R = R.primitive();
            Poly rc = content_in(R, v);
            if (!rc.is_constant()) R = exact_div(R, rc);
        }
        A = B;
        B = R;
    }
    Poly g = B.is_zero() ? A : Poly(Rational(1));
    return (c * g).primitive();
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) s += c > 0 ? " + " : " - ";
        Rational ac = (!first && c < 0) ? Rational(-c) : c;
        bool coef_shown = (ac != 1) || m.empty();
        if (coef_shown) s += to_string(ac);
        bool need_star = coef_shown;
        for (const auto& [v, e] : m) {
            if (need_star) s += "*";
            s += var_name(v);
            if (e > 1) s += "^" + std::to_string(e);
            need_star = true;
        }
        first = false;
    }
    return s;
}

}  // namespace yv
