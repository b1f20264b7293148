#include "yv/wseries.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "yv/gseries.hpp"

namespace yv {

int wadd(int a, int b) {
    const bool apos = a >= kRangeInf, aneg = a <= -kRangeInf;
    const bool bpos = b >= kRangeInf, bneg = b <= -kRangeInf;
    if ((apos && bneg) || (aneg && bpos)) throw std::logic_error("wadd: opposite infinities");
    if (apos || bpos) return kRangeInf;
    if (aneg || bneg) return -kRangeInf;
    return a + b;
}

namespace {

constexpr int kExpLimit = 120;

SlotRange shift_range(const SlotRange& r, int d) {
    if (r.empty()) return r;
    return {wadd(r.lo, d), wadd(r.hi, d)};
}

int checked_exp(int k) {
    if (k < -kExpLimit || k > kExpLimit) throw std::overflow_error("series exponent overflow");
    return k;
}

thread_local int t_ring_cut = 3;

}  // namespace

std::string SlotRange::str() const {
    if (empty()) return "{}";
    std::ostringstream os;
    os << "[";
    if (lo <= -kRangeInf) os << "-inf";
    else os << lo;
    os << ",";
    if (hi >= kRangeInf) os << "inf";
    else os << hi;
    os << "]";
    return os.str();
}

EKey EKey::with(int v, int k) const {
    if (v < 0 || v >= kMaxSeriesVars) throw std::out_of_range("EKey: bad slot");
    EKey r = *this;
    r.e[static_cast<size_t>(v)] = static_cast<int8_t>(checked_exp(k));
    return r;
}

EKey EKey::plus(const EKey& o) const {
    EKey r;
    for (size_t i = 0; i < kMaxSeriesVars; ++i)
        r.e[i] = static_cast<int8_t>(checked_exp(int(e[i]) + int(o.e[i])));
    return r;
}

EKey EKey::of(std::initializer_list<std::pair<int, int>> parts) {
    EKey r;
    for (const auto& [v, k] : parts) r = r.with(v, k);
    return r;
}

std::string EKey::str() const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < kMaxSeriesVars; ++i) {
        if (e[static_cast<size_t>(i)] == 0) continue;
        if (any) os << " ";
        any = true;
        os << var_name(i);
        if (e[static_cast<size_t>(i)] != 1) os << "^" << int(e[static_cast<size_t>(i)]);
    }
    return any ? os.str() : "1";
}

int default_ring_cut() { return t_ring_cut; }

void set_default_ring_cut(int kw) {
    if (kw < 1 || kw > LaurentBox::kMaxCut) throw std::invalid_argument("ring cut out of range");
    t_ring_cut = kw;
}

LaurentBox::LaurentBox(int cut) : cut_(cut) {
    if (cut < 1 || cut > kMaxCut) throw std::invalid_argument("LaurentBox: cut out of range");
    known_.fill(SlotRange::all());
    supp_.fill(SlotRange::none());
    known_[kVarH] = {0, cut - 1};
    tau_known_.fill(SlotRange::all());
    tau_supp_.fill(SlotRange::none());
}

LaurentBox::LaurentBox() : LaurentBox(default_ring_cut()) {}

LaurentBox::LaurentBox(const Rational& c, int cut) : LaurentBox(cut) {
    if (c != 0) {
        c_[EKey{}] = c;
        for (auto& s : supp_) s = SlotRange::at(0);
        tau_supp_[0] = SlotRange::at(0);
    }
}

bool LaurentBox::structural_zero() const {
    if (!c_.empty()) return false;
    for (int l = 0; l < cut_; ++l)
        if (!tau_supp_[static_cast<size_t>(l)].empty()) return false;
    return true;
}

LaurentBox LaurentBox::from_poly(const Poly& p, int cut) {
    LaurentBox r(cut);
    bool clipped = false;
    for (const auto& [mono, coef] : p.terms()) {
        EKey k;
        for (const auto& [v, ex] : mono) {
            if (v >= kMaxSeriesVars)
                throw std::invalid_argument("from_poly: variable outside series slots");
            k = k.with(v, ex);
        }
        if (k.h() >= cut) {
            clipped = true;
            continue;
        }
        r.c_[k] = coef;
    }
    for (const auto& [k, v] : r.c_) {
        (void)v;
        for (int s = 0; s < kMaxSeriesVars; ++s)
            r.supp_[static_cast<size_t>(s)] =
                SlotRange::join(r.supp_[static_cast<size_t>(s)], SlotRange::at(k.at(s)));
        auto& ts = r.tau_supp_[static_cast<size_t>(k.h())];
        ts = SlotRange::join(ts, SlotRange::at(k.tau()));
    }
    r.h_tail_ = clipped;
    r.saturate_();
    return r;
}

LaurentBox LaurentBox::monomial(const Rational& c, const EKey& k, int cut) {
    LaurentBox r(cut);
    if (c == 0) return r;
    if (k.h() < 0) throw std::invalid_argument("monomial: negative h exponent");
    if (k.h() >= cut) {
        r.h_tail_ = true;  // lives entirely beyond the cut
        return r;
    }
    r.c_[k] = c;
    for (int s = 0; s < kMaxSeriesVars; ++s) r.supp_[static_cast<size_t>(s)] = SlotRange::at(k.at(s));
    r.tau_supp_[static_cast<size_t>(k.h())] = SlotRange::at(k.tau());
    return r;
}

LaurentBox LaurentBox::expand_neg(const LinForm& form, int m, int cut, int win_lo) {
    if (m < 1) throw std::invalid_argument("expand_neg: power must be at least 1");
    int vd = -1;
    Rational cd;
    Rational ch;
    Poly rest;
    bool rest_spectral = false;
    for (const auto& [v, c] : form.terms()) {
        if (v == kVarH) {
            ch = c;
            continue;
        }
        if (vd < 0) {
            vd = v;
            cd = c;
        } else {
            rest += Poly::variable(v).scaled(c);
            rest_spectral = true;
        }
    }
    if (vd < 0) throw std::invalid_argument("expand_neg: no spectral variable in form");
    if (ch != 0) rest += Poly::variable(kVarH).scaled(ch);

    if (rest.is_zero()) return monomial(pow_rat(cd, -m), EKey::of({{vd, -m}}), cut);

    LaurentBox r(cut);
    // With h the only companion the expansion terminates inside the ring and
    // stays exact; otherwise it is windowed in the dominant variable. Either
    // way term j carries dominant exponent -(m+j).
    const int jmax = rest_spectral ? -m - win_lo : cut - 1;
    LaurentBox pj(Rational(1), cut);
    const LaurentBox restbox = from_poly(rest, cut);
    for (int j = 0; j <= jmax; ++j) {
        if (j > 0) pj = pj * restbox;
        const Rational s = binomial(-m, j) * pow_rat(cd, -(m + j));
        for (const auto& [key, c] : pj.entries()) {
            const Rational val = c * s;
            if (val != 0) r.c_[key.with(vd, -(m + j))] += val;
        }
    }
    for (auto it = r.c_.begin(); it != r.c_.end();)
        it = (it->second == 0) ? r.c_.erase(it) : std::next(it);

    for (auto& s : r.supp_) s = SlotRange::at(0);
    r.supp_[static_cast<size_t>(vd)] =
        rest_spectral ? SlotRange{-kRangeInf, -m} : SlotRange{-(m + cut - 1), -m};
    for (const auto& [v, c] : form.terms()) {
        (void)c;
        if (v != kVarH && v != vd) r.supp_[static_cast<size_t>(v)] = {0, kRangeInf};
    }
    r.supp_[kVarH] = (ch != 0) ? SlotRange{0, cut - 1} : SlotRange::at(0);
    r.h_tail_ = (ch != 0);
    // The form is homogeneous, so spectral degree plus h degree is exactly -m.
    for (int l = 0; l < cut; ++l)
        r.tau_supp_[static_cast<size_t>(l)] =
            (l == 0 || ch != 0) ? SlotRange::at(-(m + l)) : SlotRange::none();
    if (rest_spectral) r.known_[static_cast<size_t>(vd)] = {win_lo, kRangeInf};
    r.saturate_();
    r.prune_();
    return r;
}

LaurentBox LaurentBox::linpow(const LinForm& form, int p, int cut, int win_lo) {
    if (p < 0) return expand_neg(form, -p, cut, win_lo);
    if (p == 0) return LaurentBox(Rational(1), cut);
    return from_poly(Poly::linform(form).pow(p), cut);
}

LaurentBox LaurentBox::gbox(const LinForm& form, int dim, int cut, int win_lo) {
    const auto& g = norm_scalar_coeffs(dim, cut - 1);
    LaurentBox r(Rational(1), cut);
    for (int m = 1; m <= cut - 1; ++m)
        r += expand_neg(form, m, cut, win_lo).times_h(m).scaled(g[static_cast<size_t>(m)]);
    // the represented scalar continues past the cut
    r.mark_h_tail();
    return r;
}

void LaurentBox::saturate_() {
    for (int v = 1; v < kMaxSeriesVars; ++v) {
        auto& k = known_[static_cast<size_t>(v)];
        const auto& s = supp_[static_cast<size_t>(v)];
        if (k.hi >= s.hi) k.hi = kRangeInf;
        if (k.lo <= s.lo) k.lo = -kRangeInf;
    }
    auto& kh = known_[kVarH];
    const auto& sh = supp_[kVarH];
    if (kh.lo <= sh.lo) kh.lo = 0;
    kh.lo = std::max(kh.lo, 0);
    if (!h_tail_ && kh.hi >= sh.hi) kh.hi = cut_ - 1;
    kh.hi = std::min(kh.hi, cut_ - 1);
    for (int l = 0; l < cut_; ++l) {
        auto& k = tau_known_[static_cast<size_t>(l)];
        const auto& s = tau_supp_[static_cast<size_t>(l)];
        if (k.hi >= s.hi) k.hi = kRangeInf;
        if (k.lo <= s.lo) k.lo = -kRangeInf;
    }
}

bool LaurentBox::known_at(const EKey& k) const {
    const int eta = k.h();
    if (eta < 0 || eta >= cut_) return false;
    for (int v = 0; v < kMaxSeriesVars; ++v)
        if (!known_[static_cast<size_t>(v)].contains(k.at(v))) return false;
    return tau_known_[static_cast<size_t>(eta)].contains(k.tau());
}

Rational LaurentBox::coeff(const EKey& k) const {
    if (!known_at(k))
        throw std::logic_error("LaurentBox::coeff: exponent outside the known region: " + k.str());
    return coeff_or_zero(k);
}

Rational LaurentBox::coeff_or_zero(const EKey& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rational(0) : it->second;
}

SlotRange LaurentBox::known_tau_layer(int layer) const {
    if (layer < 0 || layer >= cut_) throw std::out_of_range("known_tau_layer");
    return tau_known_[static_cast<size_t>(layer)];
}

SlotRange LaurentBox::supp_tau_layer(int layer) const {
    if (layer < 0 || layer >= cut_) throw std::out_of_range("supp_tau_layer");
    return tau_supp_[static_cast<size_t>(layer)];
}

void LaurentBox::prune_() {
    for (auto it = c_.begin(); it != c_.end();)
        it = (it->second == 0 || !known_at(it->first)) ? c_.erase(it) : std::next(it);
}

bool LaurentBox::known_nonempty_() const {
    for (int v = 0; v < kMaxSeriesVars; ++v)
        if (known_[static_cast<size_t>(v)].empty()) return false;
    return true;
}

LaurentBox LaurentBox::operator+(const LaurentBox& o) const {
    if (cut_ != o.cut_) throw std::logic_error("LaurentBox: mixed ring cuts");
    if (structural_zero()) {
        LaurentBox r = o;
        r.h_tail_ = r.h_tail_ || h_tail_;
        return r;
    }
    if (o.structural_zero()) {
        LaurentBox r = *this;
        r.h_tail_ = r.h_tail_ || o.h_tail_;
        return r;
    }
    LaurentBox r(cut_);
    r.h_tail_ = h_tail_ || o.h_tail_;
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        r.supp_[vv] = SlotRange::join(supp_[vv], o.supp_[vv]);
        r.known_[vv] = SlotRange::meet(known_[vv], o.known_[vv]);
    }
    for (int l = 0; l < cut_; ++l) {
        const auto ll = static_cast<size_t>(l);
        r.tau_supp_[ll] = SlotRange::join(tau_supp_[ll], o.tau_supp_[ll]);
        r.tau_known_[ll] = SlotRange::meet(tau_known_[ll], o.tau_known_[ll]);
    }
    r.c_ = c_;
    for (const auto& [k, v] : o.c_) {
        auto [it, fresh] = r.c_.emplace(k, v);
        if (!fresh) it->second += v;
    }
    r.saturate_();
    r.prune_();
    return r;
}

LaurentBox& LaurentBox::operator+=(const LaurentBox& o) { return *this = *this + o; }

LaurentBox LaurentBox::operator-() const { return scaled(Rational(-1)); }

LaurentBox LaurentBox::operator-(const LaurentBox& o) const { return *this + o.scaled(Rational(-1)); }

LaurentBox LaurentBox::scaled(const Rational& c) const {
    if (c == 0) return LaurentBox(cut_);
    LaurentBox r = *this;
    for (auto& [k, v] : r.c_) {
        (void)k;
        v *= c;
    }
    return r;
}

// Does the pairwise convolution of the two supports reach infinitely far in
// some direction? Checked on the recession cone of the in-ring support
// boxes, with the total-degree band as an extra linear constraint.
bool conv_unbounded_(const LaurentBox& a, const LaurentBox& b) {
    SlotRange ta = SlotRange::none(), tb = SlotRange::none();
    for (int l = 0; l < a.cut_; ++l) ta = SlotRange::join(ta, a.tau_supp_[static_cast<size_t>(l)]);
    for (int l = 0; l < b.cut_; ++l) tb = SlotRange::join(tb, b.tau_supp_[static_cast<size_t>(l)]);
    if (ta.empty() || tb.empty()) return false;
    const bool band_up_ok = ta.hi >= kRangeInf && tb.lo <= -kRangeInf;
    const bool band_dn_ok = ta.lo <= -kRangeInf && tb.hi >= kRangeInf;
    uint32_t up_mask = 0, dn_mask = 0;
    for (int v = 1; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        const bool up = a.supp_[vv].hi >= kRangeInf && b.supp_[vv].lo <= -kRangeInf;
        const bool dn = a.supp_[vv].lo <= -kRangeInf && b.supp_[vv].hi >= kRangeInf;
        if (up && band_up_ok) return true;
        if (dn && band_dn_ok) return true;
        if (up) up_mask |= 1u << v;
        if (dn) dn_mask |= 1u << v;
    }
    if (up_mask == 0 || dn_mask == 0) return false;
    // Some pair of distinct variables carrying opposite rays escapes the band.
    const bool same_single = up_mask == dn_mask && (up_mask & (up_mask - 1)) == 0;
    return !same_single;
}

namespace {

// Is the mass of x's stripe {v-exponent >= stripe_lo} guaranteed to sit
// above every total-degree cap x knows about? If so, any product of that
// mass lands above the corresponding cap of the product's layer windows,
// so the stripe needs no per-variable record.
bool tau_fences_high(const LaurentBox& x, int v, int stripe_lo) {
    int olo = 0;
    for (int u = 1; u < kMaxSeriesVars; ++u) {
        if (u == v) continue;
        olo = wadd(olo, x.supp_var(u).lo);
        if (olo <= -kRangeInf) return false;
    }
    const int tmin = wadd(stripe_lo, olo);
    if (tmin <= -kRangeInf) return false;
    if (tmin >= kRangeInf) return true;
    for (int l = 0; l < x.cut(); ++l) {
        const SlotRange s = x.supp_tau_layer(l);
        if (s.empty() || s.hi < tmin) continue;  // stripe carries no mass here
        if (x.known_tau_layer(l).hi >= tmin) return false;
    }
    return true;
}

bool tau_fences_low(const LaurentBox& x, int v, int stripe_hi) {
    int ohi = 0;
    for (int u = 1; u < kMaxSeriesVars; ++u) {
        if (u == v) continue;
        ohi = wadd(ohi, x.supp_var(u).hi);
        if (ohi >= kRangeInf) return false;
    }
    const int tmax = wadd(stripe_hi, ohi);
    if (tmax >= kRangeInf) return false;
    for (int l = 0; l < x.cut(); ++l) {
        const SlotRange s = x.supp_tau_layer(l);
        if (s.empty() || s.lo > tmax) continue;
        if (x.known_tau_layer(l).lo <= tmax) return false;
    }
    return true;
}

}  // namespace

LaurentBox LaurentBox::conv_mask(const LaurentBox& a, const LaurentBox& b) {
    if (a.cut_ != b.cut_) throw std::logic_error("LaurentBox: mixed ring cuts");
    const int kw = a.cut_;
    LaurentBox r(kw);
    if (a.structural_zero() || b.structural_zero()) {
        const bool any_a = !a.structural_zero() || a.h_tail_;
        const bool any_b = !b.structural_zero() || b.h_tail_;
        r.h_tail_ = (a.h_tail_ && any_b) || (b.h_tail_ && any_a);
        return r;
    }
    r.h_tail_ = a.h_tail_ || b.h_tail_ || wadd(a.supp_[kVarH].hi, b.supp_[kVarH].hi) > kw - 1;
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        r.supp_[vv] = {wadd(a.supp_[vv].lo, b.supp_[vv].lo), wadd(a.supp_[vv].hi, b.supp_[vv].hi)};
        r.known_[vv] = SlotRange::all();
    }
    r.supp_[kVarH].lo = std::max(r.supp_[kVarH].lo, 0);
    r.supp_[kVarH].hi = std::min(r.supp_[kVarH].hi, kw - 1);
    {
        // h stripes shift in-ring content wholesale; they stay on h itself
        const auto sf = a.supp_[kVarH], sg = b.supp_[kVarH];
        const auto kf = a.known_[kVarH], kg = b.known_[kVarH];
        int klo = -kRangeInf, khi = kRangeInf;
        if (sf.lo < kf.lo) klo = std::max(klo, wadd(kf.lo, sg.hi));
        if (sg.lo < kg.lo) klo = std::max(klo, wadd(kg.lo, sf.hi));
        if (sf.hi > kf.hi) khi = std::min(khi, wadd(kf.hi, sg.lo));
        if (sg.hi > kg.hi) khi = std::min(khi, wadd(kg.hi, sf.lo));
        r.known_[kVarH] = {std::max(klo, 0), std::min(khi, kw - 1)};
    }
    for (int eta = 0; eta < kw; ++eta) {
        SlotRange s = SlotRange::none();
        int klo = -kRangeInf, khi = kRangeInf;
        for (int al = 0; al <= eta; ++al) {
            const auto& sa = a.tau_supp_[static_cast<size_t>(al)];
            const auto& sb = b.tau_supp_[static_cast<size_t>(eta - al)];
            if (sa.empty() || sb.empty()) continue;
            s = SlotRange::join(s, {wadd(sa.lo, sb.lo), wadd(sa.hi, sb.hi)});
            const auto& ka = a.tau_known_[static_cast<size_t>(al)];
            const auto& kb = b.tau_known_[static_cast<size_t>(eta - al)];
            if (sa.lo < ka.lo) klo = std::max(klo, wadd(ka.lo, sb.hi));
            if (sb.lo < kb.lo) klo = std::max(klo, wadd(kb.lo, sa.hi));
            if (sa.hi > ka.hi) khi = std::min(khi, wadd(ka.hi, sb.lo));
            if (sb.hi > kb.hi) khi = std::min(khi, wadd(kb.hi, sa.lo));
        }
        r.tau_supp_[static_cast<size_t>(eta)] = s;
        r.tau_known_[static_cast<size_t>(eta)] = {klo, khi};
    }
    auto charge = [&r](const LaurentBox& x, const LaurentBox& y) {
        for (int v = 1; v < kMaxSeriesVars; ++v) {
            const auto vv = static_cast<size_t>(v);
            const SlotRange sx = x.supp_[vv], kx = x.known_[vv];
            auto& kr = r.known_[vv];
            if (sx.hi > kx.hi) {
                const int lo = std::max(wadd(kx.hi, 1), sx.lo);
                if (!tau_fences_high(x, v, lo))
                    kr.hi = std::min(kr.hi, wadd(kx.hi, y.supp_[vv].lo));
            }
            if (sx.lo < kx.lo) {
                const int hi = std::min(wadd(kx.lo, -1), sx.hi);
                if (!tau_fences_low(x, v, hi))
                    kr.lo = std::max(kr.lo, wadd(kx.lo, y.supp_[vv].hi));
            }
        }
    };
    charge(a, b);
    charge(b, a);
    r.saturate_();
    r.prune_();
    return r;
}

LaurentBox LaurentBox::operator*(const LaurentBox& o) const {
    const int kw = cut_;
    LaurentBox r = conv_mask(*this, o);
    if (structural_zero() || o.structural_zero()) return r;
    if (conv_unbounded_(*this, o)) {
        for (auto& k : r.known_) k = SlotRange::none();
        for (auto& k : r.tau_known_) k = SlotRange::none();
    }
    r.saturate_();
    if (r.known_nonempty_()) {
        for (const auto& [ka, ca] : c_) {
            for (const auto& [kb, cb] : o.c_) {
                if (ka.h() + kb.h() >= kw) continue;
                const Rational prod = ca * cb;
                auto [it, fresh] = r.c_.emplace(ka.plus(kb), prod);
                if (!fresh) it->second += prod;
            }
        }
    }
    r.prune_();
    return r;
}

LaurentBox LaurentBox::times_monomial(const Rational& c, const EKey& k) const {
    if (c == 0) return LaurentBox(cut_);
    const int dh = k.h();
    if (dh < 0) throw std::invalid_argument("times_monomial: negative h exponent");
    const int dt = k.tau();
    LaurentBox r(cut_);
    r.h_tail_ = h_tail_ || wadd(supp_[kVarH].hi, dh) > cut_ - 1;
    for (const auto& [key, cc] : c_) {
        if (key.h() + dh >= cut_) continue;
        r.c_[key.plus(k)] = cc * c;
    }
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        r.supp_[vv] = shift_range(supp_[vv], k.at(v));
        r.known_[vv] = shift_range(known_[vv], k.at(v));
    }
    r.supp_[kVarH].hi = std::min(r.supp_[kVarH].hi, cut_ - 1);
    r.known_[kVarH].lo = std::max(r.known_[kVarH].lo, 0);
    r.known_[kVarH].hi = std::min(r.known_[kVarH].hi, cut_ - 1);
    for (int l = 0; l < cut_; ++l) {
        const auto ll = static_cast<size_t>(l);
        if (l < dh) {
            r.tau_supp_[ll] = SlotRange::none();
            r.tau_known_[ll] = SlotRange::all();
        } else {
            r.tau_supp_[ll] = shift_range(tau_supp_[static_cast<size_t>(l - dh)], dt);
            r.tau_known_[ll] = shift_range(tau_known_[static_cast<size_t>(l - dh)], dt);
        }
    }
    r.saturate_();
    r.prune_();
    return r;
}

LaurentBox LaurentBox::div_h(int d) const {
    if (d < 0) throw std::invalid_argument("div_h: negative shift");
    if (d == 0) return *this;
    LaurentBox r(cut_);
    r.h_tail_ = h_tail_;
    for (const auto& [k, c] : c_) {
        if (k.h() < d)
            throw std::logic_error("div_h: stored data below the divisor at " + k.str());
        r.c_[k.with(kVarH, k.h() - d)] = c;
    }
    for (int v = 1; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        r.supp_[vv] = supp_[vv];
        r.known_[vv] = known_[vv];
    }
    SlotRange sh = shift_range(supp_[kVarH], -d);
    if (!sh.empty()) sh.lo = std::max(sh.lo, 0);
    // Mass from beyond the cut slides into the top d layers.
    if (h_tail_) sh = SlotRange::join(sh, {cut_ - d, cut_ - 1});
    r.supp_[kVarH] = sh;
    r.known_[kVarH] = {std::max(known_[kVarH].lo - d, 0), known_[kVarH].hi - d};
    for (int l = 0; l < cut_; ++l) {
        const auto ll = static_cast<size_t>(l);
        if (l + d < cut_) {
            r.tau_supp_[ll] = tau_supp_[static_cast<size_t>(l + d)];
            r.tau_known_[ll] = tau_known_[static_cast<size_t>(l + d)];
        } else {
            // sourced from beyond the cut; h-known excludes these layers
            // unless the value provably had no tail there
            r.tau_supp_[ll] = h_tail_ ? SlotRange::all() : SlotRange::none();
            r.tau_known_[ll] = SlotRange::all();
        }
    }
    r.saturate_();
    r.prune_();
    return r;
}

void LaurentBox::clamp_var(int v, int lo, int hi) {
    auto& k = known_[static_cast<size_t>(v)];
    k = SlotRange::meet(k, {lo, hi});
    saturate_();
    prune_();
}

void LaurentBox::clamp_tau(int lo, int hi) {
    for (int l = 0; l < cut_; ++l) {
        auto& k = tau_known_[static_cast<size_t>(l)];
        k = SlotRange::meet(k, {lo, hi});
    }
    saturate_();
    prune_();
}

void LaurentBox::restrict_known_var(int v, const SlotRange& w) {
    auto& k = known_[static_cast<size_t>(v)];
    k = SlotRange::meet(k, w);
    prune_();
}

void LaurentBox::restrict_known_tau_layer(int layer, const SlotRange& w) {
    if (layer < 0 || layer >= cut_) throw std::out_of_range("restrict_known_tau_layer");
    auto& k = tau_known_[static_cast<size_t>(layer)];
    k = SlotRange::meet(k, w);
    prune_();
}

void LaurentBox::restrict_known_tau(const SlotRange& w) {
    for (int l = 0; l < cut_; ++l)
        tau_known_[static_cast<size_t>(l)] = SlotRange::meet(tau_known_[static_cast<size_t>(l)], w);
    prune_();
}

void LaurentBox::widen_supp_var(int v, const SlotRange& extra, const SlotRange& known_cap) {
    const auto vv = static_cast<size_t>(v);
    supp_[vv] = SlotRange::join(supp_[vv], extra);
    known_[vv] = SlotRange::meet(known_[vv], known_cap);
    prune_();
}

void LaurentBox::widen_supp_tau_layer(int layer, const SlotRange& extra, const SlotRange& known_cap) {
    if (layer < 0 || layer >= cut_) throw std::out_of_range("widen_supp_tau_layer");
    const auto ll = static_cast<size_t>(layer);
    tau_supp_[ll] = SlotRange::join(tau_supp_[ll], extra);
    tau_known_[ll] = SlotRange::meet(tau_known_[ll], known_cap);
    prune_();
}

LaurentBox LaurentBox::extract_var(int v, int k) const {
    LaurentBox r(cut_);
    const auto vv = static_cast<size_t>(v);
    if (v == kVarH) {
        if (k < 0 || k >= cut_) throw std::out_of_range("extract_h: layer outside the ring");
        for (const auto& [key, c] : c_)
            if (key.h() == k) r.c_[key.with(kVarH, 0)] = c;
        for (int s = 1; s < kMaxSeriesVars; ++s) {
            r.supp_[static_cast<size_t>(s)] = supp_[static_cast<size_t>(s)];
            r.known_[static_cast<size_t>(s)] = known_[static_cast<size_t>(s)];
        }
        r.supp_[kVarH] = tau_supp_[static_cast<size_t>(k)].empty() ? SlotRange::none()
                                                                   : SlotRange::at(0);
        r.known_[kVarH] =
            known_[kVarH].contains(k) ? SlotRange{0, cut_ - 1} : SlotRange::none();
        r.tau_supp_[0] = tau_supp_[static_cast<size_t>(k)];
        r.tau_known_[0] = tau_known_[static_cast<size_t>(k)];
        for (int l = 1; l < cut_; ++l) {
            r.tau_supp_[static_cast<size_t>(l)] = SlotRange::none();
            r.tau_known_[static_cast<size_t>(l)] = SlotRange::all();
        }
        r.h_tail_ = false;
    } else {
        for (const auto& [key, c] : c_)
            if (key.at(v) == k) r.c_[key.with(v, 0)] = c;
        r.supp_ = supp_;
        r.known_ = known_;
        r.supp_[vv] = SlotRange::at(0);
        r.known_[vv] = known_[vv].contains(k) ? SlotRange::all() : SlotRange::none();
        for (int l = 0; l < cut_; ++l) {
            const auto ll = static_cast<size_t>(l);
            r.tau_supp_[ll] = shift_range(tau_supp_[ll], -k);
            r.tau_known_[ll] = shift_range(tau_known_[ll], -k);
        }
        r.h_tail_ = h_tail_;
    }
    r.saturate_();
    r.prune_();
    return r;
}

std::string LaurentBox::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")" << (k == EKey{} ? "" : " " + k.str());
    }
    if (first) os << "0";
    os << "}  known:";
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        const auto vv = static_cast<size_t>(v);
        if (known_[vv].full() && v != kVarH) continue;
        os << " " << var_name(v) << known_[vv].str();
    }
    os << " tau:";
    for (int l = 0; l < cut_; ++l) os << tau_known_[static_cast<size_t>(l)].str();
    return os.str();
}

namespace {

// Walk the lattice of a check window, invoking fn on every key (variables
// not listed stay at exponent zero). Stops early if fn returns false.
bool walk_window(const CheckWindow& win, const std::function<bool(const EKey&)>& fn) {
    std::vector<int> cur;
    cur.reserve(win.vars.size());
    for (const auto& [v, lo, hi] : win.vars) {
        (void)v;
        if (lo > hi) return true;
        cur.push_back(lo);
    }
    for (;;) {
        for (int eta = 0; eta < win.h_order; ++eta) {
            EKey k = EKey::of({{kVarH, eta}});
            for (size_t i = 0; i < cur.size(); ++i)
                k = k.with(std::get<0>(win.vars[i]), cur[i]);
            if (!fn(k)) return false;
        }
        size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < std::get<2>(win.vars[i])) {
                ++cur[i];
                break;
            }
            cur[i] = std::get<1>(win.vars[i]);
        }
        if (i == cur.size()) return true;
    }
}

}  // namespace

bool known_on(const LaurentBox& x, const CheckWindow& win) {
    return walk_window(win, [&](const EKey& k) { return x.known_at(k); });
}

std::optional<std::pair<EKey, Rational>> worst_on(const LaurentBox& x, const CheckWindow& win) {
    std::optional<std::pair<EKey, Rational>> best;
    Rational best_abs;
    walk_window(win, [&](const EKey& k) {
        const Rational c = x.coeff_or_zero(k);
        if (c != 0) {
            const Rational a = abs(c);
            if (!best || a > best_abs) {
                best = {k, c};
                best_abs = a;
            }
        }
        return true;
    });
    return best;
}

}  // namespace yv
