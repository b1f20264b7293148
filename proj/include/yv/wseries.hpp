#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yv/poly.hpp"
#include "yv/rational.hpp"
#include "yv/variables.hpp"

namespace yv {

// Sentinel half-width for slot ranges. Anything at or beyond it is "infinite".
constexpr int kRangeInf = 1 << 28;

// Saturating add for range endpoints. Opposite infinities are a logic error.
int wadd(int a, int b);

struct SlotRange {
    int lo = -kRangeInf;
    int hi = kRangeInf;

    bool empty() const { return lo > hi; }
    bool full() const { return lo <= -kRangeInf && hi >= kRangeInf; }
    bool contains(int k) const { return k >= lo && k <= hi; }
    bool contains(const SlotRange& o) const {
        return o.empty() || (lo <= o.lo && o.hi <= hi);
    }
    static SlotRange all() { return {-kRangeInf, kRangeInf}; }
    static SlotRange none() { return {kRangeInf, -kRangeInf}; }
    static SlotRange at(int k) { return {k, k}; }
    static SlotRange meet(const SlotRange& a, const SlotRange& b) {
        return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    static SlotRange join(const SlotRange& a, const SlotRange& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
    bool operator==(const SlotRange& o) const = default;
    std::string str() const;
};

// Exponent vector over the registered series variables.
// Slot 0 is the deformation parameter; the others are spectral.
struct EKey {
    std::array<int8_t, kMaxSeriesVars> e{};

    int h() const { return e[kVarH]; }
    int tau() const {
        int t = 0;
        for (int i = 1; i < kMaxSeriesVars; ++i) t += e[i];
        return t;
    }
    int at(int v) const { return e[static_cast<size_t>(v)]; }
    EKey with(int v, int k) const;
    EKey plus(const EKey& o) const;  // throws on exponent overflow

    bool operator<(const EKey& o) const { return e < o.e; }
    bool operator==(const EKey& o) const { return e == o.e; }
    static EKey of(std::initializer_list<std::pair<int, int>> parts);
    std::string str() const;
};

// Thread-local default for the deformation-order modulus of new values.
int default_ring_cut();
void set_default_ring_cut(int kw);
struct RingCutGuard {
    explicit RingCutGuard(int kw) : prev_(default_ring_cut()) { set_default_ring_cut(kw); }
    ~RingCutGuard() { set_default_ring_cut(prev_); }

  private:
    int prev_;
};

// A finitely stored window of a multivariate Laurent series, truncated at
// h^cut in the deformation parameter. Alongside the stored coefficients it
// carries, per slot, a support interval (where the underlying value may be
// nonzero, mod h^cut) and a known interval (where the stored data is
// complete). The total spectral degree gets its own intervals, kept per
// h-layer; that coupling is what keeps directed expansions of negative
// powers representable with a finite store.
//
// All claims are about the value mod h^cut. A coefficient query is honest:
// it refuses exponents outside the known region.
class LaurentBox {
  public:
    static constexpr int kMaxCut = 12;

    LaurentBox();  // zero at the thread-default cut
    explicit LaurentBox(int cut);
    LaurentBox(const Rational& c, int cut);

    static LaurentBox from_poly(const Poly& p, int cut);
    static LaurentBox monomial(const Rational& c, const EKey& k, int cut);
    // form^(-m), m >= 1, expanded with the form's first spectral variable
    // dominant. win_lo bounds how far down the dominant exponent is stored.
    static LaurentBox expand_neg(const LinForm& form, int m, int cut, int win_lo);
    // form^p for any integer p (negative powers via expand_neg).
    static LaurentBox linpow(const LinForm& form, int p, int cut, int win_lo);
    // The normalizing scalar with argument form/h, as a windowed value.
    static LaurentBox gbox(const LinForm& form, int dim, int cut, int win_lo);

    int cut() const { return cut_; }
    bool structural_zero() const;

    LaurentBox operator+(const LaurentBox& o) const;
    LaurentBox operator-(const LaurentBox& o) const;
    LaurentBox operator-() const;
    LaurentBox operator*(const LaurentBox& o) const;
    // Support and window bookkeeping of a product, without the entries.
    // Each unknown stripe of one factor, taken against the other factor's
    // full support, is charged to a single constraint that provably fences
    // it: the total-degree layers when the stripe sits beyond every layer
    // cap, else its own variable when the opposite support is bounded on
    // the matching side, else that variable goes dark.
    static LaurentBox conv_mask(const LaurentBox& a, const LaurentBox& b);
    LaurentBox& operator+=(const LaurentBox& o);
    LaurentBox scaled(const Rational& c) const;
    LaurentBox times_monomial(const Rational& c, const EKey& k) const;
    LaurentBox times_h(int k) const { return times_monomial(1, EKey::of({{kVarH, k}})); }
    // Divide by h^d. Stored data below h^d must vanish; the known window in
    // h honestly drops by d.
    LaurentBox div_h(int d) const;

    // Window maintenance. Clamps shrink the known region and drop data;
    // they never touch support.
    void clamp_var(int v, int lo, int hi);
    void clamp_tau(int lo, int hi);
    void restrict_known_var(int v, const SlotRange& w);
    void restrict_known_tau_layer(int layer, const SlotRange& w);
    void restrict_known_tau(const SlotRange& w);
    // Caller-certified claim: the true value extends beyond the tracked
    // support (extra), and the stored data remains complete only where
    // known_cap allows. Used when a finite partial sum stands in for an
    // infinite one.
    void widen_supp_var(int v, const SlotRange& extra, const SlotRange& known_cap);
    void widen_supp_tau_layer(int layer, const SlotRange& extra, const SlotRange& known_cap);
    void mark_h_tail() { h_tail_ = true; }

    bool known_at(const EKey& k) const;
    Rational coeff(const EKey& k) const;  // throws if outside the known region
    Rational coeff_or_zero(const EKey& k) const;
    SlotRange known_var(int v) const { return known_[static_cast<size_t>(v)]; }
    SlotRange supp_var(int v) const { return supp_[static_cast<size_t>(v)]; }
    SlotRange known_tau_layer(int layer) const;
    SlotRange supp_tau_layer(int layer) const;
    bool h_tail() const { return h_tail_; }
    const std::map<EKey, Rational>& entries() const { return c_; }

    // Coefficient extraction: fix one variable's exponent and remove it.
    LaurentBox extract_var(int v, int k) const;
    LaurentBox extract_h(int k) const { return extract_var(kVarH, k); }

    std::string str() const;

  private:
    void saturate_();
    void prune_();
    bool known_nonempty_() const;
    friend bool conv_unbounded_(const LaurentBox& a, const LaurentBox& b);

    int cut_ = 1;
    bool h_tail_ = false;  // true support in h may reach the cut or beyond
    std::map<EKey, Rational> c_;
    std::array<SlotRange, kMaxSeriesVars> known_;
    std::array<SlotRange, kMaxSeriesVars> supp_;
    std::array<SlotRange, kMaxCut> tau_known_;
    std::array<SlotRange, kMaxCut> tau_supp_;
};

// A rectangle of exponents to certify or scan. Variables not listed are
// pinned at exponent zero; h runs over [0, h_order).
struct CheckWindow {
    std::vector<std::tuple<int, int, int>> vars;  // (var, lo, hi)
    int h_order = 1;
};

bool known_on(const LaurentBox& x, const CheckWindow& win);
// Largest-magnitude nonzero coefficient inside the window, if any.
std::optional<std::pair<EKey, Rational>> worst_on(const LaurentBox& x, const CheckWindow& win);

}  // namespace yv
