#include "yv/engine.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace yv {

std::string letter_str(Letter g) {
    std::ostringstream os;
    os << "[-" << letter_depth(g) << ";" << letter_row(g) << "," << letter_col(g) << "]";
    return os.str();
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (Letter g : w) s += letter_str(g);
    return s;
}

int word_weight(const Word& w) {
    int t = 0;
    for (Letter g : w) t += letter_depth(g);
    return t;
}

bool RingOps<LaurentBox>::is_zero(const LaurentBox& b) {
    // Support windows are conservative, so an empty listing with full
    // knowledge is the zero element no matter how wide they are.
    if (!b.entries().empty() || b.h_tail()) return false;
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        SlotRange k = b.known_var(v);
        if (v == kVarH) {
            if (k.lo > 0 || k.hi < b.cut() - 1) return false;
        } else if (!k.full()) {
            return false;
        }
    }
    for (int l = 0; l < b.cut(); ++l)
        if (!b.known_tau_layer(l).full()) return false;
    return true;
}

State RingOps<State>::from_rat(const Rational& q) {
    return State::term({}, LaurentBox(q, default_ring_cut()));
}

// ---- claim boxes ----

LaurentBox claim_seed(int cut) {
    LaurentBox z(cut);
    for (int v = 0; v < kMaxSeriesVars; ++v) z.widen_supp_var(v, SlotRange::at(0), SlotRange::all());
    z.widen_supp_tau_layer(0, SlotRange::at(0), SlotRange::all());
    return z;
}

LaurentBox reorder_budget(int cut) {
    LaurentBox z = claim_seed(cut);
    if (cut > 1) {
        z.widen_supp_var(kVarH, {1, cut - 1}, SlotRange::all());
        for (int l = 1; l < cut; ++l) z.widen_supp_tau_layer(l, SlotRange::at(0), SlotRange::all());
    }
    return z;
}

LaurentBox mask_product(const LaurentBox& a, const LaurentBox& b) {
    if (a.cut() != b.cut()) throw std::logic_error("mask_product: mixed ring cuts");
    const int kw = a.cut();
    LaurentBox r(kw);
    if (a.structural_zero() || b.structural_zero()) {
        // One side carries no in-ring mass; only tail mass times any mass on
        // the other side can survive, and it stays beyond the cut.
        const bool any_a = !a.structural_zero() || a.h_tail();
        const bool any_b = !b.structural_zero() || b.h_tail();
        if ((a.h_tail() && any_b) || (b.h_tail() && any_a)) r.mark_h_tail();
        return r;
    }
    for (int v = 0; v < kMaxSeriesVars; ++v) {
        const SlotRange sf = a.supp_var(v), sg = b.supp_var(v);
        const SlotRange kf = a.known_var(v), kg = b.known_var(v);
        int klo = -kRangeInf, khi = kRangeInf;
        if (sf.lo < kf.lo) klo = std::max(klo, wadd(kf.lo, sg.hi));
        if (sg.lo < kg.lo) klo = std::max(klo, wadd(kg.lo, sf.hi));
        if (sf.hi > kf.hi) khi = std::min(khi, wadd(kf.hi, sg.lo));
        if (sg.hi > kg.hi) khi = std::min(khi, wadd(kg.hi, sf.lo));
        SlotRange supp{wadd(sf.lo, sg.lo), wadd(sf.hi, sg.hi)};
        SlotRange known{klo, khi};
        if (v == kVarH) {
            supp = SlotRange::meet(supp, {0, kw - 1});
            known = {std::max(known.lo, 0), std::min(known.hi, kw - 1)};
        }
        if (supp.empty()) {
            // no mass in this direction; the restriction still applies
            if (!known.full()) r.restrict_known_var(v, known);
        } else {
            r.widen_supp_var(v, supp, known);
        }
    }
    for (int eta = 0; eta < kw; ++eta) {
        SlotRange s = SlotRange::none();
        int klo = -kRangeInf, khi = kRangeInf;
        for (int al = 0; al <= eta; ++al) {
            const SlotRange sa = a.supp_tau_layer(al);
            const SlotRange sb = b.supp_tau_layer(eta - al);
            if (sa.empty() || sb.empty()) continue;
            s = SlotRange::join(s, {wadd(sa.lo, sb.lo), wadd(sa.hi, sb.hi)});
            const SlotRange ka = a.known_tau_layer(al);
            const SlotRange kb = b.known_tau_layer(eta - al);
            if (sa.lo < ka.lo) klo = std::max(klo, wadd(ka.lo, sb.hi));
            if (sb.lo < kb.lo) klo = std::max(klo, wadd(kb.lo, sa.hi));
            if (sa.hi > ka.hi) khi = std::min(khi, wadd(ka.hi, sb.lo));
            if (sb.hi > kb.hi) khi = std::min(khi, wadd(kb.hi, sa.lo));
        }
        SlotRange known{klo, khi};
        if (s.empty()) {
            if (!known.full()) r.restrict_known_tau_layer(eta, known);
        } else {
            r.widen_supp_tau_layer(eta, s, known);
        }
    }
    if (a.h_tail() || b.h_tail() || wadd(a.supp_var(kVarH).hi, b.supp_var(kVarH).hi) > kw - 1)
        r.mark_h_tail();
    return r;
}

// ---- letter exchange ----

const std::vector<SwapTerm>& swap_rule(Letter x, Letter y) {
    thread_local std::map<uint64_t, std::vector<SwapTerm>> cache;
    const uint64_t key = (static_cast<uint64_t>(x) << 32) | y;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int r = letter_depth(x), i = letter_row(x), j = letter_col(x);
    const int s = letter_depth(y), a = letter_row(y), b = letter_col(y);
    std::vector<SwapTerm> terms;
    if (a == j) terms.push_back({{letter_make(r + s, i, b)}, 0, Rational(1)});
    if (i == b) terms.push_back({{letter_make(r + s, a, j)}, 0, Rational(-1)});
    for (int k = 1; k <= s; ++k) {
        terms.push_back({{letter_make(r + k, a, j), letter_make(s - k + 1, i, b)}, 1, Rational(1)});
        terms.push_back({{letter_make(s - k + 1, a, j), letter_make(r + k, i, b)}, 1, Rational(-1)});
    }
    return cache.emplace(key, std::move(terms)).first->second;
}

namespace {

struct Pending {
    Word w;
    int hp;
    Rational cf;
};

std::vector<int> inversions(const Word& w) {
    std::vector<int> ps;
    for (size_t p = 0; p + 1 < w.size(); ++p)
        if (w[p] > w[p + 1]) ps.push_back(static_cast<int>(p));
    return ps;
}

template <class Chooser>
State normal_order_impl(const Word& w0, const LaurentBox& coeff, Chooser choose) {
    const int cut = coeff.cut();
    State out;
    std::vector<Pending> stack;
    stack.push_back({w0, 0, Rational(1)});
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        auto ps = inversions(cur.w);
        if (ps.empty()) {
            out.add_term(cur.w, coeff.times_h(cur.hp).scaled(cur.cf));
            continue;
        }
        const int p = ps[static_cast<size_t>(choose(ps.size()))];
        const Letter x = cur.w[static_cast<size_t>(p)];
        const Letter y = cur.w[static_cast<size_t>(p) + 1];
        Word ws = cur.w;
        std::swap(ws[static_cast<size_t>(p)], ws[static_cast<size_t>(p) + 1]);
        stack.push_back({std::move(ws), cur.hp, cur.cf});
        for (const auto& t : swap_rule(x, y)) {
            if (cur.hp + t.hpow >= cut) continue;
            Word wc;
            wc.reserve(cur.w.size() - 2 + t.letters.size());
            wc.insert(wc.end(), cur.w.begin(), cur.w.begin() + p);
            wc.insert(wc.end(), t.letters.begin(), t.letters.end());
            wc.insert(wc.end(), cur.w.begin() + p + 2, cur.w.end());
            stack.push_back({std::move(wc), cur.hp + t.hpow, cur.cf * t.coeff});
        }
    }
    return out;
}

}  // namespace

State normal_order(const Word& w, const LaurentBox& coeff) {
    return normal_order_impl(w, coeff, [](size_t) { return 0; });
}

State normal_order_seeded(const Word& w, const LaurentBox& coeff, unsigned seed) {
    std::mt19937 rng(seed);
    return normal_order_impl(w, coeff, [&rng](size_t n) {
        return static_cast<int>(rng() % n);
    });
}

// ---- module elements ----

State State::one() { return term({}, LaurentBox(Rational(1), default_ring_cut())); }

State State::term(const Word& canonical, const LaurentBox& b) {
    State s;
    s.add_term(canonical, b);
    return s;
}

LaurentBox State::coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? LaurentBox(slack_.cut()) : it->second;
}

void State::add_term(const Word& canonical, const LaurentBox& b) {
    if (RingOps<LaurentBox>::is_zero(b)) return;
    auto [it, fresh] = t_.emplace(canonical, b);
    if (!fresh) {
        it->second = it->second + b;
        if (RingOps<LaurentBox>::is_zero(it->second)) t_.erase(it);
    }
}

void State::smear(const LaurentBox& mask) {
    if (RingOps<LaurentBox>::is_zero(mask)) return;
    slack_ = slack_ + mask;
}

State& State::operator+=(const State& o) {
    for (const auto& [w, b] : o.t_) add_term(w, b);
    slack_ = slack_ + o.slack_;
    return *this;
}

State State::operator+(const State& o) const {
    State r = *this;
    r += o;
    return r;
}

State State::operator-(const State& o) const { return *this + (-o); }

State State::operator-() const {
    State r;
    for (const auto& [w, b] : t_) r.t_.emplace(w, -b);
    r.slack_ = -slack_;
    return r;
}

State State::scaled(const Rational& c) const {
    if (c == 0) return State();
    State r;
    for (const auto& [w, b] : t_) r.t_.emplace(w, b.scaled(c));
    r.slack_ = slack_.scaled(c);
    return r;
}

State State::scaled_box(const LaurentBox& b) const {
    State r;
    for (const auto& [w, c] : t_) r.add_term(w, c * b);
    r.slack_ = mask_product(slack_, b);
    return r;
}

State State::times_h(int k) const {
    State r;
    for (const auto& [w, b] : t_) r.add_term(w, b.times_h(k));
    r.slack_ = slack_.times_h(k);
    return r;
}

State State::div_h() const {
    State r;
    for (const auto& [w, b] : t_) r.add_term(w, b.div_h(1));
    r.slack_ = slack_.div_h(1);
    return r;
}

State State::extract_var(int v, int k) const {
    State r;
    for (const auto& [w, b] : t_) r.add_term(w, b.extract_var(v, k));
    r.slack_ = slack_.extract_var(v, k);
    return r;
}

bool State::exact_zero() const {
    return t_.empty() && RingOps<LaurentBox>::is_zero(slack_);
}

LaurentBox State::hull() const {
    LaurentBox z(slack_.cut());
    auto absorb = [&](const LaurentBox& b) {
        for (int v = 0; v < kMaxSeriesVars; ++v) {
            SlotRange s = b.supp_var(v);
            if (!s.empty()) z.widen_supp_var(v, s, SlotRange::all());
        }
        for (int l = 0; l < z.cut(); ++l) {
            SlotRange s = b.supp_tau_layer(l);
            if (!s.empty()) z.widen_supp_tau_layer(l, s, SlotRange::all());
        }
        if (b.h_tail()) z.mark_h_tail();
    };
    absorb(slack_);
    for (const auto& [w, b] : t_) absorb(b);
    return z;
}

int State::max_weight() const {
    int m = 0;
    for (const auto& [w, b] : t_) m = std::max(m, word_weight(w));
    return m;
}

State State::operator*(const State& o) const {
    State r;
    for (const auto& [wa, ba] : t_) {
        for (const auto& [wb, bb] : o.t_) {
            Word w;
            w.reserve(wa.size() + wb.size());
            w.insert(w.end(), wa.begin(), wa.end());
            w.insert(w.end(), wb.begin(), wb.end());
            r += normal_order(w, ba * bb);
        }
    }
    const bool ma = !RingOps<LaurentBox>::is_zero(slack_);
    const bool mb = !RingOps<LaurentBox>::is_zero(o.slack_);
    if (ma || mb) {
        const LaurentBox budget = reorder_budget(slack_.cut());
        if (ma) r.smear(mask_product(mask_product(slack_, o.hull()), budget));
        if (mb) r.smear(mask_product(mask_product(hull(), o.slack_), budget));
    }
    return r;
}

State prepend_letter(Letter g, const State& s) {
    State r;
    for (const auto& [w, b] : s.terms()) {
        Word wg;
        wg.reserve(w.size() + 1);
        wg.push_back(g);
        wg.insert(wg.end(), w.begin(), w.end());
        r += normal_order(wg, b);
    }
    if (!RingOps<LaurentBox>::is_zero(s.slack()))
        r.smear(mask_product(s.slack(), reorder_budget(s.slack().cut())));
    return r;
}

std::string State::str() const {
    std::ostringstream os;
    for (const auto& [w, b] : t_) os << word_str(w) << " : " << b.str() << "\n";
    if (!RingOps<LaurentBox>::is_zero(slack_)) os << "<slack> : " << slack_.str() << "\n";
    if (t_.empty() && RingOps<LaurentBox>::is_zero(slack_)) os << "0\n";
    return os.str();
}

// ---- window verdicts ----

ZeroCheck check_zero(const State& s, const CheckWindow& win) {
    ZeroCheck r;
    for (const auto& [w, b] : s.terms()) {
        if (!known_on(b, win)) r.known = false;
        if (auto bad = worst_on(b, win)) {
            Rational mag = abs(bad->second);
            Rational cur = abs(r.worst);
            if (r.clean || mag > cur) {
                r.worst = bad->second;
                r.worst_word = w;
                r.worst_key = bad->first;
            }
            r.clean = false;
        }
    }
    if (!known_on(s.slack(), win)) r.known = false;
    return r;
}

ZeroCheck check_zero(const StateOp& A, const CheckWindow& win) {
    ZeroCheck r;
    for (const auto& [k, v] : A.entries()) {
        ZeroCheck c = check_zero(v, win);
        if (!c.known) r.known = false;
        if (!c.clean) {
            Rational mag = abs(c.worst);
            Rational cur = abs(r.worst);
            if (r.clean || mag > cur) {
                r.worst = c.worst;
                r.worst_word = c.worst_word;
                r.worst_key = c.worst_key;
            }
            r.clean = false;
        }
    }
    return r;
}

ZeroCheck check_equal(const StateOp& A, const StateOp& B, const CheckWindow& win) {
    return check_zero(A - B, win);
}

}  // namespace yv
