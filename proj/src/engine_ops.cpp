#include <algorithm>
#include <array>

#include "yv/engine.hpp"

namespace yv {

namespace {

// The linear form as a one-term-per-variable box.
LaurentBox linform_box(const LinForm& X, int cut) {
    LaurentBox r(cut);
    for (const auto& [v, q] : X.terms()) r += LaurentBox::monomial(q, EKey::of({{v, 1}}), cut);
    return r;
}

// Coefficient moves available to the series annihilation on unknown mass:
// the value picks up explicit deformation orders while the expansion
// direction of X only ever drops. Variables not in X are untouched.
LaurentBox pull_shift(const LinForm& X, int cut) {
    LaurentBox ps(cut);
    std::array<bool, kMaxSeriesVars> involved{};
    involved[kVarH] = true;
    bool dom = true;
    for (const auto& [v, q] : X.terms()) {
        (void)q;
        if (v == kVarH) continue;
        involved[static_cast<size_t>(v)] = true;
        ps.widen_supp_var(v, dom ? SlotRange{-kRangeInf, -1} : SlotRange{0, kRangeInf},
                          SlotRange::all());
        dom = false;
    }
    for (int v = 0; v < kMaxSeriesVars; ++v)
        if (!involved[static_cast<size_t>(v)])
            ps.widen_supp_var(v, SlotRange::at(0), SlotRange::all());
    if (cut > 1) {
        ps.widen_supp_var(kVarH, {1, cut - 1}, SlotRange::all());
        for (int l = 1; l < cut; ++l)
            ps.widen_supp_tau_layer(l, {-kRangeInf, -1}, SlotRange::all());
    }
    return ps;
}

State pure_slack(const LaurentBox& mask) {
    State s;
    s.smear(mask);
    return s;
}

}  // namespace

Engine::Engine(EngineParams p) : p_(std::move(p)), vx_(var_id("vx")) {
    if (p_.N < 1 || p_.N > 0xff) throw std::domain_error("Engine: dimension out of range");
    if (p_.cut < 1) throw std::domain_error("Engine: cut must be positive");
    if (p_.rmax < 1) throw std::domain_error("Engine: rmax must be positive");
    if (p_.win_lo >= 0) throw std::domain_error("Engine: win_lo must be negative");
    if (p_.twist.N != p_.N) throw std::domain_error("Engine: twist size mismatch");
}

// ---- scalar matrices ----

BoxOp Engine::rbar_cached(const LinForm& arg, int win_lo) const {
    std::string key = arg.key() + "@" + std::to_string(win_lo);
    auto it = rbar_memo_.find(key);
    if (it != rbar_memo_.end()) return it->second;
    const int kw = p_.cut;
    const LaurentBox g = LaurentBox::gbox(arg, p_.N, kw, win_lo);
    const LaurentBox inv1 = LaurentBox::expand_neg(arg, 1, kw, win_lo);
    BoxOp r = BoxOp::identity(2, p_.N).scaled(g) -
              BoxOp::pair_swap(p_.N).scaled(g * inv1.times_h(1));
    return rbar_memo_.emplace(std::move(key), std::move(r)).first->second;
}

BoxOp Engine::rbar(const LinForm& arg) const {
    RingCutGuard guard(p_.cut);
    return rbar_cached(arg, p_.win_lo);
}

BoxOp Engine::rbar_inv(const LinForm& arg) const { return rbar(-arg); }

BoxOp Engine::rmat(const LinForm& arg) const {
    RingCutGuard guard(p_.cut);
    const LaurentBox inv1 = LaurentBox::expand_neg(arg, 1, p_.cut, p_.win_lo);
    return BoxOp::identity(2, p_.N) - BoxOp::pair_swap(p_.N).scaled(inv1.times_h(1));
}

BoxOp Engine::rmat_inv(const LinForm& arg) const {
    RingCutGuard guard(p_.cut);
    LaurentBox geom(Rational(1), p_.cut);
    for (int k = 1; 2 * k < p_.cut; ++k)
        geom += LaurentBox::linpow(arg, -2 * k, p_.cut, p_.win_lo).times_h(2 * k);
    return rmat(-arg).scaled(geom);
}

BoxOp Engine::perm2() const {
    RingCutGuard guard(p_.cut);
    return BoxOp::pair_swap(p_.N);
}

BoxOp Engine::gmat(int legs, int leg) const {
    RingCutGuard guard(p_.cut);
    return matrix_on_leg<LaurentBox>(legs, p_.N, leg, p_.twist.G);
}

BoxOp Engine::gmat_inv(int legs, int leg) const {
    RingCutGuard guard(p_.cut);
    return matrix_on_leg<LaurentBox>(legs, p_.N, leg, p_.twist.Ginv);
}

StateOp Engine::lift(const BoxOp& b) {
    StateOp r(b.legs(), b.dim());
    for (const auto& [k, v] : b.entries()) r.set_entry(k.first, k.second, State::term({}, v));
    return r;
}

StateOp Engine::id_op(int legs) const {
    RingCutGuard guard(p_.cut);
    return StateOp::identity(legs, p_.N);
}

// ---- annihilation pushthrough ----

const std::vector<State>& Engine::ann_word(const LinForm& X, const Word& w) const {
    RingCutGuard guard(p_.cut);
    auto key = std::make_pair(X.key(), w);
    auto hit = ann_memo_.find(key);
    if (hit != ann_memo_.end()) return hit->second;

    const int N = p_.N;
    std::vector<State> res(static_cast<size_t>(N) * static_cast<size_t>(N));
    if (w.empty()) {
        for (int i = 0; i < N; ++i) res[static_cast<size_t>(i * N + i)] = State::one();
        return ann_memo_.emplace(std::move(key), std::move(res)).first->second;
    }

    const Letter x = w.front();
    const Word rest(w.begin() + 1, w.end());
    const auto& C = ann_word(X, rest);
    const int r = letter_depth(x), a = letter_row(x), b = letter_col(x);
    const int wl = std::min(p_.win_lo, -(r + p_.cut + 2));

    LinForm argm = X;
    argm.add(vx_, Rational(-1));
    argm.add(kVarH, -p_.level / 2);
    LinForm argp = X;
    argp.add(vx_, Rational(-1));
    argp.add(kVarH, p_.level / 2);
    const BoxOp B = rbar_cached(argm, wl);
    const BoxOp Binv = rbar_cached(-argp, wl);

    StateOp c1(1, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const State& s = C[static_cast<size_t>(i * N + j)];
            if (!s.exact_zero()) c1.set_entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j), s);
        }

    const StateOp D = c1.embed(2, {0}) * lift(B);
    const StateOp E = act_cre_impl(D, 1, LinForm::var(vx_), r, false, false);
    const StateOp M = lift(Binv) * E;

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const State entry = M.entry(pack_idx({i, a}, N), pack_idx({j, b}, N));
            State ext = entry.extract_var(vx_, r - 1);
            if (r == 1 && a == b) ext = ext - C[static_cast<size_t>(i * N + j)];
            res[static_cast<size_t>(i * N + j)] = ext.scaled(Rational(-1)).div_h();
        }
    return ann_memo_.emplace(std::move(key), std::move(res)).first->second;
}

// ---- one-leg series application ----

LaurentBox Engine::cre_tail_mask(const LinForm& X, const LaurentBox& hull) const {
    const int kw = p_.cut;
    if (kw <= 1) return LaurentBox(kw);
    std::vector<int> vars;
    for (const auto& [v, q] : X.terms()) {
        (void)q;
        if (v != kVarH) vars.push_back(v);
    }
    const int nv = std::max<int>(1, static_cast<int>(vars.size()));
    const int cap = p_.rmax >= kw ? (p_.rmax - kw) / nv + 1 : 1;
    auto seed_tail = [&]() {
        LaurentBox t = claim_seed(kw);
        t.widen_supp_var(kVarH, {1, kw - 1}, SlotRange::all());
        for (int l = 1; l < kw; ++l)
            t.widen_supp_tau_layer(l, {std::max(0, p_.rmax - kw + 1), kRangeInf},
                                   SlotRange::all());
        for (int v : vars) t.widen_supp_var(v, {0, kRangeInf}, SlotRange::all());
        return t;
    };
    LaurentBox total(kw);
    for (int v : vars) {
        LaurentBox t = seed_tail();
        t.restrict_known_var(v, {-kRangeInf, cap - 1});
        total = total + mask_product(t, hull);
    }
    if (vars.empty() || p_.rmax < kw) {
        LaurentBox t = seed_tail();
        t.restrict_known_var(kVarH, {0, std::min(p_.rmax, kw) - 1});
        total = total + mask_product(t, hull);
    }
    return total;
}

StateOp Engine::act_cre_impl(const StateOp& A, int leg, const LinForm& X, int modes,
                             bool with_tail, bool transposed) const {
    const int N = p_.N;
    const int kw = p_.cut;
    StateOp out(A.legs(), N);

    std::vector<LaurentBox> xp;
    if (kw > 1) {
        const LaurentBox xb = linform_box(X, kw);
        xp.reserve(static_cast<size_t>(modes));
        xp.push_back(LaurentBox(Rational(1), kw));
        for (int t = 1; t < modes; ++t) xp.push_back(xp.back() * xb);
    }

    for (const auto& [rk, entry] : A.entries()) {
        const uint32_t rkey = rk.first, ckey = rk.second;
        const State& s = entry;
        const int k = idx_digit(rkey, leg, N);
        out.add_entry(rkey, ckey, s);
        if (kw > 1) {
            for (int rr = 1; rr <= modes; ++rr) {
                const LaurentBox cf = xp[static_cast<size_t>(rr - 1)].times_h(1);
                for (int i = 0; i < N; ++i) {
                    const int row = transposed ? k : i;
                    const int col = transposed ? i : k;
                    State contrib = prepend_letter(letter_make(rr, row, col), s)
                                        .scaled_box(cf)
                                        .scaled(Rational(-1));
                    if (contrib.exact_zero()) continue;
                    out.add_entry(idx_with(rkey, leg, N, i), ckey, contrib);
                }
            }
        }
        if (with_tail) {
            const LaurentBox tm = cre_tail_mask(X, s.hull());
            if (!RingOps<LaurentBox>::is_zero(tm))
                for (int i = 0; i < N; ++i)
                    out.add_entry(idx_with(rkey, leg, N, i), ckey, pure_slack(tm));
        }
    }
    return out;
}

StateOp Engine::act_ann_impl(const StateOp& A, int leg, const LinForm& X, bool transposed) const {
    const int N = p_.N;
    StateOp out(A.legs(), N);
    const LaurentBox ps = pull_shift(X, p_.cut);

    for (const auto& [rk, entry] : A.entries()) {
        const uint32_t rkey = rk.first, ckey = rk.second;
        const State& s = entry;
        const int k = idx_digit(rkey, leg, N);
        for (const auto& [w, b] : s.terms()) {
            const auto& M = ann_word(X, w);
            for (int i = 0; i < N; ++i) {
                const int tr = transposed ? k : i;
                const int tc = transposed ? i : k;
                const State& m = M[static_cast<size_t>(tr * N + tc)];
                if (m.exact_zero()) continue;
                out.add_entry(idx_with(rkey, leg, N, i), ckey, m.scaled_box(b));
            }
        }
        if (!RingOps<LaurentBox>::is_zero(s.slack())) {
            const LaurentBox moved = mask_product(s.slack(), ps);
            for (int i = 0; i < N; ++i) {
                LaurentBox mask = i == k ? s.slack() + moved : moved;
                if (!RingOps<LaurentBox>::is_zero(mask))
                    out.add_entry(idx_with(rkey, leg, N, i), ckey, pure_slack(mask));
            }
        }
    }
    return out;
}

StateOp Engine::act_cre(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    return act_cre_impl(A, leg, X, p_.rmax, true, false);
}

StateOp Engine::act_cre_t(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    return act_cre_impl(A, leg, X, p_.rmax, true, true);
}

StateOp Engine::act_ann(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    return act_ann_impl(A, leg, X, false);
}

StateOp Engine::act_ann_t(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    return act_ann_impl(A, leg, X, true);
}

State Engine::cre_entry(int i, int j, const LinForm& X, const State& s) const {
    RingCutGuard guard(p_.cut);
    StateOp one(1, p_.N);
    for (int k = 0; k < p_.N; ++k)
        one.set_entry(static_cast<uint32_t>(k), static_cast<uint32_t>(k), s);
    const StateOp out = act_cre_impl(one, 0, X, p_.rmax, true, false);
    return out.entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
}

State Engine::ann_entry(int i, int j, const LinForm& X, const State& s) const {
    RingCutGuard guard(p_.cut);
    StateOp one(1, p_.N);
    for (int k = 0; k < p_.N; ++k)
        one.set_entry(static_cast<uint32_t>(k), static_cast<uint32_t>(k), s);
    const StateOp out = act_ann_impl(one, 0, X, false);
    return out.entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
}

// ---- reflection applications ----

StateOp Engine::act_refl(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    StateOp r = act_ann_impl(A, leg, -X, true);
    r = lift(gmat(A.legs(), leg)) * r;
    LinForm shifted = X;
    shifted.add(kVarH, p_.level);
    return act_ann_impl(r, leg, shifted, false);
}

StateOp Engine::act_refl_plus(const StateOp& A, int leg, const LinForm& X) const {
    RingCutGuard guard(p_.cut);
    StateOp r = act_cre_impl(A, leg, -X, p_.rmax, true, true);
    r = lift(gmat(A.legs(), leg)) * r;
    return act_cre_impl(r, leg, X, p_.rmax, true, false);
}

StateOp Engine::refl_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u,
                           bool plus) const {
    RingCutGuard guard(p_.cut);
    const int n = static_cast<int>(u.size());
    StateOp r = A;
    for (int i = n - 1; i >= 0; --i) {
        const LinForm xi = z + u[static_cast<size_t>(i)];
        r = plus ? act_refl_plus(r, i, xi) : act_refl(r, i, xi);
        if (i > 0) {
            for (int j = n - 1; j >= i; --j) {
                LinForm arg = z.scaled(Rational(-2)) - u[static_cast<size_t>(i - 1)] -
                              u[static_cast<size_t>(j)];
                if (!plus) arg.add(kVarH, -p_.level);
                const BoxOp rb =
                    rbar(arg).transpose_leg(0).embed(A.legs(), {i - 1, j});
                r = lift(rb) * r;
            }
        }
    }
    return r;
}

StateOp Engine::cre_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u) const {
    RingCutGuard guard(p_.cut);
    StateOp r = A;
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        r = act_cre(r, i, z + u[static_cast<size_t>(i)]);
    return r;
}

StateOp Engine::ann_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u) const {
    RingCutGuard guard(p_.cut);
    StateOp r = A;
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        r = act_ann(r, i, z + u[static_cast<size_t>(i)]);
    return r;
}

StateOp Engine::refl_multi_inverse(const StateOp& A, const LinForm& z,
                                   const std::vector<LinForm>& u) const {
    RingCutGuard guard(p_.cut);
    const int n = static_cast<int>(u.size());
    auto ginv_all = [&](StateOp M) {
        for (int i = 0; i < n; ++i) M = lift(gmat_inv(M.legs(), i)) * M;
        return M;
    };
    StateOp v = ginv_all(A);
    for (int pass = 1; pass < p_.cut; ++pass) {
        const StateOp resid = A - refl_multi(v, z, u, false);
        v = v + ginv_all(resid);
    }
    return v;
}

StateOp Engine::ann_multi_inverse(const StateOp& A, const LinForm& z,
                                  const std::vector<LinForm>& u) const {
    RingCutGuard guard(p_.cut);
    StateOp v = A;
    for (int pass = 1; pass < p_.cut; ++pass) v = v + (A - ann_multi(v, z, u));
    return v;
}

// ---- reflection letters ----

State Engine::refl_mode_neg(int r, int i, int j, const State& s) const {
    RingCutGuard guard(p_.cut);
    const LinForm xv = LinForm::var(var_id("v"));
    StateOp diag(1, p_.N);
    for (int k = 0; k < p_.N; ++k)
        diag.set_entry(static_cast<uint32_t>(k), static_cast<uint32_t>(k), s);
    const StateOp out = act_refl_plus(diag, 0, xv);
    State sl = out.entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j))
                   .extract_var(var_id("v"), r - 1);
    if (r == 1) sl = sl - s.scaled(p_.twist.g(i, j));
    return sl.scaled(Rational(-1)).div_h();
}

State Engine::refl_mode_pos(int r, int i, int j, const State& s) const {
    RingCutGuard guard(p_.cut);
    const LinForm xv = LinForm::var(var_id("v"));
    StateOp diag(1, p_.N);
    for (int k = 0; k < p_.N; ++k)
        diag.set_entry(static_cast<uint32_t>(k), static_cast<uint32_t>(k), s);
    const StateOp out = act_refl(diag, 0, xv);
    return out.entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j))
        .extract_var(var_id("v"), -r)
        .div_h();
}

}  // namespace yv
