#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "yv/engine.hpp"

using namespace yv;

namespace {

const int kU = var_id("u");
const int kV = var_id("v");
const int kZ = var_id("z");

LaurentBox unit_box(int cut) { return LaurentBox(Rational(1), cut); }

Word random_word(std::mt19937& rng, int len) {
    Word w;
    for (int i = 0; i < len; ++i)
        w.push_back(letter_make(1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 2),
                                static_cast<int>(rng() % 2)));
    return w;
}

State comm(const State& a, const State& b) { return a * b - b * a; }

// Identity operator whose diagonal carries the given state.
StateOp diag_op(int legs, int dim, const State& s) {
    StateOp a(legs, dim);
    uint32_t total = 1;
    for (int l = 0; l < legs; ++l) total *= static_cast<uint32_t>(dim);
    for (uint32_t k = 0; k < total; ++k) a.set_entry(k, k, s);
    return a;
}

}  // namespace

TEST_CASE("letter packing") {
    Letter g = letter_make(7, 1, 0);
    CHECK(letter_depth(g) == 7);
    CHECK(letter_row(g) == 1);
    CHECK(letter_col(g) == 0);
    CHECK(letter_make(1, 0, 1) < letter_make(2, 0, 0));  // depth major
    CHECK(letter_make(1, 0, 1) < letter_make(1, 1, 0));
    CHECK(letter_make(1, 1, 0) < letter_make(1, 1, 1));
    CHECK_THROWS(letter_make(0, 0, 0));
    Word w{letter_make(2, 0, 1), letter_make(1, 1, 1)};
    CHECK(word_weight(w) == 3);
}

TEST_CASE("normal order confluence") {
    const int cut = 3;
    RingCutGuard guard(cut);
    std::mt19937 rng(20240817);
    int checked = 0;
    for (int trial = 0; trial < 18; ++trial) {
        Word w = random_word(rng, 2 + static_cast<int>(rng() % 3));
        State ref = normal_order(w, unit_box(cut));
        for (unsigned seed = 0; seed < 100; ++seed) {
            State alt = normal_order_seeded(w, unit_box(cut), seed);
            State diff = ref - alt;
            CHECK_MESSAGE(diff.exact_zero(),
                          "word " << word_str(w) << " seed " << seed << " diff " << diff.str());
            if (!diff.exact_zero()) return;
            ++checked;
        }
    }
    CHECK(checked == 1800);
}

// Value equality in the truncated ring: reordering past the cut leaves
// tail-marked zero coefficients behind, which exact_zero() rightly keeps
// but a window check sees through.
static bool ring_zero(const State& s, int hord) {
    CheckWindow win;
    win.h_order = hord;
    ZeroCheck zc = check_zero(s, win);
    return zc.known && zc.clean;
}

TEST_CASE("swap involution") {
    const int cut = 3;
    RingCutGuard guard(cut);
    std::mt19937 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        Word w = random_word(rng, 2);
        Letter x = w[0], y = w[1];
        if (x == y) continue;
        // x y = y x + C(x,y) and y x = x y + C(y,x); substituting one into
        // the other, the two correction sums must cancel after reordering.
        State total;
        for (const auto& t : swap_rule(x, y))
            total += normal_order(t.letters, LaurentBox(t.coeff, cut).times_h(t.hpow));
        for (const auto& t : swap_rule(y, x))
            total += normal_order(t.letters, LaurentBox(t.coeff, cut).times_h(t.hpow));
        CHECK_MESSAGE(ring_zero(total, cut),
                      "letters " << letter_str(x) << letter_str(y) << " left " << total.str());
    }
}

TEST_CASE("product associativity and jacobi") {
    const int cut = 3;
    RingCutGuard guard(cut);
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        State a = normal_order(random_word(rng, 1 + static_cast<int>(rng() % 2)), unit_box(cut));
        State b = normal_order(random_word(rng, 1 + static_cast<int>(rng() % 2)), unit_box(cut));
        State c = normal_order(random_word(rng, 1), unit_box(cut));
        State assoc = (a * b) * c - a * (b * c);
        CHECK_MESSAGE(ring_zero(assoc, cut), "assoc defect " << assoc.str());
        State jac = comm(comm(a, b), c) + comm(comm(b, c), a) + comm(comm(c, a), b);
        CHECK_MESSAGE(ring_zero(jac, cut), "jacobi defect " << jac.str());
    }
}

TEST_CASE("mask product windows") {
    const int cut = 4;
    RingCutGuard guard(cut);
    LaurentBox claim = claim_seed(cut);
    claim.widen_supp_var(kV, SlotRange{0, kRangeInf}, SlotRange::all());
    claim.restrict_known_var(kV, SlotRange{-kRangeInf, 2});

    // A shifter moving a different variable leaves the policing alone.
    LaurentBox pull_u = claim_seed(cut);
    pull_u.widen_supp_var(kU, SlotRange{-kRangeInf, -1}, SlotRange::all());
    LaurentBox m1 = mask_product(claim, pull_u);
    CHECK(m1.known_at(EKey::of({{kV, 2}})));
    CHECK(m1.known_at(EKey::of({{kV, 2}, {kU, -3}})));
    CHECK(!m1.known_at(EKey::of({{kV, 3}})));

    // A shifter moving the policed variable down erodes the claim.
    LaurentBox pull_v = claim_seed(cut);
    pull_v.widen_supp_var(kV, SlotRange{-kRangeInf, -1}, SlotRange::all());
    LaurentBox m2 = mask_product(claim, pull_v);
    CHECK(!m2.known_at(EKey::of({{kV, 0}})));
    CHECK(!m2.known_at(EKey::of({{kV, 2}})));

    // The reordering budget never moves spectral exponents.
    LaurentBox m3 = mask_product(claim, reorder_budget(cut));
    CHECK(m3.known_var(kV).hi == 2);
    CHECK(m3.known_at(EKey::of({{kV, 2}, {kVarH, 2}})));
}

TEST_CASE("annihilation on vacuum") {
    EngineParams p;
    RingCutGuard guard(p.cut);
    Engine eng(p);
    const auto& tab = eng.ann_word(LinForm::var(kU), {});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            State diff = tab[static_cast<size_t>(i * 2 + j)];
            if (i == j) diff = diff - State::one();
            CHECK(diff.exact_zero());
        }
    StateOp base = diag_op(1, 2, State::one());
    StateOp acted = eng.act_ann(base, 0, LinForm::var(kU));
    CheckWindow win;
    win.vars = {{kU, -4, 2}};
    win.h_order = p.cut;
    auto zc = check_equal(acted, base, win);
    CHECK(zc.known);
    CHECK(zc.clean);
}

TEST_CASE("single mode pulldown") {
    EngineParams p;
    p.cut = 4;
    p.level = Rational(3, 2);
    RingCutGuard guard(p.cut);
    Engine eng(p);
    for (int s = 1; s <= 2; ++s)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const auto& tab = eng.ann_word(LinForm::var(kU), {letter_make(s, a, b)});
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        State expected;
                        if (i == j)
                            expected += State::term({letter_make(s, a, b)}, unit_box(p.cut));
                        for (int r = 1; r <= s; ++r) {
                            LaurentBox cf =
                                LaurentBox::monomial(Rational(1), EKey::of({{kVarH, 1}, {kU, -r}}),
                                                     p.cut);
                            int d = s - r + 1;
                            if (a == j) expected += State::term({letter_make(d, i, b)}, cf);
                            if (i == b)
                                expected += State::term({letter_make(d, a, j)}, cf).scaled(
                                    Rational(-1));
                        }
                        // Level-proportional contact term on the empty word,
                        // one order past the ladder.
                        Rational cw(0);
                        if (a == j && i == b) cw += Rational(1);
                        if (i == j && a == b) cw -= Rational(1, 2);
                        cw = Rational(cw * p.level) * Rational(s);
                        if (cw != 0)
                            expected += State::term(
                                {}, LaurentBox::monomial(
                                        cw, EKey::of({{kVarH, 1}, {kU, -(s + 1)}}), p.cut));
                        State diff = tab[static_cast<size_t>(i * 2 + j)] - expected;
                        CheckWindow win;
                        win.vars = {{kU, -4, 0}};
                        win.h_order = 2;  // classical part of the exchange
                        auto zc = check_zero(diff, win);
                        CHECK_MESSAGE(zc.known, "s=" << s << " entry " << i << j << " word "
                                                     << word_str({letter_make(s, a, b)}));
                        CHECK_MESSAGE(zc.clean, "s=" << s << " entry " << i << j << " worst "
                                                     << to_string(zc.worst) << " at "
                                                     << zc.worst_key.str() << " word "
                                                     << word_str(zc.worst_word));
                    }
            }
}

TEST_CASE("vacuum reflection is the twist matrix") {
    for (int kind = 0; kind < 2; ++kind) {
        EngineParams p;
        p.cut = 3;
        p.level = Rational(-1);
        p.twist = kind == 0 ? TwistData::symmetric_identity(2) : TwistData::antisymmetric_blocks(2);
        RingCutGuard guard(p.cut);
        Engine eng(p);
        StateOp base = diag_op(1, 2, State::one());
        StateOp acted = eng.act_refl(base, 0, LinForm::var(kU));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                State diff = acted.entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j)) -
                             State::one().scaled(p.twist.g(i, j));
                CHECK_MESSAGE(diff.exact_zero(), "kind " << kind << " entry " << i << j << " got "
                                                         << diff.str());
            }
        // Raising reflection modes annihilate the vacuum.
        for (int r = 1; r <= 2; ++r)
            CHECK(eng.refl_mode_pos(r, 0, 1, State::one()).exact_zero());
    }
}

TEST_CASE("reflection lowering modes classical part") {
    for (int kind = 0; kind < 2; ++kind) {
        EngineParams p;
        p.cut = 3;
        p.twist = kind == 0 ? TwistData::symmetric_identity(2) : TwistData::antisymmetric_blocks(2);
        RingCutGuard guard(p.cut);
        Engine eng(p);
        for (int r = 1; r <= 2; ++r)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    State got = eng.refl_mode_neg(r, i, j, State::one());
                    State expected;
                    Rational flip = r % 2 == 1 ? Rational(1) : Rational(-1);
                    for (int k = 0; k < 2; ++k) {
                        Rational c1 = p.twist.g(k, j);
                        if (c1 != 0)
                            expected += State::term({letter_make(r, i, k)}, unit_box(p.cut))
                                            .scaled(c1);
                        Rational c2 = flip * p.twist.g(i, k);
                        if (c2 != 0)
                            expected += State::term({letter_make(r, j, k)}, unit_box(p.cut))
                                            .scaled(c2);
                    }
                    State diff = got - expected;
                    CheckWindow win;
                    win.h_order = 1;
                    auto zc = check_zero(diff, win);
                    CHECK_MESSAGE(zc.known, "kind " << kind << " r " << r << " entry " << i << j);
                    CHECK_MESSAGE(zc.clean, "kind " << kind << " r " << r << " entry " << i << j
                                                    << " worst " << to_string(zc.worst) << " word "
                                                    << word_str(zc.worst_word) << " at "
                                                    << zc.worst_key.str());
                }
    }
}

TEST_CASE("mixed exchange relation instance") {
    EngineParams p;
    p.N = 2;
    p.level = Rational(-2);
    p.cut = 5;
    p.rmax = 10;
    RingCutGuard guard(p.cut);
    Engine eng(p);
    State ws = State::term({letter_make(1, 0, 1)}, unit_box(p.cut));
    StateOp base = diag_op(2, 2, ws);

    StateOp lhs = eng.act_cre(base, 1, LinForm::var(kV));
    lhs = eng.act_ann(lhs, 0, LinForm::var(kU));
    LinForm arg_l = LinForm::var(kU) - LinForm::var(kV);
    arg_l.add(kVarH, p.level / 2);
    lhs = Engine::lift(eng.rbar(arg_l)) * lhs;

    StateOp rhs = eng.act_ann(base, 0, LinForm::var(kU));
    rhs = eng.act_cre(rhs, 1, LinForm::var(kV));
    LinForm arg_r = LinForm::var(kU) - LinForm::var(kV);
    arg_r.add(kVarH, -p.level / 2);
    rhs = rhs * Engine::lift(eng.rbar(arg_r));

    CheckWindow win;
    win.vars = {{kU, -3, 1}, {kV, -1, 3}};
    win.h_order = 3;
    auto zc = check_equal(lhs, rhs, win);
    CHECK(zc.known);
    CHECK_MESSAGE(zc.clean, "worst " << to_string(zc.worst) << " word " << word_str(zc.worst_word)
                                     << " at " << zc.worst_key.str());
}

TEST_CASE("mode cap agreement") {
    RingCutGuard guard(4);
    auto run = [](int rmax) {
        EngineParams p;
        p.cut = 4;
        p.rmax = rmax;
        Engine eng(p);
        StateOp base = diag_op(2, 2, State::one());
        StateOp acted = eng.act_cre(base, 1, LinForm::var(kV));
        return eng.act_ann(acted, 0, LinForm::var(kU));
    };
    StateOp low = run(6);
    StateOp high = run(10);
    CheckWindow win;
    win.vars = {{kU, -3, 0}, {kV, 0, 2}};  // inside both mode caps
    win.h_order = 3;
    auto zc = check_equal(low, high, win);
    CHECK(zc.known);
    CHECK_MESSAGE(zc.clean, "worst " << to_string(zc.worst) << " at " << zc.worst_key.str());
}

TEST_CASE("series inverses") {
    EngineParams p;
    p.cut = 4;
    RingCutGuard guard(p.cut);
    Engine eng(p);
    State ws = State::term({letter_make(2, 1, 0)}, unit_box(p.cut));
    StateOp base = diag_op(1, 2, ws);
    std::vector<LinForm> u{LinForm::var(kU)};

    StateOp inv = eng.ann_multi_inverse(base, LinForm::var(kZ), u);
    StateOp back = eng.ann_multi(inv, LinForm::var(kZ), u);
    CheckWindow win;
    win.vars = {{kZ, -3, 0}, {kU, -3, 0}};
    win.h_order = 2;
    auto zc = check_equal(back, base, win);
    CHECK(zc.known);
    CHECK_MESSAGE(zc.clean, "worst " << to_string(zc.worst) << " at " << zc.worst_key.str());

    StateOp vac = diag_op(1, 2, State::one());
    StateOp rinv = eng.refl_multi_inverse(vac, LinForm::var(kZ), u);
    StateOp rback = eng.refl_multi(rinv, LinForm::var(kZ), u, false);
    auto rz = check_equal(rback, vac, win);
    CHECK(rz.known);
    CHECK_MESSAGE(rz.clean, "worst " << to_string(rz.worst) << " at " << rz.worst_key.str());
}
