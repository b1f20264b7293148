#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yv/gseries.hpp"
#include "yv/wseries.hpp"

using namespace yv;

namespace {

const int U = var_id("u");
const int V = var_id("v");
const int Z = var_id("z");

EKey key(std::initializer_list<std::pair<int, int>> parts) { return EKey::of(parts); }

// Compare two boxes coefficient-by-coefficient over a rectangle, requiring
// the reference to be known wherever the probe claims knowledge.
void check_agree(const LaurentBox& probe, const LaurentBox& ref,
                 const std::vector<int>& vars, int lo, int hi) {
    std::vector<int> cur(vars.size(), lo);
    for (;;) {
        for (int eta = 0; eta < probe.cut(); ++eta) {
            EKey k = key({{kVarH, eta}});
            for (size_t i = 0; i < vars.size(); ++i) k = k.with(vars[i], cur[i]);
            if (probe.known_at(k)) {
                REQUIRE(ref.known_at(k));
                CHECK(probe.coeff(k) == ref.coeff(k));
            }
        }
        size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (cur[i] < hi) {
                ++cur[i];
                break;
            }
            cur[i] = lo;
        }
        if (i == vars.size()) break;
    }
}

}  // namespace

TEST_CASE("polynomial boxes round-trip and multiply exactly") {
    const int cut = 4;
    Poly p = Poly::linform(LinForm::var(U) + LinForm::var(V).scaled(rat(-2, 1)));
    Poly q = Poly::linform(LinForm::var(U).scaled(rat(3, 1)) + LinForm::h_term(rat(1, 1)));
    auto bp = LaurentBox::from_poly(p, cut);
    auto bq = LaurentBox::from_poly(q, cut);
    auto prod = bp * bq;
    auto direct = LaurentBox::from_poly(p * q, cut);
    for (const auto& [k, c] : direct.entries()) {
        CHECK(prod.known_at(k));
        CHECK(prod.coeff(k) == c);
    }
    CHECK(prod.entries().size() == direct.entries().size());
    CHECK((prod - direct).entries().empty());
    // fully known in-ring
    CHECK(known_on(prod, {{{U, -3, 3}, {V, -3, 3}}, cut}));
}

TEST_CASE("directed inverse of a difference times the difference is one") {
    const int cut = 3;
    const int lo = -8;
    LinForm f = LinForm::var(U).add(V, rat(-1, 1));
    auto inv = LaurentBox::expand_neg(f, 1, cut, lo);
    // geometric expansion downward in u: all stored coefficients are 1
    for (const auto& [k, c] : inv.entries()) {
        CHECK(c == rat(1, 1));
        CHECK(k.at(U) + k.at(V) == -1);
        CHECK(k.h() == 0);
    }
    CHECK(inv.known_var(U).lo == lo);

    auto prod = inv * LaurentBox::from_poly(Poly::linform(f), cut);
    CHECK(prod.coeff(EKey{}) == rat(1, 1));
    CHECK(prod.entries().size() == 1);
    // one column of claims is spent clearing the boundary term
    CHECK(prod.known_var(U).lo == lo + 1);
    auto resid = prod - LaurentBox(rat(1, 1), cut);
    CHECK(known_on(resid, {{{U, -6, 0}, {V, 0, 6}}, cut}));
    CHECK(!worst_on(resid, {{{U, -6, 0}, {V, 0, 6}}, cut}));
}

TEST_CASE("opposite-direction expansions refuse to certify their product") {
    const int cut = 2;
    LinForm f = LinForm::var(U).add(V, rat(-1, 1));
    LinForm g = LinForm::var(V).add(U, rat(-1, 1));
    auto down_u = LaurentBox::expand_neg(f, 1, cut, -8);
    auto down_v = LaurentBox::expand_neg(g, 1, cut, -8);
    CHECK(down_u.known_var(U).lo == -8);
    CHECK(down_v.known_var(V).lo == -8);
    auto prod = down_u * down_v;
    // the convolution at any fixed exponent is an infinite sum
    CHECK(!prod.known_at(EKey{}));
    CHECK(!prod.known_at(key({{U, -1}, {V, -1}})));
    CHECK(!known_on(prod, {{{U, -2, 0}, {V, -2, 0}}, 1}));
}

TEST_CASE("shifted single-variable inverse expands exactly through the ring") {
    const int cut = 5;
    LinForm f = LinForm::var(U) + LinForm::h_term(rat(2, 1));
    auto box = LaurentBox::expand_neg(f, 2, cut, 0);  // window unused here
    for (int j = 0; j < cut; ++j) {
        EKey k = key({{U, -(2 + j)}, {kVarH, j}});
        CHECK(box.known_at(k));
        CHECK(box.coeff(k) == binomial(-2, j) * pow_rat(rat(2, 1), j));
    }
    CHECK(box.h_tail());
    CHECK(box.supp_var(U).lo == -(2 + cut - 1));
    CHECK(box.supp_var(U).hi == -2);
    // exact: known everywhere in-ring
    CHECK(known_on(box, {{{U, -10, 2}, {V, -1, 1}}, cut}));
    // degree of each h layer matches the h-free layer shifted down
    for (int l = 0; l < cut; ++l) {
        CHECK(box.supp_tau_layer(l) == SlotRange::at(-(2 + l)));
    }
}

TEST_CASE("normalizing scalar box matches the recurrence coefficients") {
    const int cut = 5;
    for (int N : {2, 3}) {
        auto gb = LaurentBox::gbox(LinForm::var(U), N, cut, -6);
        const auto& g = norm_scalar_coeffs(N, cut - 1);
        CHECK(gb.coeff(EKey{}) == rat(1, 1));
        for (int m = 1; m < cut; ++m) {
            CHECK(gb.coeff(key({{U, -m}, {kVarH, m}})) == g[static_cast<size_t>(m)]);
            // off-diagonal exponents carry nothing
            CHECK(gb.coeff(key({{U, -m}, {kVarH, 0}})) == rat(0, 1));
        }
        // degree-zero homogeneity: h layer m sits at spectral degree -m
        for (int m = 0; m < cut; ++m) CHECK(gb.supp_tau_layer(m) == SlotRange::at(-m));
    }
}

TEST_CASE("two-variable scalar argument keeps per-layer degrees pinned") {
    const int cut = 4;
    LinForm f = LinForm::var(U).add(V, rat(-1, 1));
    auto e2 = LaurentBox::expand_neg(f, 2, cut, -7);
    for (const auto& [k, c] : e2.entries()) {
        (void)c;
        CHECK(k.tau() + k.h() == -2);
    }
    // h-free expansion: only the base layer carries mass
    CHECK(e2.supp_tau_layer(0) == SlotRange::at(-2));
    for (int l = 1; l < cut; ++l) CHECK(e2.supp_tau_layer(l).empty());

    LinForm fh = f + LinForm::h_term(rat(-1, 2));
    auto e2h = LaurentBox::expand_neg(fh, 2, cut, -7);
    for (const auto& [k, c] : e2h.entries()) {
        (void)c;
        CHECK(k.tau() + k.h() == -2);
    }
    CHECK(e2h.h_tail());
    for (int l = 0; l < cut; ++l) CHECK(e2h.supp_tau_layer(l) == SlotRange::at(-(2 + l)));
    auto gb = LaurentBox::gbox(fh, 2, cut, -7);
    for (const auto& [k, c] : gb.entries()) {
        (void)c;
        CHECK(k.tau() + k.h() == 0);
    }
}

TEST_CASE("narrow and wide windows agree wherever the narrow one commits") {
    const int cut = 3;
    LinForm umv = LinForm::var(U).add(V, rat(-1, 1));
    LinForm upv = LinForm::var(U).add(V, rat(1, 1));
    LinForm zmu = LinForm::var(Z).add(U, rat(-1, 1));
    LinForm zmv = LinForm::var(Z).add(V, rat(-1, 1));
    Poly cubic = Poly::linform(upv).pow(3);

    auto shapes = [&](int lo) {
        std::vector<LaurentBox> s;
        s.push_back(LaurentBox::expand_neg(umv, 1, cut, lo));
        s.push_back(LaurentBox::expand_neg(upv, 2, cut, lo));
        s.push_back(LaurentBox::expand_neg(umv + LinForm::h_term(rat(1, 2)), 1, cut, lo));
        s.push_back(LaurentBox::from_poly(cubic, cut));
        s.push_back(LaurentBox::expand_neg(zmu, 1, cut, lo));
        s.push_back(LaurentBox::expand_neg(zmv, 2, cut, lo));
        s.push_back(LaurentBox::gbox(umv + LinForm::h_term(rat(-1, 1)), 2, cut, lo));
        return s;
    };
    auto narrow = shapes(-6);
    auto wide = shapes(-12);
    for (size_t a = 0; a < narrow.size(); ++a) {
        for (size_t b = 0; b < narrow.size(); ++b) {
            auto pn = narrow[a] * narrow[b];
            auto pw = wide[a] * wide[b];
            check_agree(pn, pw, {U, V, Z}, -4, 2);
            auto sn = narrow[a] + narrow[b];
            auto sw = wide[a] + wide[b];
            check_agree(sn, sw, {U, V, Z}, -4, 2);
        }
    }
}

TEST_CASE("dividing by h drops the top layer honestly") {
    const int cut = 4;
    auto gb = LaurentBox::gbox(LinForm::var(U), 2, cut, -6);
    auto tail = gb - LaurentBox(rat(1, 1), cut);
    auto dropped = tail.div_h(1);
    const auto& g = norm_scalar_coeffs(2, cut - 1);
    for (int m = 1; m < cut; ++m) {
        EKey k = key({{U, -m}, {kVarH, m - 1}});
        if (m - 1 <= cut - 2) {
            CHECK(dropped.known_at(k));
            CHECK(dropped.coeff(k) == g[static_cast<size_t>(m)]);
        }
    }
    CHECK(dropped.known_var(kVarH).hi == cut - 2);
    CHECK(!dropped.known_at(key({{U, -cut}, {kVarH, cut - 1}})));

    // polynomial case: saturation recovers the full ring, since the value
    // provably has no mass beyond its top stored layer
    auto p = LaurentBox::from_poly(
        Poly::variable(kVarH) * Poly::linform(LinForm::var(U) + LinForm::var(V)), cut);
    auto q = p.div_h(1);
    CHECK(q.known_var(kVarH) == SlotRange{0, cut - 1});
    CHECK(q.coeff(key({{U, 1}})) == rat(1, 1));
    CHECK(q.coeff(key({{V, 1}})) == rat(1, 1));
    CHECK_THROWS_AS(q.div_h(1), std::logic_error);
}

TEST_CASE("clamping outside the support costs nothing") {
    const int cut = 3;
    auto box = LaurentBox::from_poly(Poly::linform(LinForm::var(U)).pow(2), cut);
    auto before = box.known_var(U);
    CHECK(before.full());
    box.clamp_var(U, -40, 40);  // strictly wider than the support
    CHECK(box.known_var(U).full());
    CHECK(box.coeff(key({{U, 2}})) == rat(1, 1));

    // clamping into the support genuinely forgets
    box.clamp_var(U, 0, 1);
    CHECK(!box.known_at(key({{U, 2}})));
    CHECK(box.entries().empty());
}

TEST_CASE("sums meet their known windows") {
    const int cut = 3;
    auto inv = LaurentBox::expand_neg(LinForm::var(U).add(V, rat(-1, 1)), 1, cut, -5);
    auto pol = LaurentBox::from_poly(Poly::linform(LinForm::var(U)).pow(2), cut);
    auto s = inv + pol;
    CHECK(s.known_var(U).lo == -5);
    CHECK(s.coeff(key({{U, 2}})) == rat(1, 1));
    CHECK(s.coeff(key({{U, -3}, {V, 2}})) == rat(1, 1));
    CHECK(!s.known_at(key({{U, -6}, {V, 5}})));
    auto diff = s - inv - pol;
    CHECK(!worst_on(diff, {{{U, -5, 2}, {V, 0, 5}}, cut}));
}

TEST_CASE("extracting an exponent shifts the degree bookkeeping") {
    const int cut = 3;
    auto inv = LaurentBox::expand_neg(LinForm::var(U).add(V, rat(-1, 1)), 1, cut, -5);
    auto at2 = inv.extract_var(V, 2);
    CHECK(at2.coeff(key({{U, -3}})) == rat(1, 1));
    CHECK(at2.coeff_or_zero(key({{U, -2}})) == rat(0, 1));
    CHECK(at2.supp_tau_layer(0) == SlotRange::at(-3));
    CHECK(at2.known_var(V).full());
    CHECK(at2.supp_var(V) == SlotRange::at(0));

    auto gb = LaurentBox::gbox(LinForm::var(U), 2, cut, -6);
    auto layer2 = gb.extract_h(2);
    const auto& g = norm_scalar_coeffs(2, cut - 1);
    CHECK(layer2.coeff(key({{U, -2}})) == g[2]);
    CHECK(layer2.entries().size() == 1);
    CHECK(layer2.supp_tau_layer(0) == SlotRange::at(-2));
    CHECK(!layer2.h_tail());
    // an h-layer extraction is h-free: the whole ring direction is known
    CHECK(layer2.known_var(kVarH) == SlotRange{0, cut - 1});
}

TEST_CASE("monomial shifts move windows and keep the ring floor") {
    const int cut = 3;
    auto inv = LaurentBox::expand_neg(LinForm::var(U).add(V, rat(-1, 1)), 1, cut, -5);
    auto shifted = inv.times_monomial(rat(3, 1), key({{U, 2}, {kVarH, 1}}));
    CHECK(shifted.coeff(key({{U, 1}, {kVarH, 1}})) == rat(3, 1));
    CHECK(shifted.known_var(U).lo == -3);
    CHECK(shifted.supp_tau_layer(1) == SlotRange::at(1));
    CHECK(shifted.supp_tau_layer(0).empty());
    CHECK(shifted.known_tau_layer(0).full());
    // pushing everything past the cut leaves a structural zero with a tail
    auto gone = inv.times_monomial(rat(1, 1), key({{kVarH, cut}}));
    CHECK(gone.structural_zero());
    CHECK(gone.h_tail());
}

TEST_CASE("self-cancellation is structural") {
    const int cut = 3;
    auto gb = LaurentBox::gbox(LinForm::var(U).add(V, rat(-1, 1)), 3, cut, -6);
    auto z = gb - gb;
    CHECK(z.entries().empty());
    CHECK(known_on(z, {{{U, -5, 0}, {V, 0, 5}}, cut}));
    CHECK(!worst_on(z, {{{U, -5, 0}, {V, 0, 5}}, cut}));
}
