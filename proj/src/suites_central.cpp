#include <algorithm>
#include <map>
#include <numeric>

#include "suites_impl.hpp"
#include "yv/variables.hpp"
#include "yv/young.hpp"

namespace yv {
namespace impl {

namespace {

const int kZ = var_id("z");
const int kW = var_id("w");
const int kV = var_id("v");

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

// Column determinant of the generating matrix, top row argument x and one
// extra -h shift per column, rightmost factor applied first.
State qdet_apply(const Engine& eng, bool plus, const LinForm& x, const State& w) {
    const int N = eng.dim();
    std::vector<int> perm(static_cast<size_t>(N));
    std::iota(perm.begin(), perm.end(), 0);
    State acc;
    do {
        State cur = w;
        for (int col = N - 1; col >= 0; --col) {
            LinForm arg = x;
            arg.add(kVarH, Rational(-col));
            cur = plus ? eng.cre_entry(perm[static_cast<size_t>(col)], col, arg, cur)
                       : eng.ann_entry(perm[static_cast<size_t>(col)], col, arg, cur);
        }
        acc += cur.scaled(Rational(perm_sign(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// Geometric-series inverse: the determinant is 1 + O(h) on every state.
State qdet_minus_inv(const Engine& eng, const LinForm& x, const State& w, int cut) {
    State t = w;
    State acc = w;
    for (int k = 1; k < cut; ++k) {
        t = t - qdet_apply(eng, false, x, t);
        if (t.exact_zero()) break;
        acc += t;
    }
    return acc;
}

// Movement bound for pushing a word-blind claim through a traced reflection
// product: h degree never drops, the h^0 layer is a scalar, and spectral
// exponents may move anywhere the ring allows.
LaurentBox a_move_budget(int cut) {
    LaurentBox m = claim_seed(cut);
    if (cut > 1) {
        m.widen_supp_var(kVarH, SlotRange{1, cut - 1}, SlotRange::all());
        for (int v = 1; v < kMaxSeriesVars; ++v)
            m.widen_supp_var(v, SlotRange::all(), SlotRange::all());
        for (int layer = 1; layer < cut; ++layer)
            m.widen_supp_tau_layer(layer, SlotRange::all(), SlotRange::all());
    }
    return m;
}

// One traced-product operator tr E S+(z+u_1)...S(z+u_1+ch/2)^{-1}... with a
// per-word result cache; the trace makes results combine linearly.
struct TracedProduct {
    const Engine* eng = nullptr;
    int legs = 0;
    StateOp projector = StateOp(1, 1);
    Rational proj_trace;
    std::vector<LinForm> fam;
    LinForm zv, zshift;
    LaurentBox budget;
    std::map<Word, State> cache;
};

TracedProduct make_traced(const Engine& eng, const TensorOp<RatFunc>& projector,
                          const std::vector<int>& contents, int zvar, int cut) {
    TracedProduct t;
    t.eng = &eng;
    t.legs = projector.legs();
    t.projector = lift_const(projector, cut);
    t.proj_trace = projector.full_trace().eval({});
    for (int c : contents) {
        LinForm f;
        if (c != 0) f.add(kVarH, Rational(c));
        t.fam.push_back(f);
    }
    t.zv = LinForm::var(zvar);
    t.zshift = t.zv;
    t.zshift.add(kVarH, Rational(eng.params().level / 2));
    t.budget = a_move_budget(cut);
    return t;
}

const State& traced_word(TracedProduct& t, const Word& w, int cut) {
    auto it = t.cache.find(w);
    if (it != t.cache.end()) return it->second;
    StateOp base = diag_op(t.legs, t.eng->dim(), State::term(w, LaurentBox(Rational(1), cut)));
    StateOp inv = t.eng->refl_multi_inverse(base, t.zshift, t.fam);
    StateOp full = t.eng->refl_multi(inv, t.zv, t.fam, true);
    return t.cache.emplace(w, (t.projector * full).full_trace()).first->second;
}

State apply_traced(TracedProduct& t, const State& s, int cut) {
    State out;
    for (const auto& [w, box] : s.terms()) out += traced_word(t, w, cut).scaled_box(box);
    if (!RingOps<LaurentBox>::is_zero(s.slack()))
        out.smear(mask_product(s.slack(), t.budget));
    return out;
}

// Shape selection: an explicit filling wins, then an explicit partition,
// then the defaults that fit into N rows.
std::vector<Tableau> chosen_tableaux(const SuiteSpec& spec, const std::vector<Partition>& defaults,
                                     bool all_fillings) {
    std::vector<Tableau> out;
    if (!spec.tableau.empty()) {
        Tableau u = Tableau::from_rows(spec.tableau);
        require(static_cast<int>(u.shape.size()) <= spec.N, "tableau has more rows than N");
        out.push_back(u);
        return out;
    }
    if (!spec.nu.empty()) {
        require(is_partition(spec.nu), "nu is not a partition");
        require(static_cast<int>(spec.nu.size()) <= spec.N, "partition has more rows than N");
        if (all_fillings)
            return standard_tableaux(spec.nu);
        out.push_back(Tableau::row_major(spec.nu));
        return out;
    }
    for (const auto& shape : defaults) {
        if (static_cast<int>(shape.size()) > spec.N) continue;
        if (all_fillings) {
            auto st = standard_tableaux(shape);
            out.insert(out.end(), st.begin(), st.end());
        } else {
            out.push_back(Tableau::row_major(shape));
        }
    }
    require(!out.empty(), "no admissible shape for this N");
    return out;
}

std::string shapes_label(const std::vector<Tableau>& us) {
    std::string s;
    for (const auto& u : us) {
        if (!s.empty()) s += " ";
        s += fmt_partition(u.shape);
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> central_params(const SuiteSpec& spec,
                                                                const Rational& level,
                                                                const std::string& shapes) {
    auto p = base_params(spec);
    p.push_back({"level", to_string(level)});
    if (!shapes.empty()) p.push_back({"shapes", shapes});
    p.push_back({"h_order", std::to_string(spec.h_order)});
    p.push_back({"window", fmt_window(spec)});
    return p;
}

std::string central_precision(const SuiteSpec& spec, int h_order, int bdeg) {
    return "holds mod h^" + std::to_string(h_order) + " in window " + fmt_window(spec) +
           " on basis degree <= " + std::to_string(bdeg);
}

State mode_on(const Engine& eng, bool raising, int r, int i, int j, const State& s) {
    return raising ? eng.refl_mode_pos(r, i, j, s) : eng.refl_mode_neg(r, i, j, s);
}

// Bracketed reflection product: reflection factor on each leg in turn, with
// the transposed normalized matrices dressing the later legs. `reversed`
// applies the same factors in the opposite order. Rightmost factor first.
StateOp bracket_apply(const Engine& eng, const StateOp& A, const std::vector<LinForm>& args,
                      bool plus, bool reversed) {
    const int n = static_cast<int>(args.size());
    const Rational c = eng.params().level;
    struct Factor {
        int i, j;  // j < 0 marks a reflection factor on leg i
    };
    std::vector<Factor> seq;
    for (int i = 0; i < n; ++i) {
        seq.push_back({i, -1});
        for (int j = i + 1; j < n; ++j) seq.push_back({i, j});
    }
    if (reversed) std::reverse(seq.begin(), seq.end());
    StateOp cur = A;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        if (it->j < 0) {
            cur = plus ? eng.act_refl_plus(cur, it->i, args[static_cast<size_t>(it->i)])
                       : eng.act_refl(cur, it->i, args[static_cast<size_t>(it->i)]);
        } else {
            LinForm arg = -(args[static_cast<size_t>(it->i)] + args[static_cast<size_t>(it->j)]);
            if (!plus) arg.add(kVarH, -c);
            BoxOp dress = eng.rbar(arg).transpose_leg(0).embed(n, {it->i, it->j});
            cur = Engine::lift(dress) * cur;
        }
    }
    return cur;
}

// Inverse of the annihilation-kind bracket: its h^0 part is the fixed
// matrix G on every leg, the rest is solved geometrically.
StateOp bracket_inverse(const Engine& eng, const StateOp& A, const std::vector<LinForm>& args,
                        bool reversed, int cut) {
    const int n = static_cast<int>(args.size());
    BoxOp ginv = eng.gmat_inv(n, 0);
    for (int leg = 1; leg < n; ++leg) ginv = ginv * eng.gmat_inv(n, leg);
    StateOp lead = Engine::lift(ginv);
    StateOp t = lead * A;
    StateOp acc = t;
    for (int k = 1; k < cut; ++k) {
        t = t - lead * bracket_apply(eng, t, args, false, reversed);
        acc = acc + t;
    }
    return acc;
}

}  // namespace

SuiteResult suite_centrality_critical(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, true);
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 2 * spec.degree + 3);
    EngineParams ep = sized_params(spec, cut, 1);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);
    const LaurentBox unit(Rational(1), cut);

    auto us = chosen_tableaux(spec, {{1}, {2}, {1, 1}}, false);
    auto basis = word_basis(spec.N, spec.degree, spec.modes, cut);
    auto win = spec_window(spec, {kZ}, K);

    Outcome out;
    for (const auto& u : us) {
        auto t = make_traced(eng, young_idempotent(u, spec.N), content_list(u), kZ, cut);
        for (const auto& bw : basis) {
            if (!out.clean) break;
            const State base = State::term(bw, unit);
            const State abase = apply_traced(t, base, cut);
            for (int r = 1; r <= spec.modes && out.clean; ++r)
                for (int i = 0; i < spec.N && out.clean; ++i)
                    for (int j = 0; j < spec.N && out.clean; ++j)
                        for (bool raising : {false, true}) {
                            State lhs = apply_traced(t, mode_on(eng, raising, r, i, j, base), cut);
                            State rhs = mode_on(eng, raising, r, i, j, abase);
                            out.absorb(check_zero(lhs - rhs, win),
                                       "shape " + fmt_partition(u.shape) + " word " +
                                           word_label(bw) + (raising ? " raising" : " lowering") +
                                           " mode " + std::to_string(r) + " entry " +
                                           std::to_string(i) + "," + std::to_string(j));
                            if (!out.clean) break;
                        }
        }
    }

    auto params = central_params(spec, c, shapes_label(us));
    params.push_back({"degree", std::to_string(spec.degree)});
    params.push_back({"modes", std::to_string(spec.modes)});
    return finish(spec, "centrality-critical", std::move(params), out,
                  "commutators with generator modes vanish " +
                      central_precision(spec, K, spec.degree),
                  t0);
}

SuiteResult suite_lemma31(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, true);
    const int K = spec.h_order;
    Outcome out;

    // Exact half: the projector passes through the mixed-leg chains with the
    // factor order flipped. Scalar normalizations cancel pairwise, so the
    // plain rational matrix decides these identities.
    auto exact_us = chosen_tableaux(spec, {{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}}, true);
    for (const auto& u : exact_us)
        require(u.size() <= 3, "chain identities are checked for up to three boxes");
    const Poly pu0 = Poly::variable(var_id("u0"));
    const Poly pu = Poly::variable(var_id("u"));
    const Poly ph = Poly::variable(kVarH);
    for (const auto& u : exact_us) {
        const int n = u.size();
        auto contents = content_list(u);
        std::vector<int> block(static_cast<size_t>(n));
        std::iota(block.begin(), block.end(), 1);
        auto proj = young_idempotent(u, spec.N).embed(n + 1, block);

        auto chain = [&](bool ascending, bool transpose, bool inverted, bool negate) {
            TensorOp<RatFunc> acc = proj;  // placeholder, overwritten by the first factor
            bool first = true;
            for (int step = 0; step < n; ++step) {
                int k = ascending ? step + 1 : n - step;
                Poly shift = Poly(static_cast<long>(contents[static_cast<size_t>(k - 1)])) * ph;
                Poly arg = transpose ? pu0 + pu + shift : pu0 - pu - shift;
                if (negate) arg = -arg;
                auto f = yang_r(spec.N, arg);
                if (transpose) f = f.transpose_leg(0);
                if (inverted) f = invert_exact(f);
                f = f.embed(n + 1, {0, k});
                acc = first ? f : acc * f;
                first = false;
            }
            return acc;
        };
        auto check = [&](const TensorOp<RatFunc>& lhs, const TensorOp<RatFunc>& rhs,
                         const std::string& what) {
            if (!(lhs - rhs).is_zero_known())
                out.fail("tableau " + u.str() + " " + what);
        };
        check(proj * chain(false, false, false, false), chain(true, false, false, false) * proj,
              "difference chain");
        check(proj * chain(true, false, true, false), chain(false, false, true, false) * proj,
              "difference chain inverse");
        check(proj * chain(false, true, false, false), chain(true, true, false, false) * proj,
              "sum chain");
        check(proj * chain(true, true, false, true), chain(false, true, false, true) * proj,
              "sum chain negated");
    }

    // Series half: the bracketed reflection products in both factor orders
    // agree after projecting, checked on low-degree states.
    auto series_us = chosen_tableaux(spec, {{1}, {2}, {1, 1}, {2, 1}}, false);
    const int bdeg = std::min(spec.degree, 1);
    const int cut = std::min(LaurentBox::kMaxCut, K + 2 * bdeg + 4);
    EngineParams ep = sized_params(spec, cut, 1);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);
    const LaurentBox unit(Rational(1), cut);
    auto basis = word_basis(spec.N, bdeg, std::min(spec.modes, 2), cut);
    auto win = spec_window(spec, {kZ}, K);

    for (const auto& u : series_us) {
        if (!out.clean) break;
        const int n = u.size();
        auto contents = content_list(u);
        auto proj = lift_const(young_idempotent(u, spec.N), cut);
        const Rational quarter_shift = Rational(-spec.N) / 4;
        std::vector<LinForm> plus_args, minus_args;
        for (int ck : contents) {
            LinForm a = LinForm::var(kZ);
            if (ck != 0) a.add(kVarH, Rational(ck));
            plus_args.push_back(a);
            a.add(kVarH, quarter_shift);
            minus_args.push_back(a);
        }
        for (const auto& bw : basis) {
            if (!out.clean) break;
            const StateOp base = diag_op(n, spec.N, State::term(bw, unit));
            out.absorb(check_equal(proj * bracket_apply(eng, base, plus_args, true, false),
                                   bracket_apply(eng, proj * base, plus_args, true, true), win),
                       "tableau " + u.str() + " word " + word_label(bw) + " bracket");
            if (!out.clean) break;
            out.absorb(
                check_equal(proj * bracket_inverse(eng, base, minus_args, false, cut),
                            bracket_inverse(eng, proj * base, minus_args, true, cut), win),
                "tableau " + u.str() + " word " + word_label(bw) + " bracket inverse");
        }
    }

    auto params = central_params(spec, c, shapes_label(series_us));
    params.push_back({"degree", std::to_string(bdeg)});
    return finish(spec, "lemma31", std::move(params), out,
                  "chain identities exact; bracket identities " + central_precision(spec, K, bdeg),
                  t0);
}

SuiteResult suite_invariants(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, true);
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 5);
    EngineParams ep = sized_params(spec, cut, 2);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);

    auto us = chosen_tableaux(spec, {{1}, {2}, {1, 1}}, false);
    const LinForm vf = LinForm::var(kV);
    const StateOp gfix = Engine::lift(eng.gmat(1, 0));
    Outcome out;

    // Vacuum baseline: one reflection factor on the vacuum is the fixed matrix.
    out.absorb(check_equal(eng.act_refl(diag_op(1, spec.N, State::one()), 0, vf),
                           gfix * diag_op(1, spec.N, State::one()),
                           spec_window(spec, {kV}, K)),
               "vacuum baseline");

    for (const auto& u : us) {
        if (!out.clean) break;
        auto t = make_traced(eng, young_idempotent(u, spec.N), content_list(u), kZ, cut);
        const State y = apply_traced(t, State::one(), cut);
        out.absorb(check_zero(y - State::one().scaled(t.proj_trace),
                              spec_window(spec, {kZ}, 1)),
                   "shape " + fmt_partition(u.shape) + " leading term");
        if (!out.clean) break;
        out.absorb(check_equal(eng.act_refl(diag_op(1, spec.N, y), 0, vf),
                               gfix * diag_op(1, spec.N, y), spec_window(spec, {kZ, kV}, K)),
                   "shape " + fmt_partition(u.shape) + " invariance");
    }

    return finish(spec, "invariants", central_params(spec, c, shapes_label(us)), out,
                  "traced products of the vacuum are reflection invariants, " +
                      central_precision(spec, K, 0),
                  t0);
}

SuiteResult suite_commute_invariants(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, true);
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 4);
    EngineParams ep = sized_params(spec, cut, 2);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);

    std::vector<Partition> pair;
    if (!spec.nu.empty()) {
        require(is_partition(spec.nu), "nu is not a partition");
        require(static_cast<int>(spec.nu.size()) <= spec.N, "partition has more rows than N");
        pair = {spec.nu, spec.nu == Partition{1, 1} ? Partition{2} : Partition{1, 1}};
    } else {
        pair = {{2}, {1, 1}};
    }
    for (const auto& shape : pair)
        require(static_cast<int>(shape.size()) <= spec.N, "partition has more rows than N");

    Tableau u1 = Tableau::row_major(pair[0]);
    Tableau u2 = Tableau::row_major(pair[1]);
    auto ta = make_traced(eng, young_idempotent(u1, spec.N), content_list(u1), kZ, cut);
    auto tb = make_traced(eng, young_idempotent(u2, spec.N), content_list(u2), kW, cut);
    const State y1 = apply_traced(ta, State::one(), cut);
    const State y2 = apply_traced(tb, State::one(), cut);

    Outcome out;
    out.absorb(check_zero(y1 * y2 - y2 * y1, spec_window(spec, {kZ, kW}, K)),
               fmt_partition(pair[0]) + " against " + fmt_partition(pair[1]));

    return finish(spec, "commute-invariants",
                  central_params(spec, c, fmt_partition(pair[0]) + " " + fmt_partition(pair[1])),
                  out, "invariant families commute under the normal-ordered product, " +
                           central_precision(spec, K, 0),
                  t0);
}

SuiteResult suite_center_commute(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 4);
    const Rational crit = critical_level(spec.N);
    const bool do_crit = !spec.level_set || spec.level == crit;
    const bool do_noncrit = !spec.level_set || spec.level != crit;
    RingCutGuard guard(cut);
    const LaurentBox unit(Rational(1), cut);
    auto win = spec_window(spec, {kZ, kW}, K);
    Outcome out;

    std::vector<State> vecs = {State::one(), State::term({letter_make(1, 0, 0)}, unit)};

    if (do_crit) {
        EngineParams ep = sized_params(spec, cut, 2);
        ep.level = crit;
        Engine eng(ep);
        Tableau u1 = Tableau::row_major({1});
        Tableau u2 = Tableau::row_major({2});
        auto ta = make_traced(eng, young_idempotent(u1, spec.N), content_list(u1), kZ, cut);
        auto tb = make_traced(eng, young_idempotent(u2, spec.N), content_list(u2), kW, cut);
        for (const auto& w : vecs) {
            State lhs = apply_traced(ta, apply_traced(tb, w, cut), cut);
            State rhs = apply_traced(tb, apply_traced(ta, w, cut), cut);
            out.absorb(check_zero(lhs - rhs, win), "critical level on " + word_label(w.terms().begin()->first));
            if (!out.clean) break;
        }
    }

    if (do_noncrit && out.clean) {
        EngineParams ep = sized_params(spec, cut, 2);
        ep.level = spec.level_set ? spec.level : Rational(0);
        Engine eng(ep);
        Partition column(static_cast<size_t>(spec.N), 1);
        Tableau u = Tableau::row_major(column);
        auto ta = make_traced(eng, young_idempotent(u, spec.N), content_list(u), kZ, cut);
        auto tb = make_traced(eng, young_idempotent(u, spec.N), content_list(u), kW, cut);
        State lhs = apply_traced(ta, apply_traced(tb, State::one(), cut), cut);
        State rhs = apply_traced(tb, apply_traced(ta, State::one(), cut), cut);
        out.absorb(check_zero(lhs - rhs, win),
                   "determinant images at level " + to_string(ep.level));
    }

    auto params = base_params(spec);
    params.push_back({"h_order", std::to_string(K)});
    params.push_back({"window", fmt_window(spec)});
    return finish(spec, "center-commute", std::move(params), out,
                  "central images commute at distinct spectral variables, " +
                      central_precision(spec, K, 1),
                  t0);
}

SuiteResult suite_invariant_generation(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, true);
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 5);
    EngineParams ep = sized_params(spec, cut, 3);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);

    Tableau usrc = Tableau::row_major({2});
    auto tsrc = make_traced(eng, young_idempotent(usrc, spec.N), content_list(usrc), kW, cut);
    const State inner = apply_traced(tsrc, State::one(), cut);

    const LinForm vf = LinForm::var(kV);
    const StateOp gfix = Engine::lift(eng.gmat(1, 0));
    Outcome out;

    std::vector<Partition> ashapes = {{1}};
    Partition column(static_cast<size_t>(spec.N), 1);
    ashapes.push_back(column);
    for (const auto& shape : ashapes) {
        if (!out.clean) break;
        Tableau u = Tableau::row_major(shape);
        auto ta = make_traced(eng, young_idempotent(u, spec.N), content_list(u), kZ, cut);
        const State y = apply_traced(ta, inner, cut);
        out.absorb(check_equal(eng.act_refl(diag_op(1, spec.N, y), 0, vf),
                               gfix * diag_op(1, spec.N, y),
                               spec_window(spec, {kZ, kW, kV}, K)),
                   "acting shape " + fmt_partition(shape));
    }

    return finish(spec, "invariant-generation",
                  central_params(spec, c, shapes_label({Tableau::row_major(ashapes[0]),
                                                        Tableau::row_major(ashapes[1]), usrc})),
                  out, "central action maps invariants to invariants, " +
                           central_precision(spec, K, 0),
                  t0);
}

SuiteResult suite_sdet_identity(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, false);
    const int K = spec.h_order;
    const int cut = std::min(LaurentBox::kMaxCut, K + 5);
    EngineParams ep = sized_params(spec, cut, 1);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);
    const int N = spec.N;

    // Column-shape data: legs carry z, z-h, ..., z-(N-1)h.
    std::vector<int> contents(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) contents[static_cast<size_t>(k)] = -k;
    auto anti = antisymmetrizer(N, N);
    auto t = make_traced(eng, anti, contents, kZ, cut);

    Outcome out;
    const State lhs = apply_traced(t, State::one(), cut);

    const StateOp vac = diag_op(N, N, State::one());
    const State sp = (t.projector * eng.refl_multi(vac, t.zv, t.fam, true)).full_trace();
    const State sm = (t.projector * eng.refl_multi(vac, t.zshift, t.fam, false)).full_trace();

    // The annihilation-kind trace fixes the vacuum up to a scalar series.
    bool scalar = sm.terms().size() == 1 && sm.terms().begin()->first.empty() &&
                  RingOps<LaurentBox>::is_zero(sm.slack());
    if (!scalar) {
        out.fail("annihilation-kind trace did not reduce to a scalar on the vacuum");
    } else {
        const State rhs = sp.scaled_box(box_inverse(sm.coeff({}), cut));
        out.absorb(check_zero(lhs - rhs, spec_window(spec, {kZ}, K)), "factorized trace");
    }

    return finish(spec, "sdet-identity", central_params(spec, c, ""), out,
                  "traced product of the vacuum factors through the two determinant traces, " +
                      central_precision(spec, K, 0),
                  t0);
}

SuiteResult suite_gamma_factorization(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const Rational c = pick_level(spec, false);
    const int K = spec.h_order;
    const int N = spec.N;
    const int bdeg = std::min(spec.degree, 1);
    const int cut = std::min(LaurentBox::kMaxCut, K + 2 * bdeg + 4);
    EngineParams ep = sized_params(spec, cut, 1);
    ep.level = c;
    RingCutGuard guard(cut);
    Engine eng(ep);
    const LaurentBox unit(Rational(1), cut);
    const LinForm uf = LinForm::var(kZ);
    Outcome out;

    // Annihilation-kind determinant fixes the vacuum exactly.
    {
        CheckWindow full = spec_window(spec, {kZ}, cut);
        out.absorb(check_zero(qdet_apply(eng, false, uf, State::one()) - State::one(), full),
                   "vacuum determinant");
    }

    std::vector<int> contents(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) contents[static_cast<size_t>(k)] = -k;
    auto t = make_traced(eng, antisymmetrizer(N, N), contents, kZ, cut);

    // Argument list of the four determinant factors, rightmost first.
    LinForm a_plus_far = -uf;
    a_plus_far.add(kVarH, Rational(N - 1));
    LinForm a_minus_near = -uf;
    a_minus_near.add(kVarH, Rational(Rational(N - 1) - c / 2));
    LinForm a_minus_far = uf;
    a_minus_far.add(kVarH, Rational(3 * c / 2));

    auto factored = [&](const State& w) {
        State s = qdet_minus_inv(eng, a_minus_far, w, cut);
        s = qdet_minus_inv(eng, a_minus_near, s, cut);
        s = qdet_apply(eng, true, a_plus_far, s);
        return qdet_apply(eng, true, uf, s);
    };

    const State lhs0 = apply_traced(t, State::one(), cut);
    const State rhs0 = factored(State::one());
    const LaurentBox gamma = lhs0.coeff({}) * box_inverse(rhs0.coeff({}), cut);

    // The ratio starts at 1 and only involves nonpositive spectral powers.
    if (gamma.coeff_or_zero(EKey::of({})) != Rational(1)) {
        out.fail("ratio does not start at 1");
    }
    for (const auto& [key, val] : gamma.entries()) {
        if (!out.clean) break;
        if (key.h() == 0 && !(key == EKey::of({})) && val != 0)
            out.fail("ratio has a nonscalar leading term");
        else if (key.h() < K && key.at(kZ) > 0 && val != 0)
            out.fail("ratio has a positive spectral power at h^" + std::to_string(key.h()));
    }
    if (!gamma.known_var(kVarH).contains({0, K - 1}))
        out.note_unknown("ratio known window");

    if (out.clean) {
        auto win = spec_window(spec, {kZ}, K);
        out.absorb(check_zero(lhs0 - rhs0.scaled_box(gamma), win), "vacuum residual");
        if (out.clean && bdeg >= 1) {
            for (const auto& bw : word_basis(N, 1, std::min(spec.modes, 2), cut)) {
                if (bw.empty() || !out.clean) continue;
                const State w = State::term(bw, unit);
                out.absorb(check_zero(apply_traced(t, w, cut) - factored(w).scaled_box(gamma), win),
                           "residual on " + word_label(bw));
            }
        }
    }

    auto params = central_params(spec, c, "");
    params.push_back({"degree", std::to_string(bdeg)});
    return finish(spec, "gamma-factorization", std::move(params), out,
                  "traced product factors through determinants up to a scalar ratio, " +
                      central_precision(spec, K, bdeg),
                  t0);
}

}  // namespace impl
}  // namespace yv
