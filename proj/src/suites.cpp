#include "yv/suites.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "suites_impl.hpp"

namespace yv {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "ybe",
        "unitarity",
        "crossing",
        "g-series",
        "rtt-series",
        "srel",
        "usflg",
        "rsrs",
        "rsrs-multi",
        "shuffle",
        "fusion",
        "welldef",
        "quasi-assoc",
        "quantum-current",
        "centrality-critical",
        "lemma31",
        "invariants",
        "commute-invariants",
        "center-commute",
        "invariant-generation",
        "sdet-identity",
        "gamma-factorization",
        "classical-limit",
        "rewrite-confluence",
    };
    return names;
}

bool known_suite(const std::string& name) {
    for (const auto& n : suite_names())
        if (n == name) return true;
    return false;
}

SuiteResult run_suite(const SuiteSpec& spec) {
    using Runner = SuiteResult (*)(const SuiteSpec&);
    static const std::map<std::string, Runner> table = {
        {"ybe", impl::suite_ybe},
        {"unitarity", impl::suite_unitarity},
        {"crossing", impl::suite_crossing},
        {"g-series", impl::suite_gseries},
        {"rtt-series", impl::suite_rtt_series},
        {"srel", impl::suite_srel},
        {"usflg", impl::suite_usflg},
        {"rsrs", impl::suite_rsrs},
        {"rsrs-multi", impl::suite_rsrs_multi},
        {"shuffle", impl::suite_shuffle},
        {"fusion", impl::suite_fusion},
        {"welldef", impl::suite_welldef},
        {"quasi-assoc", impl::suite_quasi_assoc},
        {"quantum-current", impl::suite_quantum_current},
        {"centrality-critical", impl::suite_centrality_critical},
        {"lemma31", impl::suite_lemma31},
        {"invariants", impl::suite_invariants},
        {"commute-invariants", impl::suite_commute_invariants},
        {"center-commute", impl::suite_center_commute},
        {"invariant-generation", impl::suite_invariant_generation},
        {"sdet-identity", impl::suite_sdet_identity},
        {"gamma-factorization", impl::suite_gamma_factorization},
        {"classical-limit", impl::suite_classical_limit},
        {"rewrite-confluence", impl::suite_rewrite_confluence},
    };
    auto it = table.find(spec.suite);
    if (it == table.end()) throw std::invalid_argument("unknown suite: " + spec.suite);
    impl::require(spec.N >= 2, "N must be at least 2");
    impl::require(spec.h_order >= 1, "h-order must be positive");
    impl::require(spec.degree >= 0, "degree must be nonnegative");
    impl::require(spec.modes >= 1, "modes must be positive");
    impl::require(spec.win_lo <= spec.win_hi, "window must be ordered");
    impl::require(spec.r_max >= 0, "r-max must be nonnegative");
    impl::require(spec.twist.N == spec.N, "twist matrix size must match N");
    return it->second(spec);
}

std::vector<SuiteResult> run_all(const SuiteSpec& base, int jobs) {
    const auto& names = suite_names();
    std::vector<SuiteResult> out(names.size());
    impl::parallel_run(jobs, static_cast<int>(names.size()), [&](int i) {
        SuiteSpec s = base;
        s.suite = names[static_cast<size_t>(i)];
        s.jobs = 1;
        out[static_cast<size_t>(i)] = run_suite(s);
    });
    return out;
}

namespace impl {

void Outcome::absorb(const ZeroCheck& zc, const std::string& where) {
    if (!zc.known) note_unknown(where);
    if (!zc.clean && clean) {
        clean = false;
        residual = describe(zc, where);
    }
}

void Outcome::fail(const std::string& what) {
    if (clean) {
        clean = false;
        residual = what;
    }
}

void Outcome::note_unknown(const std::string& where) {
    if (known) {
        known = false;
        if (residual.empty()) residual = "not certified: " + where;
    }
}

std::string describe(const ZeroCheck& zc, const std::string& where) {
    std::ostringstream out;
    out << "coefficient " << to_string(zc.worst) << " at " << zc.worst_key.str();
    if (!zc.worst_word.empty()) out << " on word " << word_str(zc.worst_word);
    if (!where.empty()) out << " (" << where << ")";
    return out.str();
}

CheckWindow spec_window(const SuiteSpec& spec, std::initializer_list<int> vars, int h_order) {
    CheckWindow win;
    for (int v : vars) win.vars.push_back({v, spec.win_lo, spec.win_hi});
    win.h_order = h_order;
    return win;
}

StateOp diag_op(int legs, int dim, const State& s) {
    StateOp op(legs, dim);
    uint32_t total = 1;
    for (int k = 0; k < legs; ++k) total *= static_cast<uint32_t>(dim);
    for (uint32_t i = 0; i < total; ++i) op.set_entry(i, i, s);
    return op;
}

std::vector<Word> word_basis(int N, int max_len, int max_depth, int cut) {
    std::vector<Letter> letters;
    for (int d = 1; d <= max_depth; ++d)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) letters.push_back(letter_make(d, i, j));

    const LaurentBox unit(Rational(1), cut);
    std::vector<Word> out;
    out.push_back({});
    std::vector<Word> frontier = {{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (Letter g : letters) {
                Word cand = w;
                cand.push_back(g);
                State nf = normal_order(cand, unit);
                if ((nf - State::term(cand, unit)).exact_zero()) next.push_back(cand);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

EngineParams sized_params(const SuiteSpec& spec, int cut, int nv, int extra_hi) {
    EngineParams p;
    p.N = spec.N;
    p.level = spec.level;
    p.twist = spec.twist;
    p.cut = cut;
    const int top = spec.win_hi + extra_hi + 1;
    p.rmax = cut + nv * (top > 0 ? top : 1);
    p.win_lo = std::min(-24, spec.win_lo - 2 * cut - 2 * extra_hi);
    return p;
}

void parallel_run(int jobs, int n, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int width = jobs < n ? jobs : n;
    for (int k = 0; k < width; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string fmt_window(const SuiteSpec& spec) {
    return "[" + std::to_string(spec.win_lo) + "," + std::to_string(spec.win_hi) + "]";
}

std::string fmt_partition(const std::vector<int>& nu) {
    std::string s = "(";
    for (size_t i = 0; i < nu.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(nu[i]);
    }
    return s + ")";
}

SuiteResult finish(const SuiteSpec& spec, const std::string& name,
                   std::vector<std::pair<std::string, std::string>> params, const Outcome& out,
                   std::string precision, Clock::time_point t0) {
    SuiteResult r;
    r.suite = name;
    r.params = std::move(params);
    if (!out.known)
        r.status = "inconclusive-truncation";
    else if (!out.clean)
        r.status = "failed";
    else
        r.status = "verified";
    r.precision = std::move(precision);
    r.residual = out.clean && out.known ? "" : out.residual;
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    (void)spec;
    return r;
}

std::vector<std::pair<std::string, std::string>> base_params(const SuiteSpec& spec) {
    return {{"N", std::to_string(spec.N)}, {"twist", spec.twist_name}};
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

Rational critical_level(int N) { return Rational(-N, 2); }

Rational pick_level(const SuiteSpec& spec, bool critical) {
    if (!spec.level_set) return critical ? critical_level(spec.N) : Rational(0);
    if (critical)
        require(spec.level == critical_level(spec.N), "suite needs the critical level -N/2");
    else
        require(spec.level != critical_level(spec.N), "suite needs a noncritical level");
    return spec.level;
}

std::string word_label(const Word& w) { return w.empty() ? "vacuum" : word_str(w); }

StateOp scale_rat(const StateOp& A, const Rational& c) {
    StateOp out(A.legs(), A.dim());
    for (const auto& [pos, val] : A.entries()) out.set_entry(pos.first, pos.second, val.scaled(c));
    return out;
}

StateOp scale_box(const StateOp& A, const LaurentBox& b) {
    StateOp out(A.legs(), A.dim());
    for (const auto& [pos, val] : A.entries())
        out.set_entry(pos.first, pos.second, val.scaled_box(b));
    return out;
}

StateOp lift_const(const TensorOp<RatFunc>& m, int cut) {
    StateOp out(m.legs(), m.dim());
    for (const auto& [pos, val] : m.entries())
        out.set_entry(pos.first, pos.second,
                      State::term({}, LaurentBox(val.eval({}), cut)));
    return out;
}

LaurentBox box_inverse(const LaurentBox& b, int cut) {
    const Rational c0 = b.coeff_or_zero(EKey::of({}));
    if (c0 == 0) throw std::invalid_argument("box_inverse: vanishing constant part");
    LaurentBox rest = b.scaled(Rational(1) / c0) - LaurentBox(Rational(1), cut);
    for (const auto& [k, v] : rest.entries())
        if (k.h() == 0 && v != 0)
            throw std::invalid_argument("box_inverse: constant part is not a scalar");
    LaurentBox acc(Rational(1), cut);
    LaurentBox power(Rational(1), cut);
    for (int k = 1; k < cut; ++k) {
        power = power * (-rest);
        acc += power;
    }
    return acc.scaled(Rational(1) / c0);
}

StateOp apply_vertex(const Engine& eng, const StateOp& A, int leg, const LinForm& arg) {
    if (leg != 0) {
        // Conjugating by the pair swap moves the action onto leg zero.
        StateOp p = Engine::lift(eng.perm2());
        return p * apply_vertex(eng, p * A * p, 0, arg) * p;
    }
    LinForm shifted = arg;
    shifted.add(kVarH, Rational(eng.params().level / 2));
    StateOp inv = eng.refl_multi_inverse(A, shifted, {LinForm()});
    return eng.act_refl_plus(inv, 0, arg);
}

}  // namespace impl
}  // namespace yv
