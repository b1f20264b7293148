#pragma once

#include <chrono>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "yv/engine.hpp"
#include "yv/suites.hpp"

namespace yv {
namespace impl {

using Clock = std::chrono::steady_clock;

// Merged verdict over any number of checked instances. The first offender
// is kept; later ones only flip flags.
struct Outcome {
    bool known = true;
    bool clean = true;
    std::string residual;

    void absorb(const ZeroCheck& zc, const std::string& where);
    void fail(const std::string& what);
    void note_unknown(const std::string& where);
};

std::string describe(const ZeroCheck& zc, const std::string& where);

// Window over the given spectral variables at the spec bounds.
CheckWindow spec_window(const SuiteSpec& spec, std::initializer_list<int> vars, int h_order);

// Identity matrix on `legs` tensor legs carrying `s` on the diagonal.
StateOp diag_op(int legs, int dim, const State& s);

// Canonical creation words: every letter depth in 1..max_depth, matrix
// indices below N, word already in normal form. Includes the empty word.
std::vector<Word> word_basis(int N, int max_len, int max_depth, int cut);

// Engine parameters sized so the knowledge cap per spectral variable
// clears the top of the check window: rmax = cut + nv*(hi+1).
EngineParams sized_params(const SuiteSpec& spec, int cut, int nv, int extra_hi = 0);

// Runs fn(0..n-1) on a small pool; fn must confine its engine to the
// calling thread. Exceptions surface after the pool drains.
void parallel_run(int jobs, int n, const std::function<void(int)>& fn);

std::string fmt_window(const SuiteSpec& spec);
std::string fmt_partition(const std::vector<int>& nu);

// Assembles the result: status from the outcome flags, elapsed from t0.
SuiteResult finish(const SuiteSpec& spec, const std::string& name,
                   std::vector<std::pair<std::string, std::string>> params, const Outcome& out,
                   std::string precision, Clock::time_point t0);

// Common parameter echoes.
std::vector<std::pair<std::string, std::string>> base_params(const SuiteSpec& spec);

// Suite bodies, one per registry entry.
SuiteResult suite_ybe(const SuiteSpec&);
SuiteResult suite_unitarity(const SuiteSpec&);
SuiteResult suite_crossing(const SuiteSpec&);
SuiteResult suite_gseries(const SuiteSpec&);
SuiteResult suite_rtt_series(const SuiteSpec&);
SuiteResult suite_srel(const SuiteSpec&);
SuiteResult suite_usflg(const SuiteSpec&);
SuiteResult suite_rsrs(const SuiteSpec&);
SuiteResult suite_rsrs_multi(const SuiteSpec&);
SuiteResult suite_shuffle(const SuiteSpec&);
SuiteResult suite_fusion(const SuiteSpec&);
SuiteResult suite_welldef(const SuiteSpec&);
SuiteResult suite_quasi_assoc(const SuiteSpec&);
SuiteResult suite_quantum_current(const SuiteSpec&);
SuiteResult suite_centrality_critical(const SuiteSpec&);
SuiteResult suite_lemma31(const SuiteSpec&);
SuiteResult suite_invariants(const SuiteSpec&);
SuiteResult suite_commute_invariants(const SuiteSpec&);
SuiteResult suite_center_commute(const SuiteSpec&);
SuiteResult suite_invariant_generation(const SuiteSpec&);
SuiteResult suite_sdet_identity(const SuiteSpec&);
SuiteResult suite_gamma_factorization(const SuiteSpec&);
SuiteResult suite_classical_limit(const SuiteSpec&);
SuiteResult suite_rewrite_confluence(const SuiteSpec&);

// Shared validation.
void require(bool ok, const std::string& what);
Rational critical_level(int N);  // -N/2
// Level for suites that only make sense at (non)critical level.
Rational pick_level(const SuiteSpec& spec, bool critical);

// Word describing a letter for residual messages.
std::string word_label(const Word& w);

// Entry-wise rescalings of a state-valued operator.
StateOp scale_rat(const StateOp& A, const Rational& c);
StateOp scale_box(const StateOp& A, const LaurentBox& b);

// Constant rational matrix lifted to state-valued entries.
StateOp lift_const(const TensorOp<RatFunc>& m, int cut);

// Multiplicative inverse of a box of the shape c0 (1 + O(h)), c0 a nonzero
// rational; throws when the leading part is not of that shape.
LaurentBox box_inverse(const LaurentBox& b, int cut);

// S+(arg) S(arg + (c/2) h)^{-1} applied to one leg of a two-leg operator.
StateOp apply_vertex(const Engine& eng, const StateOp& A, int leg, const LinForm& arg);

}  // namespace impl
}  // namespace yv
