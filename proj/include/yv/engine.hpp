#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "yv/tensor.hpp"
#include "yv/twist.hpp"
#include "yv/variables.hpp"
#include "yv/wseries.hpp"

namespace yv {

// A creation letter: lowering mode of given depth with a matrix position.
// Packed so that words sort by (depth, row, col).
using Letter = uint32_t;

inline Letter letter_make(int depth, int row, int col) {
    if (depth < 1 || depth > 0xffff || row < 0 || row > 0xff || col < 0 || col > 0xff)
        throw std::domain_error("letter_make: out of range");
    return (static_cast<uint32_t>(depth) << 16) | (static_cast<uint32_t>(row) << 8) |
           static_cast<uint32_t>(col);
}
inline int letter_depth(Letter g) { return static_cast<int>(g >> 16); }
inline int letter_row(Letter g) { return static_cast<int>((g >> 8) & 0xff); }
inline int letter_col(Letter g) { return static_cast<int>(g & 0xff); }
std::string letter_str(Letter g);

// Product of letters, leftmost acting last. Canonical form is ascending.
using Word = std::vector<Letter>;
std::string word_str(const Word& w);
int word_weight(const Word& w);  // total depth

// Zero-valued box seeded with point support at the origin; the carrier for
// claim windows and support shifters.
LaurentBox claim_seed(int cut);

// Window-only product of a zero-valued claim box with a support shifter
// (itself zero-valued). Same per-slot and per-layer rules as the stored
// product, but no recession-cone bailout: with nothing stored there is
// nothing to materialize, so the window rules alone are sound.
LaurentBox mask_product(const LaurentBox& claim, const LaurentBox& shifter);

// Shifter covering the coefficient moves a reordering pass can make: the
// identity plus corrections one deformation order up at unchanged exponents.
LaurentBox reorder_budget(int cut);

// Module element: finitely many canonical words with windowed coefficients,
// plus one slack claim. The true coefficient of any word, listed or not,
// is the stored value (zero if unlisted) up to mass inside the slack
// windows. A default-constructed slack is the exact zero, so a plain State
// claims its listing is complete mod h^cut.
class State {
public:
    State() = default;
    static State one();
    static State term(const Word& canonical, const LaurentBox& b);

    const std::map<Word, LaurentBox>& terms() const { return t_; }
    const LaurentBox& slack() const { return slack_; }
    LaurentBox coeff(const Word& w) const;  // stored part only

    void add_term(const Word& canonical, const LaurentBox& b);
    // Weakens every coefficient claim, listed or not.
    void smear(const LaurentBox& mask);

    State& operator+=(const State& o);
    State operator+(const State& o) const;
    State operator-(const State& o) const;
    State operator-() const;
    State operator*(const State& o) const;  // normal-ordered concatenation
    State scaled(const Rational& c) const;
    State scaled_box(const LaurentBox& b) const;
    State times_h(int k) const;
    State div_h() const;
    State extract_var(int v, int k) const;

    bool exact_zero() const;
    // Zero-valued box whose windows cover all possible mass of this state,
    // stored and slack alike.
    LaurentBox hull() const;
    int max_weight() const;  // heaviest listed word
    std::string str() const;

private:
    std::map<Word, LaurentBox> t_;
    LaurentBox slack_;
};

// Left-multiply by one letter, reordering back to canonical form.
State prepend_letter(Letter g, const State& s);

template <>
struct RingOps<LaurentBox> {
    static LaurentBox zero() { return LaurentBox(); }
    static LaurentBox one() { return LaurentBox(Rational(1), default_ring_cut()); }
    static LaurentBox from_rat(const Rational& q) { return LaurentBox(q, default_ring_cut()); }
    static bool is_zero(const LaurentBox& b);
};

template <>
struct RingOps<State> {
    static State zero() { return State(); }
    static State one() { return State::one(); }
    static State from_rat(const Rational& q);
    static bool is_zero(const State& s) { return s.exact_zero(); }
};

using BoxOp = TensorOp<LaurentBox>;
using StateOp = TensorOp<State>;

// Rewrites an arbitrarily ordered product of letters into canonical form,
// with the given coefficient on the input word. Branches whose explicit
// deformation power reaches the coefficient's cut are dropped; that is
// exact in the ring.
State normal_order(const Word& w, const LaurentBox& coeff);
// Same, but the adjacent inversion resolved at each step is chosen by the
// seed. Any choice must land on the same canonical form.
State normal_order_seeded(const Word& w, const LaurentBox& coeff, unsigned seed);

// x y = y x + corrections; each correction is a short word with an explicit
// deformation power and an integer coefficient.
struct SwapTerm {
    Word letters;
    int hpow;
    Rational coeff;
};
const std::vector<SwapTerm>& swap_rule(Letter x, Letter y);

struct EngineParams {
    int N = 2;
    Rational level = Rational(0);  // central charge
    int cut = 4;                   // ring modulus carried by all boxes
    int rmax = 12;                 // creation modes materialized per series
    int win_lo = -24;              // storage floor for directed expansions
    TwistData twist;               // used only by the reflection operations

    EngineParams() : twist(TwistData::symmetric_identity(2)) {}
};

// Evaluator for the series actions on the vacuum module. One instance per
// parameter set; caches are instance-local, so confine an instance to one
// thread.
class Engine {
public:
    explicit Engine(EngineParams p);
    const EngineParams& params() const { return p_; }
    int dim() const { return p_.N; }

    // Scalar two-leg matrices, entries windowed at the engine cut.
    BoxOp rbar(const LinForm& arg) const;      // normalized rational matrix
    BoxOp rbar_inv(const LinForm& arg) const;  // equals rbar(-arg)
    BoxOp rmat(const LinForm& arg) const;      // 1 - h P / arg
    BoxOp rmat_inv(const LinForm& arg) const;
    BoxOp perm2() const;  // P on two legs

    BoxOp gmat(int legs, int leg) const;
    BoxOp gmat_inv(int legs, int leg) const;
    static StateOp lift(const BoxOp& b);
    StateOp id_op(int legs) const;

    // Entry actions of the four generating series on a single state.
    State cre_entry(int i, int j, const LinForm& X, const State& s) const;
    State ann_entry(int i, int j, const LinForm& X, const State& s) const;

    // Series action on one leg of a state-valued operator: out has the leg
    // index contracted through the series matrix. The _t variants contract
    // through the transposed matrix.
    StateOp act_cre(const StateOp& A, int leg, const LinForm& X) const;
    StateOp act_cre_t(const StateOp& A, int leg, const LinForm& X) const;
    StateOp act_ann(const StateOp& A, int leg, const LinForm& X) const;
    StateOp act_ann_t(const StateOp& A, int leg, const LinForm& X) const;
    StateOp act_refl(const StateOp& A, int leg, const LinForm& X) const;       // S
    StateOp act_refl_plus(const StateOp& A, int leg, const LinForm& X) const;  // S+

    // Dressed n-leg products applied to an operator: the k-th leg carries
    // argument z + u[k], with the transposed normalized matrices between
    // the reflection factors. `plus` picks the creation kind; the other
    // kind shifts the dressing argument by -c h.
    StateOp refl_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u,
                       bool plus) const;
    StateOp cre_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u) const;
    StateOp ann_multi(const StateOp& A, const LinForm& z, const std::vector<LinForm>& u) const;

    // Solves (series product) * V = A in the deformation-adic sense; the
    // constant part of the product must be invertible, which holds for the
    // two families used here (twist product resp. identity).
    StateOp refl_multi_inverse(const StateOp& A, const LinForm& z,
                               const std::vector<LinForm>& u) const;
    StateOp ann_multi_inverse(const StateOp& A, const LinForm& z,
                              const std::vector<LinForm>& u) const;

    // Reflection letter actions, extracted from the series at variable "v".
    State refl_mode_neg(int r, int i, int j, const State& s) const;  // lowering, r >= 1
    State refl_mode_pos(int r, int i, int j, const State& s) const;  // raising, r >= 1

    // Internal word-level annihilation table; exposed for tests.
    const std::vector<State>& ann_word(const LinForm& X, const Word& w) const;

private:
    EngineParams p_;
    int vx_;  // reserved expansion variable for the pushthrough

    BoxOp rbar_cached(const LinForm& arg, int win_lo) const;
    StateOp act_cre_impl(const StateOp& A, int leg, const LinForm& X, int modes, bool with_tail,
                         bool transposed) const;
    StateOp act_ann_impl(const StateOp& A, int leg, const LinForm& X, bool transposed) const;
    // Slack addition covering the creation modes beyond the materialized
    // range, policed per variable of X.
    LaurentBox cre_tail_mask(const LinForm& X, const LaurentBox& hull) const;

    mutable std::map<std::string, BoxOp> rbar_memo_;
    mutable std::map<std::pair<std::string, Word>, std::vector<State>> ann_memo_;
};

// Verdict helper: difference checked on a window.
struct ZeroCheck {
    bool known = true;  // every coefficient certified on the window
    bool clean = true;  // no nonzero coefficient found
    Rational worst;     // largest-magnitude offender
    Word worst_word;
    EKey worst_key;
};
ZeroCheck check_zero(const State& s, const CheckWindow& win);
ZeroCheck check_zero(const StateOp& A, const CheckWindow& win);
ZeroCheck check_equal(const StateOp& A, const StateOp& B, const CheckWindow& win);

}  // namespace yv
