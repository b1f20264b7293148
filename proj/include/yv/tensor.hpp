#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "yv/gseries.hpp"
#include "yv/series.hpp"
#include "yv/twist.hpp"

namespace yv {

template <class S>
struct RingOps;

template <>
struct RingOps<RatFunc> {
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rational(1)); }
    static RatFunc from_rat(const Rational& q) { return RatFunc(q); }
    static bool is_zero(const RatFunc& s) { return s.is_zero(); }
};

template <>
struct RingOps<HSeries> {
    static HSeries zero() { return HSeries(); }
    static HSeries one() { return HSeries(Rational(1)); }
    static HSeries from_rat(const Rational& q) { return HSeries(q); }
    static bool is_zero(const HSeries& s) { return s.is_zero_known(); }
};

inline uint32_t pack_idx(const std::vector<int>& idx, int dim) {
    uint32_t p = 0;
    for (size_t k = idx.size(); k-- > 0;) p = p * static_cast<uint32_t>(dim) + static_cast<uint32_t>(idx[k]);
    return p;
}

inline std::vector<int> unpack_idx(uint32_t p, int legs, int dim) {
    std::vector<int> idx(static_cast<size_t>(legs));
    for (int k = 0; k < legs; ++k) {
        idx[static_cast<size_t>(k)] = static_cast<int>(p % static_cast<uint32_t>(dim));
        p /= static_cast<uint32_t>(dim);
    }
    return idx;
}

inline int idx_digit(uint32_t p, int leg, int dim) {
    for (int k = 0; k < leg; ++k) p /= static_cast<uint32_t>(dim);
    return static_cast<int>(p % static_cast<uint32_t>(dim));
}

inline uint32_t idx_with(uint32_t p, int leg, int dim, int val) {
    uint32_t scale = 1;
    for (int k = 0; k < leg; ++k) scale *= static_cast<uint32_t>(dim);
    int old = idx_digit(p, leg, dim);
    return p + scale * static_cast<uint32_t>(val - old);
}

// Linear operator on (C^dim)^{\otimes legs} with entries in a commutative
// ring S. Entries stored sparsely as (row, col) multi-index pairs.
template <class S>
class TensorOp {
public:
    using Key = std::pair<uint32_t, uint32_t>;

    TensorOp(int legs, int dim) : legs_(legs), dim_(dim) {}

    static TensorOp identity(int legs, int dim) {
        TensorOp t(legs, dim);
        uint32_t total = t.space_size();
        for (uint32_t i = 0; i < total; ++i) t.m_.emplace(Key{i, i}, RingOps<S>::one());
        return t;
    }

    // Basis permutation action: out[sigma(k)] = in[k].
    static TensorOp perm_op(const std::vector<int>& sigma, int dim) {
        int legs = static_cast<int>(sigma.size());
        TensorOp t(legs, dim);
        uint32_t total = t.space_size();
        for (uint32_t in = 0; in < total; ++in) {
            auto iv = unpack_idx(in, legs, dim);
            std::vector<int> ov(static_cast<size_t>(legs));
            for (int k = 0; k < legs; ++k) ov[static_cast<size_t>(sigma[static_cast<size_t>(k)])] =
                iv[static_cast<size_t>(k)];
            t.m_.emplace(Key{pack_idx(ov, dim), in}, RingOps<S>::one());
        }
        return t;
    }

    static TensorOp pair_swap(int dim) { return perm_op({1, 0}, dim); }

    int legs() const { return legs_; }
    int dim() const { return dim_; }
    uint32_t space_size() const {
        uint32_t s = 1;
        for (int k = 0; k < legs_; ++k) s *= static_cast<uint32_t>(dim_);
        return s;
    }
    const std::map<Key, S>& entries() const { return m_; }

    void add_entry(uint32_t r, uint32_t c, const S& v) {
        if (RingOps<S>::is_zero(v)) return;
        auto it = m_.find({r, c});
        if (it == m_.end()) {
            m_.emplace(Key{r, c}, v);
        } else {
            it->second = it->second + v;
            if (RingOps<S>::is_zero(it->second)) m_.erase(it);
        }
    }

    void set_entry(uint32_t r, uint32_t c, const S& v) {
        if (RingOps<S>::is_zero(v))
            m_.erase({r, c});
        else
            m_[{r, c}] = v;
    }

    S entry(uint32_t r, uint32_t c) const {
        auto it = m_.find({r, c});
        return it == m_.end() ? RingOps<S>::zero() : it->second;
    }

    TensorOp operator+(const TensorOp& o) const {
        check_shape(o);
        TensorOp t = *this;
        for (const auto& [k, v] : o.m_) t.add_entry(k.first, k.second, v);
        return t;
    }

    TensorOp operator-(const TensorOp& o) const {
        check_shape(o);
        TensorOp t = *this;
        for (const auto& [k, v] : o.m_) t.add_entry(k.first, k.second, neg(v));
        return t;
    }

    TensorOp operator*(const TensorOp& o) const {
        check_shape(o);
        TensorOp t(legs_, dim_);
        for (const auto& [ka, va] : m_) {
            auto it = o.m_.lower_bound({ka.second, 0});
            for (; it != o.m_.end() && it->first.first == ka.second; ++it)
                t.add_entry(ka.first, it->first.second, va * it->second);
        }
        return t;
    }

    TensorOp scaled(const S& s) const {
        TensorOp t(legs_, dim_);
        for (const auto& [k, v] : m_) t.add_entry(k.first, k.second, v * s);
        return t;
    }

    TensorOp operator-() const {
        TensorOp t(legs_, dim_);
        for (const auto& [k, v] : m_) t.m_.emplace(k, neg(v));
        return t;
    }

    // Places this operator's legs at positions legmap[k] of a larger space,
    // acting as identity elsewhere.
    TensorOp embed(int total_legs, const std::vector<int>& legmap) const {
        if (static_cast<int>(legmap.size()) != legs_)
            throw std::domain_error("embed: legmap size mismatch");
        TensorOp t(total_legs, dim_);
        std::vector<bool> used(static_cast<size_t>(total_legs), false);
        for (int m : legmap) used[static_cast<size_t>(m)] = true;
        std::vector<int> rest;
        for (int k = 0; k < total_legs; ++k)
            if (!used[static_cast<size_t>(k)]) rest.push_back(k);
        uint32_t rest_count = 1;
        for (size_t k = 0; k < rest.size(); ++k) rest_count *= static_cast<uint32_t>(dim_);
        for (const auto& [key, v] : m_) {
            auto rv = unpack_idx(key.first, legs_, dim_);
            auto cv = unpack_idx(key.second, legs_, dim_);
            for (uint32_t d = 0; d < rest_count; ++d) {
                auto dv = unpack_idx(d, static_cast<int>(rest.size()), dim_);
                std::vector<int> row(static_cast<size_t>(total_legs), 0);
                std::vector<int> col(static_cast<size_t>(total_legs), 0);
                for (int k = 0; k < legs_; ++k) {
                    row[static_cast<size_t>(legmap[static_cast<size_t>(k)])] = rv[static_cast<size_t>(k)];
                    col[static_cast<size_t>(legmap[static_cast<size_t>(k)])] = cv[static_cast<size_t>(k)];
                }
                for (size_t k = 0; k < rest.size(); ++k) {
                    row[static_cast<size_t>(rest[k])] = dv[k];
                    col[static_cast<size_t>(rest[k])] = dv[k];
                }
                t.add_entry(pack_idx(row, dim_), pack_idx(col, dim_), v);
            }
        }
        return t;
    }

    TensorOp transpose_leg(int leg) const {
        TensorOp t(legs_, dim_);
        for (const auto& [key, v] : m_) {
            int ri = idx_digit(key.first, leg, dim_);
            int ci = idx_digit(key.second, leg, dim_);
            t.add_entry(idx_with(key.first, leg, dim_, ci), idx_with(key.second, leg, dim_, ri), v);
        }
        return t;
    }

    TensorOp transpose_all() const {
        TensorOp t(legs_, dim_);
        for (const auto& [key, v] : m_) t.add_entry(key.second, key.first, v);
        return t;
    }

    // Contracts leg `leg`, returning an operator on legs-1 legs.
    TensorOp trace_leg(int leg) const {
        TensorOp t(legs_ - 1, dim_);
        for (const auto& [key, v] : m_) {
            if (idx_digit(key.first, leg, dim_) != idx_digit(key.second, leg, dim_)) continue;
            auto rv = unpack_idx(key.first, legs_, dim_);
            auto cv = unpack_idx(key.second, legs_, dim_);
            rv.erase(rv.begin() + leg);
            cv.erase(cv.begin() + leg);
            t.add_entry(pack_idx(rv, dim_), pack_idx(cv, dim_), v);
        }
        return t;
    }

    S full_trace() const {
        S acc = RingOps<S>::zero();
        for (const auto& [key, v] : m_)
            if (key.first == key.second) acc = acc + v;
        return acc;
    }

    bool is_zero_known() const {
        for (const auto& [k, v] : m_)
            if (!RingOps<S>::is_zero(v)) return false;
        return true;
    }

    size_t nonzero_count() const { return m_.size(); }

private:
    int legs_, dim_;
    std::map<Key, S> m_;

    void check_shape(const TensorOp& o) const {
        if (legs_ != o.legs_ || dim_ != o.dim_) throw std::domain_error("tensor op shape mismatch");
    }
    static S neg(const S& v) { return RingOps<S>::zero() - v; }
};

// a .LR b and a .RL b on two-leg operators: coproduct-ordered products where
// the first-leg factors multiply left-to-right resp. right-to-left and the
// second-leg factors the opposite way.
template <class S>
TensorOp<S> lr_product(const TensorOp<S>& a, const TensorOp<S>& b) {
    if (a.legs() != 2 || b.legs() != 2) throw std::domain_error("lr_product: two-leg operators only");
    int dim = a.dim();
    TensorOp<S> t(2, dim);
    // (a .LR b)[(p,s'),(q',t)] = sum_{q,s} a[(p,s),(q,t)] b[(q,s'),(q',s)]
    for (const auto& [ka, va] : a.entries()) {
        int p = idx_digit(ka.first, 0, dim), s = idx_digit(ka.first, 1, dim);
        int q = idx_digit(ka.second, 0, dim), tt = idx_digit(ka.second, 1, dim);
        for (const auto& [kb, vb] : b.entries()) {
            if (idx_digit(kb.first, 0, dim) != q) continue;
            if (idx_digit(kb.second, 1, dim) != s) continue;
            int sp = idx_digit(kb.first, 1, dim);
            int qp = idx_digit(kb.second, 0, dim);
            t.add_entry(pack_idx({p, sp}, dim), pack_idx({qp, tt}, dim), va * vb);
        }
    }
    return t;
}

template <class S>
TensorOp<S> rl_product(const TensorOp<S>& a, const TensorOp<S>& b) {
    if (a.legs() != 2 || b.legs() != 2) throw std::domain_error("rl_product: two-leg operators only");
    int dim = a.dim();
    TensorOp<S> t(2, dim);
    // (a .RL b)[(p,s'),(q',t)] = sum_{q,s} a[(q,s'),(q',s)] b[(p,s),(q,t)]
    for (const auto& [ka, va] : a.entries()) {
        int q = idx_digit(ka.first, 0, dim), sp = idx_digit(ka.first, 1, dim);
        int qp = idx_digit(ka.second, 0, dim), s = idx_digit(ka.second, 1, dim);
        for (const auto& [kb, vb] : b.entries()) {
            if (idx_digit(kb.second, 0, dim) != q) continue;
            if (idx_digit(kb.first, 1, dim) != s) continue;
            int p = idx_digit(kb.first, 0, dim);
            int tt = idx_digit(kb.second, 1, dim);
            t.add_entry(pack_idx({p, sp}, dim), pack_idx({qp, tt}, dim), va * vb);
        }
    }
    return t;
}

// Antisymmetrizer (1/n!) sum_sigma sgn(sigma) P_sigma on n legs.
TensorOp<RatFunc> antisymmetrizer(int n, int dim);

// 1 - (h/arg) P, exact entries.
TensorOp<RatFunc> yang_r(int dim, const Poly& arg);

// Normalized form g((x+beta h)/h) (1 - h/(x+beta h) P) as an h-series.
TensorOp<HSeries> yang_rbar(int dim, const RatFunc& x, const Rational& beta, int prec);

// Constant matrix acting on one leg of a larger space.
template <class S>
TensorOp<S> matrix_on_leg(int legs, int dim, int leg, const std::vector<std::vector<Rational>>& M) {
    TensorOp<S> t(1, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const Rational& q = M[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (q != 0)
                t.add_entry(static_cast<uint32_t>(i), static_cast<uint32_t>(j), RingOps<S>::from_rat(q));
        }
    return t.embed(legs, {leg});
}

// Zero test at a stated order: every entry vanishes mod h^prec.
inline bool is_zero_mod(const TensorOp<HSeries>& op, int prec) {
    for (const auto& [k, v] : op.entries())
        if (!v.truncated(prec).is_zero_known()) return false;
    return true;
}

// Gauss-Jordan inverse over the rational-function field.
TensorOp<RatFunc> invert_exact(const TensorOp<RatFunc>& a);

// Inverse of a series operator whose h^0 part is an invertible exact matrix,
// computed h-adically to the operator's known precision.
TensorOp<HSeries> invert_series(const TensorOp<HSeries>& a, int prec);

}  // namespace yv
