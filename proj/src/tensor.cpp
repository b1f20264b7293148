#include "yv/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace yv {

namespace {

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? +1 : -1;
}

}  // namespace

TensorOp<RatFunc> antisymmetrizer(int n, int dim) {
    TensorOp<RatFunc> acc(n, dim);
    std::vector<int> sigma(static_cast<size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational norm = Rational(1) / Rational(factorial(n));
    do {
        auto term = TensorOp<RatFunc>::perm_op(sigma, dim);
        acc = acc + term.scaled(RatFunc(norm * perm_sign(sigma)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return acc;
}

TensorOp<RatFunc> yang_r(int dim, const Poly& arg) {
    auto t = TensorOp<RatFunc>::identity(2, dim);
    auto p = TensorOp<RatFunc>::pair_swap(dim);
    RatFunc s(-Poly::variable(kVarH), arg);
    return t + p.scaled(s);
}

TensorOp<HSeries> yang_rbar(int dim, const RatFunc& x, const Rational& beta, int prec) {
    HSeries gs = norm_scalar_series(x, beta, dim, prec);
    HSeries ps = gs * pow_series(x, beta, -1, prec).shifted(1);
    auto t = TensorOp<HSeries>::identity(2, dim);
    auto p = TensorOp<HSeries>::pair_swap(dim);
    return t.scaled(gs) - p.scaled(ps);
}

TensorOp<RatFunc> invert_exact(const TensorOp<RatFunc>& a) {
    int legs = a.legs(), dim = a.dim();
    uint32_t n = a.space_size();
    // Dense Gauss-Jordan; spaces here are small (dim^legs <= a few hundred).
    std::vector<std::vector<RatFunc>> aug(n, std::vector<RatFunc>(n));
    std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n));
    for (const auto& [k, v] : a.entries()) aug[k.first][k.second] = v;
    for (uint32_t i = 0; i < n; ++i) inv[i][i] = RatFunc(Rational(1));
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && aug[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("invert_exact: singular operator");
        std::swap(aug[piv], aug[col]);
        std::swap(inv[piv], inv[col]);
        RatFunc d = aug[col][col].inv();
        for (uint32_t j = 0; j < n; ++j) {
            if (!aug[col][j].is_zero()) aug[col][j] = aug[col][j] * d;
            if (!inv[col][j].is_zero()) inv[col][j] = inv[col][j] * d;
        }
        for (uint32_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            RatFunc f = aug[r][col];
            for (uint32_t j = 0; j < n; ++j) {
                if (!aug[col][j].is_zero()) aug[r][j] -= f * aug[col][j];
                if (!inv[col][j].is_zero()) inv[r][j] -= f * inv[col][j];
            }
        }
    }
    TensorOp<RatFunc> t(legs, dim);
    for (uint32_t r = 0; r < n; ++r)
        for (uint32_t c = 0; c < n; ++c)
            if (!inv[r][c].is_zero()) t.set_entry(r, c, inv[r][c]);
    return t;
}

TensorOp<HSeries> invert_series(const TensorOp<HSeries>& a, int prec) {
    int legs = a.legs(), dim = a.dim();
    // Split a = a0 + (a - a0) with a0 the h^0 part, an exact matrix over
    // rational functions; then accumulate the geometric series in the
    // h-positive remainder.
    TensorOp<RatFunc> a0(legs, dim);
    for (const auto& [k, v] : a.entries()) {
        RatFunc c0 = v.coeff(0);
        if (!c0.is_zero()) a0.set_entry(k.first, k.second, c0);
    }
    TensorOp<RatFunc> b0x = invert_exact(a0);
    TensorOp<HSeries> b0(legs, dim);
    for (const auto& [k, v] : b0x.entries()) b0.set_entry(k.first, k.second, HSeries(v, prec));
    TensorOp<HSeries> a0s(legs, dim);
    for (const auto& [k, v] : a0.entries()) a0s.set_entry(k.first, k.second, HSeries(v, prec));
    TensorOp<HSeries> rem = a0s - a;  // O(h)
    TensorOp<HSeries> term = b0;
    TensorOp<HSeries> acc = b0;
    for (int k = 1; k < prec; ++k) {
        term = b0 * (rem * term);
        if (term.is_zero_known()) break;
        acc = acc + term;
    }
    return acc;
}

}  // namespace yv
