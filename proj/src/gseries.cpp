#include "yv/gseries.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace yv {

namespace {

std::map<std::pair<long, int>, std::vector<Rational>> cache;
std::mutex cache_mtx;

// Coefficient of x^{-M} in g(x+N) - g(x)(1 - x^{-2}), using g_m for m <= M.
Rational residual_coeff(long N, const std::vector<Rational>& g, int M) {
    Rational acc(0);
    for (int m = 0; m <= M && m < static_cast<int>(g.size()); ++m)
        acc += g[static_cast<size_t>(m)] * binomial(-m, M - m) * pow_rat(Rational(N), M - m);
    if (M < static_cast<int>(g.size())) acc -= g[static_cast<size_t>(M)];
    if (M >= 2 && M - 2 < static_cast<int>(g.size())) acc += g[static_cast<size_t>(M - 2)];
    return acc;
}

}  // namespace

const std::vector<Rational>& norm_scalar_coeffs(long N, int K) {
    if (N <= 0) throw std::domain_error("norm_scalar_coeffs: N must be positive");
    std::lock_guard<std::mutex> lock(cache_mtx);
    auto key = std::make_pair(N, K);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // The x^{-M} equation has g_M cancelling; its top surviving term is
    // -(M-1) N g_{M-1}, which determines g_{M-1} from earlier coefficients.
    std::vector<Rational> g(static_cast<size_t>(K) + 1, Rational(0));
    g[0] = Rational(1);
    for (int M = 2; M <= K + 1; ++M) {
        Rational rhs(0);
        for (int m = 0; m <= M - 2; ++m)
            rhs += g[static_cast<size_t>(m)] * binomial(-m, M - m) * pow_rat(Rational(N), M - m);
        rhs += g[static_cast<size_t>(M - 2)];
        // rhs + (-(M-1) N) g_{M-1} = 0
        g[static_cast<size_t>(M - 1)] = rhs / (Rational(M - 1) * Rational(N));
    }
    return cache.emplace(key, std::move(g)).first->second;
}

std::vector<Rational> norm_scalar_residual(long N, const std::vector<Rational>& g, int K) {
    std::vector<Rational> res;
    for (int M = 0; M <= K; ++M) res.push_back(residual_coeff(N, g, M));
    return res;
}

HSeries norm_scalar_series(const RatFunc& x, const Rational& beta, long N, int prec) {
    if (prec >= HSeries::kInfPrec)
        throw std::domain_error("norm_scalar_series: finite precision required");
    const auto& g = norm_scalar_coeffs(N, prec);
    // h^j coefficient: x^{-j} sum_{m<=j} g_m binom(-m, j-m) beta^{j-m}
    HSeries r;
    r = r.truncated(prec);
    for (int j = 0; j < prec; ++j) {
        Rational acc(0);
        for (int m = 0; m <= j; ++m)
            acc += g[static_cast<size_t>(m)] * binomial(-m, j - m) * pow_rat(beta, j - m);
        if (acc != 0) r.set(j, x.pow(-j).scaled(acc));
    }
    return r;
}

}  // namespace yv
