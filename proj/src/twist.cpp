#include "yv/twist.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace yv {

std::vector<std::vector<Rational>> invert_matrix(const std::vector<std::vector<Rational>>& M) {
    size_t n = M.size();
    auto aug = M;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("invert_matrix: singular matrix");
        std::swap(aug[piv], aug[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = aug[col][col];
        for (size_t j = 0; j < n; ++j) {
            aug[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (size_t j = 0; j < n; ++j) {
                aug[r][j] -= f * aug[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

TwistData TwistData::symmetric_identity(int N) {
    std::vector<std::vector<Rational>> M(static_cast<size_t>(N),
                                         std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
    for (int i = 0; i < N; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
    return from_matrix(std::move(M));
}

TwistData TwistData::antisymmetric_blocks(int N) {
    if (N % 2 != 0)
        throw std::domain_error("antisymmetric twist needs even matrix size");
    std::vector<std::vector<Rational>> M(static_cast<size_t>(N),
                                         std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
    for (int b = 0; b + 1 < N; b += 2) {
        M[static_cast<size_t>(b)][static_cast<size_t>(b + 1)] = Rational(1);
        M[static_cast<size_t>(b + 1)][static_cast<size_t>(b)] = Rational(-1);
    }
    return from_matrix(std::move(M));
}

TwistData TwistData::from_matrix(std::vector<std::vector<Rational>> M) {
    TwistData t;
    t.N = static_cast<int>(M.size());
    if (t.N == 0) throw std::domain_error("twist matrix is empty");
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != t.N) throw std::domain_error("twist matrix is not square");

    bool sym = true, antisym = true;
    for (int i = 0; i < t.N; ++i)
        for (int j = 0; j < t.N; ++j) {
            const Rational& a = M[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const Rational& b = M[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (a != b) sym = false;
            if (a != -b) antisym = false;
        }
    if (!sym && !antisym)
        throw std::domain_error("twist matrix is neither symmetric nor antisymmetric");
    t.sign = sym ? +1 : -1;
    if (t.sign == -1 && t.N % 2 != 0)
        throw std::domain_error("antisymmetric twist needs even matrix size");
    t.Ginv = invert_matrix(M);  // throws if singular
    t.G = std::move(M);
    return t;
}

TwistData TwistData::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open twist file: " + path);
    int N = 0;
    if (!(in >> N) || N <= 0) throw std::domain_error("twist file: bad size line");
    std::vector<std::vector<Rational>> M(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::domain_error("twist file: missing entries");
            auto q = parse_rational(tok);
            if (!q) throw std::domain_error("twist file: bad rational '" + tok + "'");
            M[static_cast<size_t>(i)].push_back(*q);
        }
    }
    return from_matrix(std::move(M));
}

}  // namespace yv
