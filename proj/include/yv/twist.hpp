#pragma once

#include <string>
#include <vector>

#include "yv/rational.hpp"

namespace yv {

// Nonsingular matrix G with G^t = sign * G (sign +1 or -1), defining the
// fixed-point involution. The antisymmetric kind needs even N.
struct TwistData {
    int N = 0;
    int sign = +1;
    std::vector<std::vector<Rational>> G;
    std::vector<std::vector<Rational>> Ginv;

    static TwistData symmetric_identity(int N);
    static TwistData antisymmetric_blocks(int N);
    // Validates squareness, symmetry type, nonsingularity; throws on failure.
    static TwistData from_matrix(std::vector<std::vector<Rational>> M);
    // File format: first line N, then N rows of N rationals.
    static TwistData from_file(const std::string& path);

    const Rational& g(int i, int j) const { return G[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const Rational& ginv(int i, int j) const {
        return Ginv[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
};

// Exact inverse via Gauss-Jordan; throws if singular.
std::vector<std::vector<Rational>> invert_matrix(const std::vector<std::vector<Rational>>& M);

}  // namespace yv
