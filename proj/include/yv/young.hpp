#pragma once

#include <map>
#include <string>
#include <vector>

#include "yv/rational.hpp"
#include "yv/tensor.hpp"

namespace yv {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);
int partition_size(const Partition& p);
Integer hook_product(const Partition& p);

// Standard filling of a partition: labels 1..n increase along rows and down
// columns. rows[i][j] holds the label in row i, column j (0-based).
struct Tableau {
    Partition shape;
    std::vector<std::vector<int>> rows;

    int size() const { return partition_size(shape); }
    int row_of(int label) const;
    int col_of(int label) const;
    // diagonal index col - row of the box holding the label
    int content_of(int label) const;
    std::string str() const;

    static Tableau row_major(const Partition& shape);
    static Tableau from_rows(const std::vector<std::vector<int>>& rows);  // validates
};

std::vector<Tableau> standard_tableaux(const Partition& shape);

// content_of for every label, in label order
std::vector<int> content_list(const Tableau& U);

// Group algebra of the symmetric group. Permutations are one-line images on
// 0-based letters.
using PermVec = std::vector<int>;
using GroupAlg = std::map<PermVec, Rational>;

PermVec perm_identity(int n);
PermVec perm_compose(const PermVec& a, const PermVec& b);  // (a o b)(x) = a[b[x]]
GroupAlg ga_unit(int n);
GroupAlg ga_scale(const GroupAlg& a, const Rational& s);
GroupAlg ga_add(const GroupAlg& a, const GroupAlg& b);
GroupAlg ga_mul(const GroupAlg& a, const GroupAlg& b);

// Primitive idempotent of the seminormal basis attached to a standard
// tableau, built by branching along the label chain.
GroupAlg seminormal_idempotent(const Tableau& U);

// Image of a group algebra element on n tensor legs of dimension dim.
TensorOp<RatFunc> rep_op(const GroupAlg& a, int n, int dim);
TensorOp<RatFunc> young_idempotent(const Tableau& U, int dim);

// Ordered product of two-site exchange operators with the spectral gaps
// pinned, label by label, to h times the tableau's diagonal indices;
// normalized by the hook product. Agrees with young_idempotent.
TensorOp<RatFunc> fused_idempotent(const Tableau& U, int dim);

}  // namespace yv
