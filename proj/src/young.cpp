#include "yv/young.hpp"

#include <sstream>
#include <stdexcept>

#include "yv/variables.hpp"

namespace yv {

bool is_partition(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

int partition_size(const Partition& p) {
    int n = 0;
    for (int part : p) n += part;
    return n;
}

Integer hook_product(const Partition& p) {
    Integer prod = 1;
    for (size_t i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p[i]; ++j) {
            int arm = p[i] - j - 1;
            int leg = 0;
            for (size_t r = i + 1; r < p.size(); ++r)
                if (p[r] > j) ++leg;
            prod *= arm + leg + 1;
        }
    }
    return prod;
}

int Tableau::row_of(int label) const {
    for (size_t i = 0; i < rows.size(); ++i)
        for (int x : rows[i])
            if (x == label) return static_cast<int>(i);
    throw std::out_of_range("Tableau: no such label");
}

int Tableau::col_of(int label) const {
    for (const auto& row : rows)
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j] == label) return static_cast<int>(j);
    throw std::out_of_range("Tableau: no such label");
}

int Tableau::content_of(int label) const { return col_of(label) - row_of(label); }

std::string Tableau::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << "/";
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (j) os << " ";
            os << rows[i][j];
        }
    }
    return os.str();
}

Tableau Tableau::row_major(const Partition& shape) {
    if (!is_partition(shape)) throw std::invalid_argument("row_major: not a partition");
    Tableau t;
    t.shape = shape;
    int next = 1;
    for (int part : shape) {
        std::vector<int> row(static_cast<size_t>(part));
        for (int& x : row) x = next++;
        t.rows.push_back(std::move(row));
    }
    return t;
}

Tableau Tableau::from_rows(const std::vector<std::vector<int>>& rows) {
    Tableau t;
    t.rows = rows;
    for (const auto& row : rows) t.shape.push_back(static_cast<int>(row.size()));
    if (!is_partition(t.shape)) throw std::invalid_argument("from_rows: shape not a partition");
    int n = t.size();
    std::vector<bool> seen(static_cast<size_t>(n + 1), false);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            int x = rows[i][j];
            if (x < 1 || x > n || seen[static_cast<size_t>(x)])
                throw std::invalid_argument("from_rows: labels must be a permutation of 1..n");
            seen[static_cast<size_t>(x)] = true;
            if (j > 0 && rows[i][j - 1] >= x)
                throw std::invalid_argument("from_rows: rows must increase");
            if (i > 0 && rows[i - 1][j] >= x)
                throw std::invalid_argument("from_rows: columns must increase");
        }
    }
    return t;
}

namespace {

void gen_standard(const Partition& shape, std::vector<int>& len,
                  std::vector<std::vector<int>>& rows, int k, int n,
                  std::vector<Tableau>& out) {
    if (k > n) {
        Tableau t;
        t.shape = shape;
        t.rows = rows;
        out.push_back(std::move(t));
        return;
    }
    for (size_t i = 0; i < shape.size(); ++i) {
        if (len[i] >= shape[i]) continue;
        if (i > 0 && len[i - 1] <= len[i]) continue;
        rows[i].push_back(k);
        ++len[i];
        gen_standard(shape, len, rows, k + 1, n, out);
        --len[i];
        rows[i].pop_back();
    }
}

}  // namespace

std::vector<Tableau> standard_tableaux(const Partition& shape) {
    if (!is_partition(shape)) throw std::invalid_argument("standard_tableaux: not a partition");
    std::vector<Tableau> out;
    std::vector<int> len(shape.size(), 0);
    std::vector<std::vector<int>> rows(shape.size());
    gen_standard(shape, len, rows, 1, partition_size(shape), out);
    return out;
}

std::vector<int> content_list(const Tableau& U) {
    std::vector<int> cs(static_cast<size_t>(U.size()));
    for (int k = 1; k <= U.size(); ++k) cs[static_cast<size_t>(k - 1)] = U.content_of(k);
    return cs;
}

PermVec perm_identity(int n) {
    PermVec p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

PermVec perm_compose(const PermVec& a, const PermVec& b) {
    PermVec r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
    return r;
}

GroupAlg ga_unit(int n) { return {{perm_identity(n), Rational(1)}}; }

GroupAlg ga_scale(const GroupAlg& a, const Rational& s) {
    GroupAlg r;
    if (s == 0) return r;
    for (const auto& [p, c] : a) r.emplace(p, c * s);
    return r;
}

GroupAlg ga_add(const GroupAlg& a, const GroupAlg& b) {
    GroupAlg r = a;
    for (const auto& [p, c] : b) {
        auto [it, fresh] = r.emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) r.erase(it);
        }
    }
    return r;
}

GroupAlg ga_mul(const GroupAlg& a, const GroupAlg& b) {
    GroupAlg r;
    for (const auto& [pa, ca] : a) {
        for (const auto& [pb, cb] : b) {
            PermVec p = perm_compose(pa, pb);
            auto [it, fresh] = r.emplace(std::move(p), ca * cb);
            if (!fresh) {
                it->second += ca * cb;
                if (it->second == 0) r.erase(it);
            }
        }
    }
    return r;
}

GroupAlg seminormal_idempotent(const Tableau& U) {
    const int n = U.size();
    GroupAlg e = ga_unit(n);
    for (int k = 2; k <= n; ++k) {
        // shape spanned by the labels below k
        std::vector<int> len;
        for (const auto& row : U.rows) {
            int cnt = 0;
            for (int x : row)
                if (x < k) ++cnt;
            if (cnt) len.push_back(cnt);
        }
        const int ck = U.content_of(k);
        // one-box growth points of that shape, by diagonal index
        std::vector<int> adds;
        for (size_t i = 0; i <= len.size(); ++i) {
            if (i < len.size() && i > 0 && len[i - 1] <= len[i]) continue;
            if (i < len.size())
                adds.push_back(len[i] - static_cast<int>(i));
            else
                adds.push_back(-static_cast<int>(i));
        }
        GroupAlg xk;
        for (int i = 1; i < k; ++i) {
            PermVec t = perm_identity(n);
            std::swap(t[static_cast<size_t>(i - 1)], t[static_cast<size_t>(k - 1)]);
            xk = ga_add(xk, {{t, Rational(1)}});
        }
        for (int c : adds) {
            if (c == ck) continue;
            auto factor = ga_add(xk, ga_scale(ga_unit(n), Rational(-c)));
            e = ga_mul(e, ga_scale(factor, Rational(1) / Rational(ck - c)));
        }
    }
    return e;
}

TensorOp<RatFunc> rep_op(const GroupAlg& a, int n, int dim) {
    TensorOp<RatFunc> acc(n, dim);
    for (const auto& [p, c] : a)
        acc = acc + TensorOp<RatFunc>::perm_op(p, dim).scaled(RatFunc(c));
    return acc;
}

TensorOp<RatFunc> young_idempotent(const Tableau& U, int dim) {
    return rep_op(seminormal_idempotent(U), U.size(), dim);
}

TensorOp<RatFunc> fused_idempotent(const Tableau& U, int dim) {
    const int n = U.size();
    std::vector<int> uid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) uid[static_cast<size_t>(i)] = var_id("u" + std::to_string(i + 1));

    auto acc = TensorOp<RatFunc>::identity(n, dim);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Poly arg = Poly::linform(
                LinForm::var(uid[static_cast<size_t>(i)]).add(uid[static_cast<size_t>(j)], Rational(-1)));
            acc = acc * yang_r(dim, arg).embed(n, {i, j});
        }
    }
    // pin the spectral points one label at a time; common factors between
    // numerator and denominator cancel before each substitution
    for (int k = 0; k < n; ++k) {
        Poly point = Poly::variable(kVarH).scaled(Rational(U.content_of(k + 1)));
        TensorOp<RatFunc> next(n, dim);
        for (const auto& [key, v] : acc.entries()) {
            RatFunc w = v.cancel_and_eval(uid[static_cast<size_t>(k)], point);
            if (!w.is_zero()) next.set_entry(key.first, key.second, w);
        }
        acc = next;
    }
    for (const auto& [key, v] : acc.entries()) {
        (void)key;
        if (!v.is_poly() || !v.num().is_constant())
            throw std::logic_error("fused_idempotent: evaluation left a non-constant entry");
    }
    return acc.scaled(RatFunc(Rational(1) / Rational(hook_product(U.shape))));
}

}  // namespace yv
