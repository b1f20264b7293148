#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "yv/young.hpp"

using namespace yv;

namespace {

std::vector<Partition> shapes_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    // descending-part compositions
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

bool ga_is_zero(const GroupAlg& a) { return a.empty(); }

}  // namespace

TEST_CASE("tableau counts match the hook length formula") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& shape : shapes_of(n)) {
            auto ts = standard_tableaux(shape);
            Integer expected = factorial(n) / hook_product(shape);
            CHECK(Integer(static_cast<long>(ts.size())) == expected);
            for (const auto& t : ts) {
                // round-trips through validation
                CHECK(Tableau::from_rows(t.rows).str() == t.str());
            }
        }
    }
    CHECK(standard_tableaux({2, 1}).size() == 2);
    CHECK(standard_tableaux({3, 2}).size() == 5);
}

TEST_CASE("two-box idempotents have the classical coefficients") {
    auto sym = seminormal_idempotent(Tableau::row_major({2}));
    auto alt = seminormal_idempotent(Tableau::row_major({1, 1}));
    PermVec id = perm_identity(2), sw = {1, 0};
    CHECK(sym.at(id) == rat(1, 2));
    CHECK(sym.at(sw) == rat(1, 2));
    CHECK(alt.at(id) == rat(1, 2));
    CHECK(alt.at(sw) == rat(-1, 2));
}

TEST_CASE("branching idempotents are idempotent and orthogonal") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<GroupAlg> all;
        for (const auto& shape : shapes_of(n))
            for (const auto& t : standard_tableaux(shape))
                all.push_back(seminormal_idempotent(t));
        GroupAlg total;
        for (size_t a = 0; a < all.size(); ++a) {
            CHECK(ga_is_zero(ga_add(ga_mul(all[a], all[a]), ga_scale(all[a], Rational(-1)))));
            total = ga_add(total, all[a]);
            for (size_t b = a + 1; b < all.size(); ++b) {
                CHECK(ga_is_zero(ga_mul(all[a], all[b])));
                CHECK(ga_is_zero(ga_mul(all[b], all[a])));
            }
        }
        // the family resolves the identity
        CHECK(ga_is_zero(ga_add(total, ga_scale(ga_unit(n), Rational(-1)))));
    }
}

TEST_CASE("represented idempotents square to themselves") {
    for (int dim : {2, 3}) {
        for (const auto& shape : {Partition{2, 1}, Partition{2, 2}, Partition{3}}) {
            for (const auto& t : standard_tableaux(shape)) {
                auto e = young_idempotent(t, dim);
                CHECK((e * e - e).is_zero_known());
            }
        }
    }
}

TEST_CASE("full-column idempotent is the antisymmetrizer") {
    for (int dim : {2, 3}) {
        Partition col(static_cast<size_t>(dim), 1);
        auto e = young_idempotent(Tableau::row_major(col), dim);
        CHECK((e - antisymmetrizer(dim, dim)).is_zero_known());
        auto f = fused_idempotent(Tableau::row_major(col), dim);
        CHECK((f - antisymmetrizer(dim, dim)).is_zero_known());
    }
}

TEST_CASE("columns taller than the space represent as zero") {
    auto e = young_idempotent(Tableau::row_major({1, 1, 1}), 2);
    CHECK(e.is_zero_known());
}

TEST_CASE("staged spectral evaluation reproduces every idempotent") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& shape : shapes_of(n)) {
            for (const auto& t : standard_tableaux(shape)) {
                auto fused = fused_idempotent(t, 2);
                CHECK((fused - young_idempotent(t, 2)).is_zero_known());
            }
        }
    }
    for (int n = 2; n <= 3; ++n) {
        for (const auto& shape : shapes_of(n)) {
            for (const auto& t : standard_tableaux(shape)) {
                auto fused = fused_idempotent(t, 3);
                CHECK((fused - young_idempotent(t, 3)).is_zero_known());
            }
        }
    }
}

TEST_CASE("contents follow the diagonals") {
    auto t = Tableau::from_rows({{1, 3, 4}, {2, 5}});
    CHECK(content_list(t) == std::vector<int>{0, -1, 1, 2, 0});
    CHECK(t.content_of(4) == 2);
    CHECK(t.row_of(5) == 1);
    CHECK(t.col_of(5) == 1);
}
