#include <algorithm>

#include "suites_impl.hpp"
#include "yv/gseries.hpp"
#include "yv/tensor.hpp"
#include "yv/variables.hpp"
#include "yv/young.hpp"

namespace yv {
namespace impl {

namespace {

const int kU = var_id("u");
const int kV = var_id("v");
const int kZ = var_id("z");

std::string entry_label(uint32_t row, uint32_t col) {
    return "entry (" + std::to_string(row) + "," + std::to_string(col) + ")";
}

// First nonzero entry of an exact operator, for residual messages.
void check_exact_zero(Outcome& out, const TensorOp<RatFunc>& op, const std::string& where) {
    if (op.is_zero_known()) return;
    for (const auto& [pos, val] : op.entries())
        if (val != RatFunc()) {
            out.fail(entry_label(pos.first, pos.second) + " = " + val.str() + " (" + where + ")");
            return;
        }
}

void check_series_zero(Outcome& out, const TensorOp<HSeries>& op, int prec,
                       const std::string& where) {
    if (is_zero_mod(op, prec)) return;
    for (const auto& [pos, val] : op.entries())
        for (int k = 0; k < prec && k < val.prec(); ++k)
            if (val.coeff(k) != RatFunc()) {
                out.fail(entry_label(pos.first, pos.second) + " = " + val.coeff(k).str() +
                         " at h^" + std::to_string(k) + " (" + where + ")");
                return;
            }
}

}  // namespace

SuiteResult suite_ybe(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;
    const Poly pu = Poly::variable(kU);
    const Poly pv = Poly::variable(kV);
    auto r12 = yang_r(dim, pu).embed(3, {0, 1});
    auto r13 = yang_r(dim, pu + pv).embed(3, {0, 2});
    auto r23 = yang_r(dim, pv).embed(3, {1, 2});

    Outcome out;
    check_exact_zero(out, r12 * r13 * r23 - r23 * r13 * r12, "braid residual");
    return finish(spec, "ybe", {{"N", std::to_string(spec.N)}}, out,
                  "exact identity of rational functions in two spectral variables", t0);
}

SuiteResult suite_unitarity(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;
    const int prec = spec.h_order;
    const RatFunc x = RatFunc::variable(kU);
    auto rp = yang_rbar(dim, x, Rational(0), prec);
    auto rm = yang_rbar(dim, -x, Rational(0), prec);

    Outcome out;
    check_series_zero(out, rp * rm - TensorOp<HSeries>::identity(2, dim), prec, "r(u) r(-u) - 1");
    return finish(spec, "unitarity",
                  {{"N", std::to_string(spec.N)}, {"h_order", std::to_string(prec)}}, out,
                  "holds mod h^" + std::to_string(prec) + ", coefficients exact in u", t0);
}

SuiteResult suite_crossing(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;
    const int prec = spec.h_order;
    const RatFunc x = RatFunc::variable(kU);
    auto rinv = invert_series(yang_rbar(dim, x, Rational(0), prec), prec);
    auto rsh = yang_rbar(dim, x, Rational(dim), prec);  // argument shifted by N h
    auto id = TensorOp<HSeries>::identity(2, dim);

    Outcome out;
    check_series_zero(out, rinv.transpose_leg(0) * rsh.transpose_leg(0) - id, prec,
                      "transposed product");
    check_series_zero(out, lr_product(rinv, rsh) - id, prec, "outer-inner product");
    check_series_zero(out, rl_product(rinv, rsh) - id, prec, "inner-outer product");
    return finish(spec, "crossing",
                  {{"N", std::to_string(spec.N)}, {"h_order", std::to_string(prec)}}, out,
                  "holds mod h^" + std::to_string(prec) + ", coefficients exact in u", t0);
}

SuiteResult suite_gseries(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int orders = 8;
    const auto& g = norm_scalar_coeffs(spec.N, orders);

    Outcome out;
    if (g.size() < 2 || g[1] != Rational(1, spec.N))
        out.fail("leading coefficient " + (g.size() < 2 ? std::string("missing") : to_string(g[1])) +
                 ", expected 1/" + std::to_string(spec.N));
    auto res = norm_scalar_residual(spec.N, g, orders);
    for (size_t k = 0; k < res.size(); ++k)
        if (res[k] != 0) {
            out.fail("difference-equation residual " + to_string(res[k]) + " at order " +
                     std::to_string(k));
            break;
        }
    return finish(spec, "g-series",
                  {{"N", std::to_string(spec.N)}, {"orders", std::to_string(orders)}}, out,
                  "normalizing series exact through order u^-" + std::to_string(orders), t0);
}

SuiteResult suite_usflg(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;
    const Poly pu = Poly::variable(kU);
    const Poly pv = Poly::variable(kV);
    auto r = yang_r(dim, pu - pv);
    auto rt = yang_r(dim, -pu - pv).transpose_leg(0);
    auto g1 = matrix_on_leg<RatFunc>(2, dim, 0, spec.twist.G);
    auto g2 = matrix_on_leg<RatFunc>(2, dim, 1, spec.twist.G);

    Outcome out;
    check_exact_zero(out, r * g1 * rt * g2 - g2 * rt * g1 * r, "reflection compatibility");
    return finish(spec, "usflg", base_params(spec), out,
                  "exact identity of rational functions in two spectral variables", t0);
}

SuiteResult suite_shuffle(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;
    const Rational c = spec.level_set ? spec.level : critical_level(spec.N);
    const Poly pz = Poly::variable(kZ);
    const Poly ph = Poly::variable(kVarH);
    Poly u[4];
    for (int i = 0; i < 4; ++i) u[i] = Poly::variable(var_id("u" + std::to_string(i + 1)));

    // Dressing arguments between legs i and j, plain and level-shifted.
    auto barg = [&](int i, int j) { return -pz - pz - u[i] - u[j]; };
    auto harg = [&](int i, int j) { return barg(i, j) - ph.scaled(Rational(2 * c)); };
    auto rt = [&](const Poly& arg) { return yang_r(dim, arg).transpose_leg(0); };
    auto emb = [&](const TensorOp<RatFunc>& op, int a, int b) { return op.embed(4, {a, b}); };

    // Neighbour exchange on legs (1,2); outer legs 0 and 3.
    auto ex = emb(yang_r(dim, u[1] - u[2]), 1, 2);

    Outcome out;
    {
        auto a = emb(rt(barg(0, 1)), 0, 1);
        auto b = emb(rt(barg(0, 2)), 0, 2);
        check_exact_zero(out, ex * a * b - b * a * ex, "left dressing, plain");
    }
    {
        auto a = emb(rt(barg(1, 3)), 1, 3);
        auto b = emb(rt(barg(2, 3)), 2, 3);
        check_exact_zero(out, ex * a * b - b * a * ex, "right dressing, plain");
    }
    {
        auto a = emb(invert_exact(rt(harg(0, 1))), 0, 1);
        auto b = emb(invert_exact(rt(harg(0, 2))), 0, 2);
        check_exact_zero(out, ex * b * a - a * b * ex, "left dressing, inverse");
    }
    {
        auto a = emb(invert_exact(rt(harg(1, 3))), 1, 3);
        auto b = emb(invert_exact(rt(harg(2, 3))), 2, 3);
        check_exact_zero(out, ex * b * a - a * b * ex, "right dressing, inverse");
    }
    return finish(spec, "shuffle", {{"N", std::to_string(spec.N)}, {"level", to_string(c)}}, out,
                  "exact identities of rational functions on four tensor legs", t0);
}

SuiteResult suite_fusion(const SuiteSpec& spec) {
    auto t0 = Clock::now();
    const int dim = spec.N;

    std::vector<Partition> shapes;
    if (!spec.nu.empty()) {
        require(is_partition(spec.nu), "nu must be a partition");
        require(static_cast<int>(spec.nu.size()) <= spec.N, "nu must have at most N rows");
        shapes.push_back(spec.nu);
    } else {
        // Everything with at most four boxes and at most N rows.
        static const std::vector<Partition> all = {{1},       {2},    {1, 1},    {3},
                                                   {2, 1},    {1, 1, 1}, {4},    {3, 1},
                                                   {2, 2},    {2, 1, 1}, {1, 1, 1, 1}};
        for (const auto& p : all)
            if (static_cast<int>(p.size()) <= spec.N) shapes.push_back(p);
    }

    Outcome out;
    int checked = 0;
    for (const auto& shape : shapes) {
        std::vector<Tableau> fillings;
        if (!spec.tableau.empty()) {
            Tableau u = Tableau::from_rows(spec.tableau);
            require(u.shape == shape, "tableau shape must match nu");
            fillings.push_back(u);
        } else {
            fillings = standard_tableaux(shape);
        }
        for (const auto& u : fillings) {
            const std::string where = "shape " + fmt_partition(shape) + " tableau " + u.str();
            auto oracle = young_idempotent(u, dim);
            auto fused = fused_idempotent(u, dim);
            check_exact_zero(out, fused - oracle, where + ", oracle mismatch");
            check_exact_zero(out, fused * fused - fused, where + ", not idempotent");
            if (static_cast<int>(shape.size()) == spec.N &&
                std::all_of(shape.begin(), shape.end(), [](int r) { return r == 1; }))
                check_exact_zero(out, fused - antisymmetrizer(spec.N, dim),
                                 where + ", column case");
            ++checked;
        }
    }
    return finish(spec, "fusion",
                  {{"N", std::to_string(spec.N)},
                   {"nu", spec.nu.empty() ? "all with <=4 boxes" : fmt_partition(spec.nu)},
                   {"tableaux", std::to_string(checked)}},
                  out, "consecutive evaluation agrees exactly with the seminormal idempotent", t0);
}

}  // namespace impl
}  // namespace yv
