#include "mq/reduce.hpp"

#include <cmath>

#include "mq/rng.hpp"

namespace mq {
namespace {

int floor_log2(int t) {
    int b = 0;
    while ((2 << b) <= t) ++b;  // largest b with 2^b <= t
    return b;
}

}  // namespace

LiftResult lift_f2_to_c(const PolySystem& sys_f2) {
    if (sys_f2.field() != Field::kF2)
        throw DimensionError("lift_f2_to_c expects an F2-tagged system");
    if (sys_f2.total_degree() > 2)
        throw DimensionError("lift_f2_to_c expects a quadratic system");
    const int n = sys_f2.num_vars();
    const int m = sys_f2.size();

    std::vector<int> bits(m);
    int total_slacks = 0;
    for (int i = 0; i < m; ++i) {
        const int t = sys_f2.polys()[i].sparsity();
        if (t == 0)
            throw DimensionError("lift_f2_to_c: empty polynomial at index " +
                                 std::to_string(i));
        bits[i] = floor_log2(t);
        total_slacks += bits[i];
    }

    LiftResult out;
    out.num_original_vars = n;
    out.num_vars = n + total_slacks;
    out.num_eqs = n + m + total_slacks;
    out.system = PolySystem(out.num_vars, Field::kC);

    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;

    int next_slack = n;
    for (int i = 0; i < m; ++i) {
        // reindexed keeps the F2 tag; rebuild as a C polynomial
        Polynomial src_c(sys_f2.polys()[i].reindexed(out.num_vars, identity));
        Polynomial main_eq(out.num_vars, Field::kC);
        for (const auto& [mono, c] : src_c.terms()) main_eq.add_term(mono, c);
        for (int b = 1; b <= bits[i]; ++b) {
            const int idx = next_slack++;
            out.slack_vars.push_back(SlackVar{idx, i, b});
            main_eq.add_term(Monomial::variable(out.num_vars, idx),
                             -Rational(Int(1) << b));
        }
        out.system.add(std::move(main_eq));
    }
    for (const auto& sv : out.slack_vars)
        out.system.add(field_equation(out.num_vars, sv.index));
    for (int j = 0; j < n; ++j)
        out.system.add(field_equation(out.num_vars, j));
    out.system.set_includes_field_equations(true);
    return out;
}

IsolationAttempt vv_augment(const PolySystem& sys, int k, uint64_t seed,
                            int num_x_vars) {
    if (sys.field() != Field::kC)
        throw DimensionError("vv_augment expects a C-tagged system");
    const int nx = num_x_vars < 0 ? sys.num_vars() : num_x_vars;
    if (k < 0 || k > nx)
        throw DimensionError("vv_augment requires 0 <= k <= number of x-variables");

    IsolationAttempt out;
    out.k = k;
    out.seed = seed;

    Rng rng(seed);
    PolySystem rows(nx, Field::kF2);
    for (int r = 0; r < k + 2; ++r) {
        Polynomial row(nx, Field::kF2);
        while (true) {
            row = Polynomial(nx, Field::kF2);
            uint64_t mask = 0;
            for (int i = 0; i < nx; ++i)
                if (coin(rng)) mask |= 1ULL << i;
            if (mask == 0) continue;  // degenerate row without variables
            for (int i = 0; i < nx; ++i)
                if ((mask >> i) & 1ULL)
                    row.add_term(Monomial::variable(nx, i), Rational(1));
            if (coin(rng)) row.add_term(Monomial::one(nx), Rational(1));
            break;
        }
        out.affine_rows.push_back(row);
        rows.add(std::move(row));
    }

    out.lifted = lift_f2_to_c(rows);

    // Embed: x-variables keep their indices, new slacks go after sys's
    // variables. Field equations for x-variables are already part of sys.
    const int new_slacks = out.lifted.num_vars - nx;
    const int total = sys.num_vars() + new_slacks;
    std::vector<int> embed(out.lifted.num_vars);
    for (int i = 0; i < nx; ++i) embed[i] = i;
    for (int j = 0; j < new_slacks; ++j) embed[nx + j] = sys.num_vars() + j;

    std::vector<int> widen(sys.num_vars());
    for (int i = 0; i < sys.num_vars(); ++i) widen[i] = i;

    out.combined = PolySystem(total, Field::kC);
    for (const auto& p : sys.polys())
        out.combined.add(p.reindexed(total, widen));
    for (int i = 0; i < out.lifted.system.size(); ++i) {
        const Polynomial& p = out.lifted.system.polys()[i];
        auto fv = field_equation_var(p);
        if (fv && *fv < nx) continue;  // skip duplicate x field equations
        out.combined.add(p.reindexed(total, embed));
    }
    out.combined.set_includes_field_equations(sys.includes_field_equations());
    return out;
}

std::vector<std::pair<int, int>> isolation_schedule(int n, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw DimensionError("isolation_schedule requires 0 < eps < 1");
    const int trials =
        std::max(1, static_cast<int>(std::ceil(8.0 * std::log((n + 1) / eps))));
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k <= n; ++k) out.emplace_back(k, trials);
    return out;
}

NormalizeResult normalize_constants(const PolySystem& sys) {
    if (sys.field() != Field::kC)
        throw DimensionError("normalize_constants expects a C-tagged system");
    NormalizeResult out;

    int pivot = -1;
    for (int i = 0; i < sys.size(); ++i) {
        if (sys.polys()[i].constant_term() == 0) continue;
        if (pivot < 0 ||
            sys.polys()[i].sparsity() < sys.polys()[pivot].sparsity())
            pivot = i;
    }
    if (pivot < 0) {
        out.zero_solution = true;
        return out;
    }
    out.pivot_source_index = pivot;

    const Rational c1 = sys.polys()[pivot].constant_term();
    Polynomial f1 = sys.polys()[pivot].scaled(Rational(-1) / c1);

    out.system = PolySystem(sys.num_vars(), Field::kC);
    out.system.add(f1);
    for (int i = 0; i < sys.size(); ++i) {
        if (i == pivot) continue;
        const Rational ci = sys.polys()[i].constant_term();
        Polynomial fi = sys.polys()[i];
        if (ci != 0) fi.add_scaled(f1, ci);
        out.system.add(std::move(fi));
    }
    out.system.set_includes_field_equations(sys.includes_field_equations());
    return out;
}

}  // namespace mq
