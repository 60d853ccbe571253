#include "mq/condition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mq {

Int monomials_on_support(int d, int s, DegreeKind kind) {
    if (s == 0) return Int(1);
    return kind == DegreeKind::kMax ? int_pow(d, s) : binomial(d, s);
}

Int msv_norm_sq_closed(int h, int d, DegreeKind kind) {
    if (kind == DegreeKind::kMax) return int_pow(d + 1, h) - 1;
    return binomial(d + h, h) - 1;
}

Int msv_norm_sq_counting(int h, int d, DegreeKind kind) {
    Int total(0);
    for (int s = 1; s <= h; ++s)
        total += binomial(h, s) * monomials_on_support(d, s, kind);
    return total;
}

Int nonempty_subsets_up_to(int s, int d) {
    Int total(0);
    for (int i = 1; i <= std::min(s, d); ++i) total += binomial(s, i);
    return total;
}

Int MonomialSolutionVector::nonzero_count() const {
    return msv_norm_sq_counting(source.weight(), degree, kind);
}

Int MonomialSolutionVector::norm_sq() const { return nonzero_count(); }

std::map<Monomial, Rational, MonomialLess> MonomialSolutionVector::materialize(
    long cap) const {
    const int n = source.num_vars();
    Int count = kind == DegreeKind::kMax ? int_pow(degree + 1, n)
                                         : binomial(n + degree, degree);
    if (count > cap)
        throw CapacityError("monomial solution vector materialization over cap");
    std::map<Monomial, Rational, MonomialLess> out;
    const uint64_t am = source.mask();
    for (const auto& mono : enumerate_monomials(n, degree, kind)) {
        if (mono.is_constant()) continue;
        const uint64_t sm = mono.support_mask();
        if ((sm & am) == sm) out.emplace(mono, Rational(1));
    }
    return out;
}

MonomialSolutionVector monomial_solution_vector(const Assignment& a,
                                                DegreeKind kind, int d) {
    return MonomialSolutionVector{a, kind, d};
}

ShortestAffineResult shortest_affine_norm(const std::vector<RatVec>& vectors) {
    if (vectors.empty())
        throw DimensionError("shortest_affine_norm needs at least one vector");
    const int k = static_cast<int>(vectors.size());
    const size_t dim = vectors[0].size();
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw DimensionError("shortest_affine_norm: unequal vector lengths");

    RatMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            Rational g = dot(vectors[i], vectors[j]);
            gram.at(i, j) = g;
            if (i != j) gram.at(j, i) = g;
        }

    ShortestAffineResult out;
    RatVec w;
    if (!solve_general(gram, RatVec(k, Rational(1)), w)) {
        // 1 outside the column space of G: the hull passes through the origin.
        out.origin_in_hull = true;
        out.gamma_star = 0;
        return out;
    }
    Rational s(0);
    for (const auto& wi : w) s += wi;
    out.gamma_star = 1 / s;
    out.weights.resize(k);
    for (int i = 0; i < k; ++i) out.weights[i] = w[i] / s;
    out.point.assign(dim, Rational(0));
    for (int i = 0; i < k; ++i)
        for (size_t j = 0; j < dim; ++j) out.point[j] += out.weights[i] * vectors[i][j];
    return out;
}

GramSpec gram_symmetrized(int n, int d, DegreeKind kind) {
    if (n < 1 || d < 1)
        throw DimensionError("gram_symmetrized requires n >= 1 and d >= 1");
    GramSpec out;
    out.n = n;
    out.d = d;
    out.kind = kind;
    out.g = RatMatrix(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Rational sum(0);
            for (int s = 1; s <= std::min(i, j); ++s)
                sum += rational_of(monomials_on_support(d, s, kind) *
                                       binomial(i, s) * binomial(j, s),
                                   binomial(n, s));
            out.g.at(i - 1, j - 1) = sum;
            if (i != j) out.g.at(j - 1, i - 1) = sum;
        }
    return out;
}

RatMatrix gram_from_enumeration(int n, int d, DegreeKind kind) {
    std::vector<Monomial> monos = enumerate_monomials(n, d, kind);
    // Strip the constant; coordinates follow the canonical column order.
    std::vector<uint64_t> supports;
    for (const auto& m : monos)
        if (!m.is_constant()) supports.push_back(m.support_mask());

    std::vector<RatVec> sym(n + 1);
    for (int h = 1; h <= n; ++h) {
        RatVec acc(supports.size(), Rational(0));
        long count = 0;
        for (uint64_t am = 0; am < (1ULL << n); ++am) {
            if (std::popcount(am) != h) continue;
            ++count;
            for (size_t i = 0; i < supports.size(); ++i)
                if ((supports[i] & am) == supports[i]) acc[i] += 1;
        }
        for (auto& v : acc) v /= count;
        sym[h] = std::move(acc);
    }

    RatMatrix g(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Rational v = dot(sym[i], sym[j]);
            g.at(i - 1, j - 1) = v;
            if (i != j) g.at(j - 1, i - 1) = v;
        }
    return g;
}

Rational gram_minor_bound(const GramSpec& gram, int h) {
    const int n = gram.n;
    if (h < 1 || h > n) throw DimensionError("gram_minor_bound needs 1 <= h <= n");
    const int k = n - h + 1;
    RatMatrix minor(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            minor.at(i, j) = gram.g.at(h - 1 + i, h - 1 + j);
    RatVec w;
    if (!solve_linear(std::move(minor), RatVec(k, Rational(1)), w))
        throw Error("singular Gram minor (is d >= n?)");
    Rational s(0);
    for (const auto& wi : w) s += wi;
    return 1 / s;
}

std::vector<PdVerdict> certify_pd_bound(int n, const GammaRule& rule, int d,
                                        DegreeKind kind) {
    if (n < 1) throw DimensionError("certify_pd_bound requires n >= 1");
    if (d < 0) d = 3 * n;
    GammaRule gamma = rule;
    if (!gamma)
        gamma = [](int h) { return rational_of(int_pow(h, h), Int(2)); };

    GramSpec gram = gram_symmetrized(n, d, kind);
    std::vector<PdVerdict> out;
    for (int h = 1; h <= n; ++h) {
        const int k = n - h + 1;
        PdVerdict v;
        v.h = h;
        v.gamma = gamma(h);
        RatMatrix shifted(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                shifted.at(i, j) = gram.g.at(h - 1 + i, h - 1 + j) - v.gamma;
        LdltResult ldlt = ldlt_pivots(shifted);
        v.certified = ldlt.positive_definite;
        v.pivots = std::move(ldlt.pivots);
        out.push_back(std::move(v));
    }
    return out;
}

SearchCosts search_costs(int n, int h, int d) {
    if (h < 0 || h > n) throw DimensionError("search_costs needs 0 <= h <= n");
    SearchCosts out;
    out.n = n;
    out.h = h;
    out.d = d;
    out.weight_h_count = binomial(n, h);
    out.cumulative_count = 0;
    for (int j = 0; j <= h; ++j) out.cumulative_count += binomial(n, j);

    out.entropy_defined = h >= 1 && 2 * h <= n;
    if (out.entropy_defined) {
        // compare squares: (sum)^2 <= 9 h C(n,h)^2
        out.entropy_bound_holds = out.cumulative_count * out.cumulative_count <=
                                  Int(9) * h * out.weight_h_count * out.weight_h_count;
    }
    out.geometric_defined = n - 2 * h + 1 > 0 && h >= 1;
    if (out.geometric_defined) {
        out.geometric_bound = rational_of(out.weight_h_count * (n - h + 1),
                                          Int(n - 2 * h + 1));
        out.geometric_bound_holds =
            Rational(out.cumulative_count - 1) <= out.geometric_bound;
    }

    if (h == 0) {
        // the lone candidate is known, nothing to search
        out.grover_queries = 0.0;
        out.grover_weight_sweep = 0.0;
        out.grover_unknown_weight = 0.0;
    } else {
        const double c = to_double(out.weight_h_count);
        out.grover_queries = std::sqrt(c);
        out.grover_weight_sweep = h * std::sqrt(c);
        out.grover_unknown_weight = std::pow(h, 0.25) * std::sqrt(c);
    }
    if (d >= 0) {
        out.qls_bound_max = std::sqrt(to_double(msv_norm_sq_closed(h, d, DegreeKind::kMax)));
        out.qls_bound_total =
            std::sqrt(to_double(msv_norm_sq_closed(h, d, DegreeKind::kTotal)));
    }
    return out;
}

BoundReport analyze_system(const PolySystem& sysC, Flavor flavor,
                           DegreeKind kind, int d, const BuildOptions& opts) {
    BoundReport r;
    r.flavor = flavor;
    r.num_vars = sysC.num_vars();

    MacaulaySystem built;
    if (flavor == Flavor::kBoolean) {
        PolySystem f1(sysC.num_vars(), Field::kC);
        for (const auto& p : sysC.non_field_polys()) f1.add(p);
        built = build_boolean_macaulay(f1, d, opts);
    } else {
        built = build_macaulay(sysC, kind, d, opts);
    }
    r.kind = built.kind;
    r.degree = built.degree;
    r.matrix_rows = built.m.rows();
    r.matrix_cols = built.m.cols();

    DenseD md(built.m.rows(), built.m.cols());
    md.data = built.m.mat.dense_double();
    std::vector<double> bd = built.b_double();
    double bnorm = 0.0;
    for (double x : bd) bnorm += x * x;
    r.b_norm = std::sqrt(bnorm);

    SvdResult fact = svd(md, &bd);
    r.matrix_norm = fact.sigma_max;
    r.kappa = fact.numeric_rank > 0
                  ? fact.sigma_max / fact.sigma[fact.numeric_rank - 1]
                  : 0.0;
    r.pinv_b_norm = fact.pinv_b_norm;
    r.kappa_b = r.b_norm > 0 ? r.matrix_norm * r.pinv_b_norm / r.b_norm : 0.0;

    std::vector<Assignment> sols = brute_force_solutions(sysC);
    r.num_solutions = static_cast<int>(sols.size());
    if (!sols.empty()) {
        int hmin = sols[0].weight();
        bool equal = true;
        for (const auto& a : sols) {
            hmin = std::min(hmin, a.weight());
            if (a.weight() != sols[0].weight()) equal = false;
        }
        r.min_weight = hmin;
        r.weights_equal = equal;
        const double t = static_cast<double>(r.num_solutions);
        Int msv_sq = flavor == Flavor::kBoolean
                         ? nonempty_subsets_up_to(hmin, built.degree)
                         : msv_norm_sq_closed(hmin, built.degree, built.kind);
        r.msv_norm = std::sqrt(to_double(msv_sq));
        if (flavor == Flavor::kBoolean) {
            r.corollary_bound =
                0.5 * std::sqrt((std::pow(2.0, hmin) - 1.0) / t);
        } else {
            r.theorem_bound = std::sqrt(to_double(msv_sq) / t);
        }
        if (r.num_solutions == 1 && r.matrix_norm > 0) {
            r.unique_identity_gap =
                std::abs(r.kappa_b * r.b_norm / r.matrix_norm - r.msv_norm);
        }
        r.costs = search_costs(r.num_vars, hmin, built.degree);
    } else {
        r.costs = search_costs(r.num_vars, 0, built.degree);
    }
    return r;
}

}  // namespace mq
