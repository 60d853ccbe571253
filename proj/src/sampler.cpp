#include "mq/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace mq {
namespace {

Rational dyadic_uniform(Rng& rng) {
    const uint64_t hi = rng(), lo = rng();
    Int num(hi);
    num <<= 64;
    num += Int(lo);
    Int den(1);
    den <<= 128;
    return rational_of(num, den);
}

}  // namespace

uint64_t MeasurementDistribution::sample(Rng& rng) const {
    Rational u = dyadic_uniform(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    size_t idx = it == cumulative.end() ? cumulative.size() - 1
                                        : static_cast<size_t>(it - cumulative.begin());
    return support[idx];
}

MeasurementDistribution measurement_distribution(
    const std::vector<Monomial>& cols, const RatVec& y) {
    if (cols.size() != y.size())
        throw DimensionError("measurement_distribution: label/coordinate mismatch");
    Rational total(0);
    for (const auto& v : y) total += v * v;
    if (total == 0)
        throw Error("measurement_distribution of the zero vector");

    MeasurementDistribution out;
    Rational cum(0);
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0) continue;
        Rational p = y[i] * y[i] / total;
        cum += p;
        out.support.push_back(cols[i].mask());
        out.probs.push_back(p);
        out.cumulative.push_back(cum);
    }
    return out;
}

Rational see_probability(int s, int d) {
    if (d < 1 || d > s)
        throw DimensionError("see_probability requires 1 <= d <= s");
    Int num(0), den(0);
    for (int i = 1; i <= d; ++i) {
        num += binomial(s - 1, i - 1);
        den += binomial(s, i);
    }
    return rational_of(num, den);
}

int required_rounds(int s, int d, double eps) {
    if (d < 1 || d > s)
        throw DimensionError("required_rounds requires 1 <= d <= s");
    if (!(eps > 0.0 && eps < 1.0))
        throw DimensionError("required_rounds requires 0 < eps < 1");
    const double r = 6.0 * (static_cast<double>(s) / d) * std::log(s / eps);
    return std::max(1, static_cast<int>(std::ceil(r)));
}

namespace {

struct SolveOutcome {
    ExtractStatus status = ExtractStatus::kNonUnique;
    bool solved = false;
    bool exact = false;
    RatVec y;
    MacaulaySystem built;
};

// One degree step: build the multilinear system and try to pin down its
// unique solution, exactly below the column cap and through a floating-point
// solve with exact residual verification above it.
SolveOutcome try_degree(const PolySystem& f1, int d, const ExtractOptions& opts) {
    SolveOutcome out;
    BuildOptions build = opts.build;
    build.allow_truncated_boolean = true;
    build.boolean_col_cap = opts.col_cap;
    try {
        out.built = build_boolean_macaulay(f1, d, build);
    } catch (const CapacityError&) {
        out.status = ExtractStatus::kCapacity;
        return out;
    }
    const int cols = out.built.m.cols();
    if (out.built.m.rows() < cols) return out;  // rank deficient for sure

    if (cols <= opts.exact_col_cap) {
        LsqResult lsq = least_squares_normal(out.built.m.mat, out.built.b);
        if (lsq.status != LsqStatus::kUnique) return out;
        if (!lsq.residual_zero) {
            out.status = ExtractStatus::kInfeasible;
            return out;
        }
        out.solved = true;
        out.exact = true;
        out.y = std::move(lsq.x);
        return out;
    }

    DenseD md(out.built.m.rows(), cols);
    md.data = out.built.m.mat.dense_double();
    std::vector<double> bd = out.built.b_double();
    SvdResult fact = svd(md, &bd);
    if (fact.numeric_rank < cols) return out;
    RatVec rounded(cols);
    for (int i = 0; i < cols; ++i) {
        double r = std::round(fact.pinv_b[i]);
        if (std::abs(fact.pinv_b[i] - r) > 0.25) return out;
        rounded[i] = Rational(static_cast<long>(r));
    }
    RatVec bvec = out.built.b_dense();
    if (out.built.m.mat.multiply(rounded) != bvec) return out;
    out.solved = true;
    out.exact = false;
    out.y = std::move(rounded);
    return out;
}

}  // namespace

ExtractionResult run_extraction(const PolySystem& sysC, double eps,
                                uint64_t seed, const ExtractOptions& opts) {
    if (sysC.field() != Field::kC)
        throw DimensionError("run_extraction expects a C-tagged system");
    int constants = 0;
    for (const auto& p : sysC.polys())
        if (p.constant_term() != 0) ++constants;
    if (constants != 1)
        throw DimensionError("run_extraction expects a normalized system");

    const int n = sysC.num_vars();
    PolySystem f1(n, Field::kC);
    for (const auto& p : sysC.non_field_polys()) f1.add(p);
    if (f1.size() == 0)
        throw DimensionError("run_extraction: no non-field polynomials");

    std::vector<int> degrees;
    if (opts.degree >= 0) {
        degrees.push_back(std::min(opts.degree, n));
    } else {
        for (int d = 1; d <= std::min(opts.adaptive_max_degree, n); ++d)
            degrees.push_back(d);
        if (n <= opts.full_degree_var_cap &&
            (degrees.empty() || degrees.back() < n))
            degrees.push_back(n);
    }

    ExtractionResult res;
    bool any_capacity = false;
    SolveOutcome solved;
    for (int d : degrees) {
        SolveOutcome attempt = try_degree(f1, d, opts);
        if (attempt.status == ExtractStatus::kCapacity) {
            any_capacity = true;
            break;  // larger degrees only get bigger
        }
        if (attempt.status == ExtractStatus::kInfeasible) {
            res.status = ExtractStatus::kInfeasible;
            return res;
        }
        if (attempt.solved) {
            solved = std::move(attempt);
            res.degree_used = d;
            break;
        }
    }
    if (!solved.solved) {
        res.status = any_capacity ? ExtractStatus::kCapacity : ExtractStatus::kNonUnique;
        return res;
    }

    res.status = ExtractStatus::kOk;
    res.exact_solve = solved.exact;

    RatVec y = std::move(solved.y);
    if (opts.noise > 0.0) {
        // Perturb the normalized state by an l2 error of `noise`, then sample
        // from the squared coordinates of the perturbed state.
        std::vector<double> yd(y.size());
        double nrm = 0.0;
        for (size_t i = 0; i < y.size(); ++i) {
            yd[i] = to_double(y[i]);
            nrm += yd[i] * yd[i];
        }
        nrm = std::sqrt(nrm);
        Rng nrng(derive_seed(seed, 0x6e6f6973));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> delta(y.size());
        double dnrm = 0.0;
        for (auto& v : delta) {
            v = gauss(nrng);
            dnrm += v * v;
        }
        dnrm = std::sqrt(dnrm);
        for (size_t i = 0; i < y.size(); ++i) {
            yd[i] = yd[i] / nrm + opts.noise * delta[i] / dnrm;
            y[i] = Rational(yd[i]);  // exact binary-to-rational conversion
        }
    }

    MeasurementDistribution dist =
        measurement_distribution(solved.built.m.col_labels, y);

    const int d_eff = std::min(res.degree_used, n);
    const int r = required_rounds(n, d_eff, eps);
    res.trace.rounds_planned = r;
    res.trace.eps = eps;

    Rng rng(seed);
    uint64_t recovered = 0;
    for (int i = 0; i < r; ++i) {
        uint64_t s = dist.sample(rng);
        recovered |= s;
        res.trace.rounds.push_back(ExtractionRound{s, recovered});
    }
    res.assignment = Assignment::from_mask(n, recovered);
    res.verified = sysC.eval_zero(res.assignment);
    res.trace.success = res.verified;
    return res;
}

PipelineResult full_pipeline(const PolySystem& sysF2, double eps, uint64_t seed,
                             const PipelineOptions& opts) {
    if (sysF2.field() != Field::kF2)
        throw DimensionError("full_pipeline expects an F2-tagged system");
    const int n = sysF2.num_vars();
    LiftResult lifted = lift_f2_to_c(sysF2);

    PipelineResult out;
    uint64_t attempt_index = 0;
    for (const auto& [k, trials] : isolation_schedule(n, eps)) {
        for (int t = 0; t < trials; ++t) {
            const uint64_t child = derive_seed(seed, attempt_index++);
            ++out.attempts;
            IsolationAttempt attempt = vv_augment(lifted.system, k, child, n);
            NormalizeResult norm = normalize_constants(attempt.combined);

            Assignment candidate;
            if (norm.zero_solution) {
                candidate = Assignment(std::vector<uint8_t>(n, 0));
            } else {
                ExtractionResult ext = run_extraction(
                    norm.system, eps, derive_seed(child, 1), opts.extract);
                out.total_rounds += static_cast<long>(ext.trace.rounds.size());
                if (ext.status == ExtractStatus::kCapacity) {
                    ++out.capacity_skips;
                    continue;
                }
                if (ext.status != ExtractStatus::kOk) continue;
                std::vector<uint8_t> bits(ext.assignment.bits.begin(),
                                          ext.assignment.bits.begin() + n);
                candidate = Assignment(std::move(bits));
            }

            bool good = true;
            for (const auto& p : sysF2.polys())
                if (p.eval_mod2(candidate) != 0) {
                    good = false;
                    break;
                }
            if (good) {
                out.success = true;
                out.assignment = std::move(candidate);
                out.isolating_k = k;
                return out;
            }
        }
    }
    return out;
}

}  // namespace mq
