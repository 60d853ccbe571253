#pragma once

#include <cstdint>
#include <vector>

#include "mq/condition.hpp"
#include "mq/reduce.hpp"
#include "mq/rng.hpp"

namespace mq {

/// Distribution over the nonzero coordinates of a vector indexed by
/// multilinear monomials (equivalently, variable subsets): p(R) proportional
/// to y_R^2, exact rationals.
struct MeasurementDistribution {
    std::vector<uint64_t> support;  // subset masks, nonempty
    std::vector<Rational> probs;    // sum exactly 1
    std::vector<Rational> cumulative;

    /// Inverse-CDF draw using a 128-bit dyadic uniform.
    uint64_t sample(Rng& rng) const;
};

MeasurementDistribution measurement_distribution(
    const std::vector<Monomial>& cols, const RatVec& y);

/// Probability that one measurement reveals a fixed element of an s-element
/// support when subsets of size at most d are drawn uniformly:
/// sum_{i<=d} C(s-1,i-1) / sum_{i<=d} C(s,i).
Rational see_probability(int s, int d);

/// Rounds sufficient to recover the whole support with probability >= 1-eps:
/// ceil(6 (s/d) ln(s/eps)). The constant 6 closes the union bound on both
/// tail branches, exp(-r d/(2s)) for d <= s/3 and (5/6)^r otherwise.
int required_rounds(int s, int d, double eps);

struct ExtractionRound {
    uint64_t sampled = 0;
    uint64_t recovered = 0;  // cumulative union after this round
};

struct ExtractionTrace {
    int rounds_planned = 0;
    double eps = 0.0;
    std::vector<ExtractionRound> rounds;
    bool success = false;  // recovered support reproduced a verified solution
};

enum class ExtractStatus {
    kOk,
    kNonUnique,   // rank deficiency (or unresolved): caller should isolate
    kInfeasible,  // certified: the linear system has no exact solution
    kCapacity,    // materialization caps exceeded at every tried degree
};

struct ExtractOptions {
    /// Fixed total degree; -1 escalates through small degrees and falls back
    /// to d = n for small systems.
    int degree = -1;
    /// Optional l2 perturbation of the normalized state before sampling.
    double noise = 0.0;
    int exact_col_cap = 400;
    long col_cap = 3000;
    int adaptive_max_degree = 4;
    int full_degree_var_cap = 8;
    BuildOptions build;
};

struct ExtractionResult {
    ExtractStatus status = ExtractStatus::kNonUnique;
    Assignment assignment;
    ExtractionTrace trace;
    int degree_used = -1;
    bool exact_solve = false;
    bool verified = false;  // assignment satisfies sysC exactly
};

/// Classical stand-in for the linear-system solver step: solves the
/// multilinear system exactly (or in floating point with exact residual
/// verification at larger sizes), samples the measurement distribution for
/// the required number of rounds, and sets the union of sampled subsets to 1.
ExtractionResult run_extraction(const PolySystem& sysC_normalized, double eps,
                                uint64_t seed, const ExtractOptions& opts = {});

struct PipelineOptions {
    ExtractOptions extract;
};

struct PipelineResult {
    bool success = false;
    Assignment assignment;  // over the original variables
    long attempts = 0;
    long total_rounds = 0;
    long capacity_skips = 0;
    int isolating_k = -1;
};

/// End to end: lift the F2 system, normalize, loop the isolation schedule
/// over k with fresh randomness per attempt, run the extraction on each
/// attempt, and return the first candidate that satisfies every original
/// polynomial mod 2.
PipelineResult full_pipeline(const PolySystem& sysF2, double eps, uint64_t seed,
                             const PipelineOptions& opts = {});

}  // namespace mq
