#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mq/polynomial.hpp"

namespace mq {

struct SlackVar {
    int index;     // position in the lifted variable space
    int src_poly;  // equation the slack belongs to
    int bit;       // binary weight exponent, value contributes 2^bit
};

/// Result of lifting an F2 system to C with binary slack variables: each
/// equation f_i = 0 (mod 2) becomes f_i - sum_b 2^b y_ib = 0 over C together
/// with field equations for every original and slack variable.
struct LiftResult {
    LiftResult() : system(0, Field::kC) {}

    PolySystem system;  // C-tagged, field equations included
    int num_original_vars = 0;
    std::vector<SlackVar> slack_vars;
    int num_vars = 0;
    int num_eqs = 0;
};

/// Lifts a nonempty F2 quadratic system. The solution sets correspond
/// bijectively: an F2 solution extends uniquely by writing each integer
/// evaluation (always even) in binary on the slack bits, and any C solution
/// projects onto the original variables.
LiftResult lift_f2_to_c(const PolySystem& sys_f2);

struct IsolationAttempt {
    IsolationAttempt() : combined(0, Field::kC) {}

    int k = 0;
    uint64_t seed = 0;
    /// k+2 random affine rows over the leading x-variables, as F2 polynomials.
    std::vector<Polynomial> affine_rows;
    /// Lift of the affine rows alone (over the x-variables plus new slacks).
    LiftResult lifted;
    /// sys + lifted rows + slack field equations, on the widened space.
    PolySystem combined;
};

/// Appends k+2 uniformly random affine F2 constraints over the x-variables,
/// lifted to C. Rows with no variables are resampled. Deterministic per seed.
/// num_x_vars < 0 means every variable of sys counts as an x-variable.
IsolationAttempt vv_augment(const PolySystem& sys, int k, uint64_t seed,
                            int num_x_vars = -1);

/// Trial schedule for the isolation loop: for every k in {0..n},
/// ceil(8 ln((n+1)/eps)) trials, so a correct guess fails entirely with
/// probability at most (7/8)^trials <= eps/(n+1).
std::vector<std::pair<int, int>> isolation_schedule(int n, double eps);

struct NormalizeResult {
    /// True when no polynomial had a constant term; the all-zero point is
    /// then a solution and no normalized system is produced.
    bool zero_solution = false;
    PolySystem system;
    int pivot_source_index = -1;  // index in the input of the chosen pivot

    NormalizeResult() : system(0, Field::kC) {}
};

/// Rewrites the system so exactly one polynomial carries a constant term,
/// equal to -1, by exact row operations (solution set unchanged). The pivot
/// is the constant-term polynomial with the fewest terms, ties by index.
NormalizeResult normalize_constants(const PolySystem& sys);

}  // namespace mq
