#pragma once

#include <functional>
#include <map>
#include <vector>

#include "mq/macaulay.hpp"
#include "mq/svd.hpp"

namespace mq {

/// The vector indexed by monomials whose coordinate at exponent e is
/// prod_i a_i^{e_i}. Kept lazy: at max degree 3n the nonzero support is
/// (d+1)^h - 1 which is far past materialization range.
struct MonomialSolutionVector {
    Assignment source;
    DegreeKind kind = DegreeKind::kMax;
    int degree = 0;

    /// Number of nonzero coordinates, summed support-size by support-size;
    /// equals the closed forms (d+1)^h - 1 and C(d+h,h) - 1.
    Int nonzero_count() const;
    /// Squared norm; coordinates are 0/1 so this equals nonzero_count.
    Int norm_sq() const;
    std::map<Monomial, Rational, MonomialLess> materialize(long cap = 2000000) const;
};

MonomialSolutionVector monomial_solution_vector(const Assignment& a,
                                                DegreeKind kind, int d);

/// Closed forms for the squared norm.
Int msv_norm_sq_closed(int h, int d, DegreeKind kind);
/// Independent route: sum over support sizes of C(h,s) * c_s^d.
Int msv_norm_sq_counting(int h, int d, DegreeKind kind);

/// Number of monomials of degree <= d using exactly s fixed variables:
/// d^s for max degree, C(d,s) for total degree.
Int monomials_on_support(int d, int s, DegreeKind kind);

/// Number of nonempty subsets of an s-set with at most d elements; the
/// squared norm of a multilinear monomial solution vector of weight s and
/// the support size of its measurement distribution.
Int nonempty_subsets_up_to(int s, int d);

struct ShortestAffineResult {
    bool origin_in_hull = false;
    Rational gamma_star;  // squared length of the shortest vector in the hull
    RatVec weights;       // affine weights, sum 1 (empty when origin in hull)
    RatVec point;         // V * weights
};

/// Shortest vector in the affine hull of the given vectors via the exact
/// Gram system G w = 1. The origin lies in the hull exactly when that system
/// is inconsistent.
ShortestAffineResult shortest_affine_norm(const std::vector<RatVec>& vectors);

struct GramSpec {
    int n = 0;
    int d = 0;
    DegreeKind kind = DegreeKind::kMax;
    RatMatrix g;  // n x n, entries G_{ij} = sum_s c_s^d C(i,s) C(j,s) / C(n,s)
};

GramSpec gram_symmetrized(int n, int d, DegreeKind kind);

/// Enumeration oracle for the same matrix: averages the monomial solution
/// vectors over all weight-h assignments and takes inner products. Only for
/// small n (full materialization).
RatMatrix gram_from_enumeration(int n, int d, DegreeKind kind);

/// 1 / <1, (G^(h))^{-1} 1> over the bottom-right (n-h+1) square minor;
/// equals the largest gamma with G^(h) - gamma 11^T psd. Throws when the
/// minor is singular (happens only when d < n).
Rational gram_minor_bound(const GramSpec& gram, int h);

using GammaRule = std::function<Rational(int)>;

struct PdVerdict {
    int h = 0;
    Rational gamma;
    bool certified = false;
    RatVec pivots;
};

/// For each h in [1..n], certifies G^(h) - gamma(h) 11^T positive definite by
/// exact LDL^T (every pivot > 0). Defaults: gamma(h) = h^h / 2, max degree
/// d = 3n. A failed certification is a verdict, not an error.
std::vector<PdVerdict> certify_pd_bound(int n, const GammaRule& rule = nullptr,
                                        int d = -1,
                                        DegreeKind kind = DegreeKind::kMax);

struct SearchCosts {
    int n = 0, h = 0, d = -1;
    Int weight_h_count;      // C(n,h)
    Int cumulative_count;    // sum_{j<=h} C(n,j)
    bool entropy_defined = false;  // needs 1 <= h <= n/2
    bool entropy_bound_holds = false;  // squared comparison, exact
    bool geometric_defined = false;    // needs n - 2h + 1 > 0
    Rational geometric_bound;          // C(n,h) (n-h+1) / (n-2h+1)
    bool geometric_bound_holds = false;
    double grover_queries = 0.0;         // sqrt(C(n,h))
    double grover_weight_sweep = 0.0;    // h sqrt(C(n,h))
    double grover_unknown_weight = 0.0;  // h^(1/4) sqrt(C(n,h))
    double qls_bound_max = 0.0;    // sqrt((d+1)^h - 1), when d supplied
    double qls_bound_total = 0.0;  // sqrt(C(d+h,h) - 1), when d supplied
};

SearchCosts search_costs(int n, int h, int d = -1);

struct BoundReport {
    Flavor flavor = Flavor::kBoolean;
    DegreeKind kind = DegreeKind::kTotal;
    int degree = 0;
    int num_vars = 0;
    int matrix_rows = 0, matrix_cols = 0;
    int num_solutions = 0;
    int min_weight = 0;
    bool weights_equal = false;

    double matrix_norm = 0.0;
    double kappa = 0.0;
    double kappa_b = 0.0;
    double b_norm = 0.0;
    double pinv_b_norm = 0.0;

    double corollary_bound = 0.0;  // (1/2) sqrt((2^h - 1)/t), Boolean flavor
    double theorem_bound = 0.0;    // sqrt((c - 1)/t) with c = (d+1)^h or C(d+h,h)
    double msv_norm = 0.0;         // ||y^(a)|| at the minimum weight
    /// | kappa_b ||b|| / ||M|| - ||y^(a)|| | for unique-solution systems.
    double unique_identity_gap = -1.0;

    SearchCosts costs;
};

/// Builds the requested matrix of a normalized system, computes kappa and
/// kappa_b by SVD, certifies the solution structure by brute force, and
/// fills in the analytic bounds.
BoundReport analyze_system(const PolySystem& sysC_normalized, Flavor flavor,
                           DegreeKind kind, int d,
                           const BuildOptions& opts = {});

}  // namespace mq
