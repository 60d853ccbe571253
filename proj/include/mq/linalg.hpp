#pragma once

#include <utility>
#include <vector>

#include "mq/errors.hpp"
#include "mq/rational.hpp"

namespace mq {

struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> data;  // row-major

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), data(size_t(r) * c, Rational(0)) {}

    Rational& at(int r, int c) { return data[size_t(r) * cols + c]; }
    const Rational& at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

/// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<int, Rational>>;

struct SparseMatrixQ {
    int rows = 0;
    int cols = 0;
    std::vector<SparseRow> row;

    long nnz() const;
    RatMatrix dense() const;
    std::vector<double> dense_double() const;  // row-major
    RatVec multiply(const RatVec& x) const;
};

SparseRow sparse_row_axpy(const SparseRow& a, const Rational& c, const SparseRow& b);

int rank(RatMatrix m);
/// Rank by exact elimination with a min-fill pivot heuristic; intended for
/// the sparse construction matrices.
int sparse_rank(SparseMatrixQ m);

/// Solves the square system a x = b. Returns false when a is singular.
bool solve_linear(RatMatrix a, RatVec b, RatVec& x);

/// Particular solution of a x = b with free variables set to zero; a may be
/// rectangular or rank deficient. Returns false when the system is
/// inconsistent.
bool solve_general(RatMatrix a, RatVec b, RatVec& x);

struct LdltResult {
    bool positive_definite = false;
    /// Pivots produced before failure (all of them on success).
    RatVec pivots;
};

/// LDL^T of a symmetric matrix without pivoting; positive_definite is true
/// iff the factorization completes with every pivot > 0.
LdltResult ldlt_pivots(const RatMatrix& sym);

enum class LsqStatus { kUnique, kRankDeficient };

struct LsqResult {
    LsqStatus status = LsqStatus::kRankDeficient;
    RatVec x;                  // valid when status == kUnique
    bool residual_zero = false;  // whether M x == b exactly
};

/// Exact least squares through the normal equations. status == kUnique means
/// M has full column rank, in which case x = pseudoinverse(M) * b.
LsqResult least_squares_normal(const SparseMatrixQ& m, const SparseRow& b);

/// Whether M y = b admits any solution (rank test on the augmented matrix).
bool system_consistent(const SparseMatrixQ& m, const SparseRow& b);

}  // namespace mq
