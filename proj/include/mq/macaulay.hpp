#pragma once

#include <optional>
#include <vector>

#include "mq/linalg.hpp"
#include "mq/polynomial.hpp"

namespace mq {

enum class DegreeKind { kMax, kTotal };

std::string degree_kind_name(DegreeKind k);
DegreeKind degree_kind_from_name(const std::string& s);

int monomial_degree(const Monomial& m, DegreeKind kind);
int poly_degree(const Polynomial& p, DegreeKind kind);

/// All monomials of degree <= d under the kind, canonical order (constant
/// first).
std::vector<Monomial> enumerate_monomials(int n, int d, DegreeKind kind);

enum class Flavor { kPlain, kBoolean };

struct RowLabel {
    Monomial multiplier;
    int poly_index;

    bool operator==(const RowLabel& rhs) const {
        return poly_index == rhs.poly_index && multiplier == rhs.multiplier;
    }
};

/// Rows labeled by (multiplier, polynomial index), columns by the nontrivial
/// monomials in canonical order; exact rational entries.
struct LabeledSparseMatrix {
    std::vector<RowLabel> row_labels;
    std::vector<Monomial> col_labels;
    SparseMatrixQ mat;

    int rows() const { return mat.rows; }
    int cols() const { return mat.cols; }
};

/// The linear system M y = b: the constant column of the augmented
/// construction matrix is split off, negated, into b.
struct MacaulaySystem {
    Flavor flavor = Flavor::kPlain;
    DegreeKind kind = DegreeKind::kMax;
    int degree = 0;
    int num_vars = 0;
    LabeledSparseMatrix m;
    SparseRow b;  // (row index, value), sorted

    RatVec b_dense() const;
    std::vector<double> b_double() const;
};

struct BuildOptions {
    long plain_col_cap = 100000;
    /// Definitional materialization iterates all 2^n multilinear multipliers.
    int boolean_var_cap = 14;
    /// Past the var cap, rows whose multiplier has more than d variables are
    /// omitted; every such row is identically zero, so the linear system is
    /// unchanged. Requires multilinear input terms.
    bool allow_truncated_boolean = false;
    long boolean_col_cap = 100000;
};

/// Degree-d construction matrix: one row per (multiplier, f) with
/// degree(multiplier * f) <= d under the chosen degree kind, columns over all
/// nontrivial monomials of degree <= d. Rows are grouped by polynomial with
/// multipliers in canonical order.
MacaulaySystem build_macaulay(const PolySystem& sys, DegreeKind kind, int d,
                              const BuildOptions& opts = {});

/// Multilinear variant for f1 (field equations implicit): rows are the
/// clamped images psi(m * f) over multilinear multipliers m with
/// deg psi(m f) <= d, columns the nontrivial multilinear monomials of total
/// degree <= d. Zero and duplicate rows are retained. d < 0 selects d = n.
MacaulaySystem build_boolean_macaulay(const PolySystem& f1, int d = -1,
                                      const BuildOptions& opts = {});

/// Augmented matrix [ -b | M ] with the constant column restored at index 0.
SparseMatrixQ augmented_matrix(const MacaulaySystem& sys);

/// Coordinates of the monomial solution vector of a on the given columns;
/// entry is 1 exactly when the column's support is contained in a's support.
RatVec solution_vector_on_columns(const Assignment& a,
                                  const std::vector<Monomial>& cols);

// ---- entry oracles (never materialize the matrix) ----

struct MacaulaySpec {
    Flavor flavor;
    DegreeKind kind;
    int degree;
    const PolySystem* sys;  // full system for kPlain, f1 only for kBoolean
};

MacaulaySpec spec_of(const MacaulaySystem& built, const PolySystem& sys);

struct OracleRangeError : Error {
    using Error::Error;
};

/// The row's polynomial (multiplier * f, clamped for the Boolean flavor).
Polynomial row_polynomial(const MacaulaySpec& spec, const RowLabel& label);
bool row_label_valid(const MacaulaySpec& spec, const RowLabel& label);

/// Column of the k-th nonzero entry of the row (0-based, canonical order).
Monomial entry_col_oracle(const MacaulaySpec& spec, const RowLabel& label, int k);
Rational entry_value_oracle(const MacaulaySpec& spec, const RowLabel& label,
                            const Monomial& col);
/// Label of the k-th nonzero row of the column (transpose direction).
RowLabel entry_row_oracle(const MacaulaySpec& spec, const Monomial& col, int k);
std::vector<RowLabel> column_nonzero_rows(const MacaulaySpec& spec,
                                          const Monomial& col);

// ---- exact row-space equivalence ----

struct BlockReduceVerdict {
    long rank_plain = 0;
    long rank_block = 0;
    long rank_stack = 0;
    long identity_rows = 0;  // number of nonmultilinear reduction rows
    bool row_space_equal = false;
};

/// Compares the max-degree-d construction matrix of f1 together with the
/// field equations against the block form built from the multilinear matrix
/// of f1 plus the rows x^a - clamp(x^a). Equality of the three exact ranks
/// certifies equal row spaces. sys must contain every field equation.
BlockReduceVerdict block_reduce_check(const PolySystem& sys, int d,
                                      const BuildOptions& opts = {});

struct CorrespondenceVerdict {
    int num_solutions = 0;
    bool consistent = false;
    bool full_column_rank = false;
    bool unique_matches_monomial_vector = false;
    bool all_monomial_vectors_satisfy = false;
    bool weight_identity = false;  // nonzero count == 2^h - 1 in the unique case
    bool ok = false;
};

/// Cross-checks the multilinear linear system against brute force: the exact
/// least-squares solution of a unique-solution system is the 0/1 monomial
/// vector, every enumerated solution satisfies the system, and inconsistent
/// systems have no exact solution.
CorrespondenceVerdict solution_correspondence_check(const PolySystem& sysC,
                                                    const BuildOptions& opts = {});

}  // namespace mq
