#pragma once

#include <vector>

#include "mq/errors.hpp"

namespace mq {

struct DenseD {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    DenseD() = default;
    DenseD(int r, int c) : rows(r), cols(c), data(size_t(r) * c, 0.0) {}
    double& at(int r, int c) { return data[size_t(r) * cols + c]; }
    double at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

struct SvdResult {
    std::vector<double> sigma;  // descending, length min(rows, cols)
    double sigma_max = 0.0;
    double rank_tolerance = 0.0;  // max(rows,cols) * sigma_max * 2^-40
    int numeric_rank = 0;

    /// Least-squares solution pinv(A) b; filled only when a right-hand side
    /// was supplied and the input had rows >= cols.
    std::vector<double> pinv_b;
    double pinv_b_norm = 0.0;
    bool has_pinv_b = false;
};

/// Dense singular values via Householder reduction to a square factor
/// followed by one-sided Jacobi. When b is non-null the pseudoinverse is
/// applied to it through the same factorization (singular values below the
/// rank tolerance are treated as zero).
SvdResult svd(const DenseD& a, const std::vector<double>* b = nullptr);

double spectral_norm(const DenseD& a);
/// sigma_max / sigma_min over the nonzero (above-tolerance) singular values.
double kappa(const DenseD& a);
/// ||A|| * ||pinv(A) b|| / ||b||.
double kappa_b(const DenseD& a, const std::vector<double>& b);

}  // namespace mq
