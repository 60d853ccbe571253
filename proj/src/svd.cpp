#include "mq/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mq {
namespace {

// In-place Householder QR of a (rows >= cols). Overwrites a with R in the
// upper triangle and applies the same reflectors to rhs when present.
void householder_qr(DenseD& a, std::vector<double>* rhs) {
    const int m = a.rows, n = a.cols;
    std::vector<double> v(m);
    for (int c = 0; c < n; ++c) {
        double norm = 0.0;
        for (int r = c; r < m; ++r) norm += a.at(r, c) * a.at(r, c);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        double alpha = a.at(c, c) > 0 ? -norm : norm;
        double vnorm_sq = 0.0;
        for (int r = c; r < m; ++r) {
            v[r] = a.at(r, c);
            if (r == c) v[r] -= alpha;
            vnorm_sq += v[r] * v[r];
        }
        if (vnorm_sq == 0.0) continue;
        for (int j = c; j < n; ++j) {
            double dot = 0.0;
            for (int r = c; r < m; ++r) dot += v[r] * a.at(r, j);
            double f = 2.0 * dot / vnorm_sq;
            for (int r = c; r < m; ++r) a.at(r, j) -= f * v[r];
        }
        if (rhs) {
            double dot = 0.0;
            for (int r = c; r < m; ++r) dot += v[r] * (*rhs)[r];
            double f = 2.0 * dot / vnorm_sq;
            for (int r = c; r < m; ++r) (*rhs)[r] -= f * v[r];
        }
    }
}

// One-sided Jacobi on a square matrix w (n x n): returns with the columns of
// w orthogonal; vt accumulates the right rotations so that input = w * vt^T.
void one_sided_jacobi(DenseD& w, DenseD& vt) {
    const int n = w.cols;
    const double eps = 1e-15;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int r = 0; r < w.rows; ++r) {
                    alpha += w.at(r, i) * w.at(r, i);
                    beta += w.at(r, j) * w.at(r, j);
                    gamma += w.at(r, i) * w.at(r, j);
                }
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int r = 0; r < w.rows; ++r) {
                    double wi = w.at(r, i), wj = w.at(r, j);
                    w.at(r, i) = c * wi - s * wj;
                    w.at(r, j) = s * wi + c * wj;
                }
                for (int r = 0; r < vt.rows; ++r) {
                    double vi = vt.at(r, i), vj = vt.at(r, j);
                    vt.at(r, i) = c * vi - s * vj;
                    vt.at(r, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }
}

DenseD transpose(const DenseD& a) {
    DenseD t(a.cols, a.rows);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
    return t;
}

}  // namespace

SvdResult svd(const DenseD& a, const std::vector<double>* b) {
    if (a.rows == 0 || a.cols == 0) throw DimensionError("svd of empty matrix");
    if (b && static_cast<int>(b->size()) != a.rows)
        throw DimensionError("svd right-hand side has wrong length");

    const bool transposed = a.rows < a.cols;
    DenseD work = transposed ? transpose(a) : a;
    std::vector<double> rhs;
    bool want_solve = b && !transposed;
    if (want_solve) rhs = *b;

    const int n = work.cols;
    if (work.rows > n) {
        householder_qr(work, want_solve ? &rhs : nullptr);
        DenseD r(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) r.at(i, j) = work.at(i, j);
        work = std::move(r);
        if (want_solve) rhs.resize(n);
    }

    DenseD v(n, n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
    one_sided_jacobi(work, v);

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int r = 0; r < work.rows; ++r) s += work.at(r, j) * work.at(r, j);
        sigma[j] = std::sqrt(s);
    }

    SvdResult out;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return sigma[x] > sigma[y]; });
    out.sigma.resize(n);
    for (int j = 0; j < n; ++j) out.sigma[j] = sigma[order[j]];
    out.sigma_max = out.sigma.empty() ? 0.0 : out.sigma[0];
    out.rank_tolerance =
        std::max(a.rows, a.cols) * out.sigma_max * std::ldexp(1.0, -40);
    out.numeric_rank = 0;
    for (double s : out.sigma)
        if (s > out.rank_tolerance) ++out.numeric_rank;

    if (want_solve) {
        // pinv(A) b = V diag(1/sigma) U^T Q^T b with U the normalized Jacobi
        // columns; rhs already holds Q^T b.
        std::vector<double> utb(n, 0.0);
        for (int j = 0; j < n; ++j) {
            if (sigma[j] <= out.rank_tolerance) continue;
            double dot = 0.0;
            for (int r = 0; r < work.rows; ++r) dot += work.at(r, j) * rhs[r];
            utb[j] = dot / sigma[j];  // normalize the U column
        }
        out.pinv_b.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            if (sigma[j] <= out.rank_tolerance) continue;
            double coef = utb[j] / sigma[j];
            for (int i = 0; i < n; ++i) out.pinv_b[i] += coef * v.at(i, j);
        }
        double nrm = 0.0;
        for (double x : out.pinv_b) nrm += x * x;
        out.pinv_b_norm = std::sqrt(nrm);
        out.has_pinv_b = true;
    } else if (b && transposed) {
        // Norm of pinv(A) b is available through the factorization of A^T:
        // A = V S U^T, pinv(A) b = U pinv(S) V^T b, and U has orthonormal
        // columns, so the norm equals ||pinv(S) V^T b||.
        std::vector<double> vtb(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += v.at(i, j) * (*b)[i];
            vtb[j] = dot;
        }
        double nrm = 0.0;
        for (int j = 0; j < n; ++j) {
            if (sigma[j] <= out.rank_tolerance) continue;
            double x = vtb[j] / sigma[j];
            nrm += x * x;
        }
        out.pinv_b_norm = std::sqrt(nrm);
    }
    return out;
}

double spectral_norm(const DenseD& a) { return svd(a).sigma_max; }

double kappa(const DenseD& a) {
    SvdResult r = svd(a);
    if (r.numeric_rank == 0) throw Error("kappa of a numerically zero matrix");
    double smin = r.sigma[r.numeric_rank - 1];
    return r.sigma_max / smin;
}

double kappa_b(const DenseD& a, const std::vector<double>& b) {
    double bnorm = 0.0;
    for (double x : b) bnorm += x * x;
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) throw Error("kappa_b requires a nonzero right-hand side");
    SvdResult r = svd(a, &b);
    return r.sigma_max * r.pinv_b_norm / bnorm;
}

}  // namespace mq
