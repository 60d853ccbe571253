#include "mq/linalg.hpp"

#include <algorithm>
#include <limits>

namespace mq {

long SparseMatrixQ::nnz() const {
    long n = 0;
    for (const auto& r : row) n += static_cast<long>(r.size());
    return n;
}

RatMatrix SparseMatrixQ::dense() const {
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) m.at(r, c) = v;
    return m;
}

std::vector<double> SparseMatrixQ::dense_double() const {
    std::vector<double> m(size_t(rows) * cols, 0.0);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) m[size_t(r) * cols + c] = to_double(v);
    return m;
}

RatVec SparseMatrixQ::multiply(const RatVec& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw DimensionError("sparse multiply: size mismatch");
    RatVec y(rows, Rational(0));
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) y[r] += v * x[c];
    return y;
}

SparseRow sparse_row_axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = c * b[j].second;
            if (v != 0) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = a[i].second + c * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return out;
}

int rank(RatMatrix m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Rational f = m.at(i, c) / m.at(r, c);
            m.at(i, c) = 0;
            for (int j = c + 1; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

int sparse_rank(SparseMatrixQ m) {
    // Min-fill heuristic: pick the lightest unused column, eliminate with the
    // lightest row holding it. Keeps the Macaulay-style inputs sparse enough.
    const int rows = m.rows, cols = m.cols;
    std::vector<char> row_used(rows, 0);
    std::vector<std::vector<int>> col_rows(cols);
    std::vector<int> col_count(cols, 0);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : m.row[r]) {
            col_rows[c].push_back(r);
            ++col_count[c];
        }

    auto row_has_col = [&](int r, int c) {
        const auto& rw = m.row[r];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const auto& a, int b) { return a.first < b; });
        return it != rw.end() && it->first == c;
    };
    auto refresh = [&](int c) {
        auto& vec = col_rows[c];
        std::sort(vec.begin(), vec.end());
        vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
        vec.erase(std::remove_if(vec.begin(), vec.end(),
                                 [&](int r) {
                                     return row_used[r] || !row_has_col(r, c);
                                 }),
                  vec.end());
        col_count[c] = static_cast<int>(vec.size());
    };

    int rank_out = 0;
    std::vector<char> col_done(cols, 0);
    for (int step = 0; step < cols; ++step) {
        int best_col = -1;
        long best_score = std::numeric_limits<long>::max();
        for (int c = 0; c < cols; ++c) {
            if (col_done[c] || col_count[c] == 0) continue;
            if (col_count[c] < best_score) {
                refresh(c);
                if (col_count[c] == 0) continue;
                if (col_count[c] < best_score) {
                    best_score = col_count[c];
                    best_col = c;
                }
            }
        }
        if (best_col < 0) break;
        const int c = best_col;
        int pivot = -1;
        size_t pivot_nnz = std::numeric_limits<size_t>::max();
        for (int r : col_rows[c]) {
            if (m.row[r].size() < pivot_nnz) {
                pivot = r;
                pivot_nnz = m.row[r].size();
            }
        }
        auto coeff_at = [&](int r, int col) {
            const auto& rw = m.row[r];
            auto it = std::lower_bound(rw.begin(), rw.end(), col,
                                       [](const auto& a, int b) { return a.first < b; });
            return it != rw.end() && it->first == col ? it->second : Rational(0);
        };
        const Rational pv = coeff_at(pivot, c);
        for (int r : col_rows[c]) {
            if (r == pivot) continue;
            Rational f = -coeff_at(r, c) / pv;
            m.row[r] = sparse_row_axpy(m.row[r], f, m.row[pivot]);
            for (const auto& [cc, vv] : m.row[r]) col_rows[cc].push_back(r);
        }
        row_used[pivot] = 1;
        col_done[c] = 1;
        col_count[c] = 0;
        ++rank_out;
    }
    return rank_out;
}

bool solve_linear(RatMatrix a, RatVec b, RatVec& x) {
    if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows)
        throw DimensionError("solve_linear expects a square system");
    const int n = a.rows;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (a.at(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return false;
        if (pivot != c) {
            for (int j = c; j < n; ++j) std::swap(a.at(pivot, j), a.at(c, j));
            std::swap(b[pivot], b[c]);
        }
        for (int i = c + 1; i < n; ++i) {
            if (a.at(i, c) == 0) continue;
            Rational f = a.at(i, c) / a.at(c, c);
            a.at(i, c) = 0;
            for (int j = c + 1; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
            b[i] -= f * b[c];
        }
    }
    x.assign(n, Rational(0));
    for (int i = n - 1; i >= 0; --i) {
        Rational s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    return true;
}

bool solve_general(RatMatrix a, RatVec b, RatVec& x) {
    if (static_cast<int>(b.size()) != a.rows)
        throw DimensionError("solve_general: rhs length mismatch");
    const int m = a.rows, n = a.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int pivot = -1;
        for (int i = r; i < m; ++i)
            if (a.at(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r) {
            for (int j = c; j < n; ++j) std::swap(a.at(pivot, j), a.at(r, j));
            std::swap(b[pivot], b[r]);
        }
        for (int i = 0; i < m; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rational f = a.at(i, c) / a.at(r, c);
            a.at(i, c) = 0;
            for (int j = c + 1; j < n; ++j) a.at(i, j) -= f * a.at(r, j);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (b[i] != 0) return false;
    x.assign(n, Rational(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a.at(i, pivot_col[i]);
    return true;
}

LdltResult ldlt_pivots(const RatMatrix& sym) {
    if (sym.rows != sym.cols) throw DimensionError("ldlt_pivots expects square");
    const int n = sym.rows;
    LdltResult out;
    RatMatrix l(n, n);
    RatVec d(n, Rational(0));
    for (int c = 0; c < n; ++c) {
        Rational dc = sym.at(c, c);
        for (int j = 0; j < c; ++j) dc -= l.at(c, j) * l.at(c, j) * d[j];
        out.pivots.push_back(dc);
        if (dc <= 0) return out;  // not positive definite
        d[c] = dc;
        for (int r = c + 1; r < n; ++r) {
            Rational v = sym.at(r, c);
            for (int j = 0; j < c; ++j) v -= l.at(r, j) * l.at(c, j) * d[j];
            l.at(r, c) = v / dc;
        }
    }
    out.positive_definite = true;
    return out;
}

LsqResult least_squares_normal(const SparseMatrixQ& m, const SparseRow& b) {
    const int c = m.cols;
    RatMatrix normal(c, c);
    RatVec rhs(c, Rational(0));
    for (int r = 0; r < m.rows; ++r) {
        for (const auto& [ci, vi] : m.row[r])
            for (const auto& [cj, vj] : m.row[r])
                if (cj >= ci) normal.at(ci, cj) += vi * vj;
    }
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < i; ++j) normal.at(i, j) = normal.at(j, i);
    for (const auto& [r, v] : b)
        for (const auto& [ci, vi] : m.row[r]) rhs[ci] += vi * v;

    LsqResult out;
    RatVec x;
    if (!solve_linear(std::move(normal), rhs, x)) {
        out.status = LsqStatus::kRankDeficient;
        return out;
    }
    out.status = LsqStatus::kUnique;
    out.x = std::move(x);

    RatVec mx = m.multiply(out.x);
    out.residual_zero = true;
    size_t bi = 0;
    for (int r = 0; r < m.rows && out.residual_zero; ++r) {
        Rational want(0);
        while (bi < b.size() && b[bi].first < r) ++bi;
        if (bi < b.size() && b[bi].first == r) want = b[bi].second;
        if (mx[r] != want) out.residual_zero = false;
    }
    return out;
}

bool system_consistent(const SparseMatrixQ& m, const SparseRow& b) {
    SparseMatrixQ aug;
    aug.rows = m.rows;
    aug.cols = m.cols + 1;
    aug.row = m.row;
    for (const auto& [r, v] : b) aug.row[r].emplace_back(m.cols, v);
    return sparse_rank(m) == sparse_rank(std::move(aug));
}

}  // namespace mq
