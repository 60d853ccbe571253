#include "mq/macaulay.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace mq {
namespace {

int popcount64(uint64_t x) { return std::popcount(x); }

Int count_monomials(int n, int d, DegreeKind kind) {
    if (kind == DegreeKind::kMax) return int_pow(d + 1, n);
    return binomial(n + d, d);
}

std::vector<uint64_t> multilinear_masks_up_to(int n, int d) {
    std::vector<uint64_t> masks;
    const uint64_t lim = 1ULL << n;
    for (uint64_t m = 0; m < lim; ++m)
        if (popcount64(m) <= d) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
        int pa = popcount64(a), pb = popcount64(b);
        return pa != pb ? pa < pb : a < b;
    });
    return masks;
}

// Support masks of subsets of `mask`, used for the transpose oracle.
void for_each_subset(uint64_t mask, const std::function<void(uint64_t)>& fn) {
    uint64_t sub = mask;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

struct MaskTerm {
    uint64_t support;
    Rational coeff;
};

std::vector<MaskTerm> mask_terms(const Polynomial& p) {
    std::vector<MaskTerm> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) out.push_back({m.support_mask(), c});
    return out;
}

// Clamped image of multiplier_mask * f as (image mask, coefficient) pairs
// with cancellations removed, sorted by mask.
std::vector<std::pair<uint64_t, Rational>> psi_image(
    const std::vector<MaskTerm>& terms, uint64_t multiplier_mask) {
    std::vector<std::pair<uint64_t, Rational>> img;
    img.reserve(terms.size());
    for (const auto& t : terms) img.emplace_back(multiplier_mask | t.support, t.coeff);
    std::sort(img.begin(), img.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<uint64_t, Rational>> out;
    for (auto& e : img) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    return out;
}

int image_degree(const std::vector<std::pair<uint64_t, Rational>>& img) {
    int d = 0;
    for (const auto& [m, c] : img) d = std::max(d, popcount64(m));
    return d;
}

}  // namespace

std::string degree_kind_name(DegreeKind k) {
    return k == DegreeKind::kMax ? "max" : "total";
}

DegreeKind degree_kind_from_name(const std::string& s) {
    if (s == "max") return DegreeKind::kMax;
    if (s == "total") return DegreeKind::kTotal;
    throw ParseError("unknown degree kind '" + s + "' (expected max or total)");
}

int monomial_degree(const Monomial& m, DegreeKind kind) {
    return kind == DegreeKind::kMax ? m.max_degree() : m.total_degree();
}

std::vector<Monomial> enumerate_monomials(int n, int d, DegreeKind kind) {
    std::vector<Monomial> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int i, int total) -> void {
        if (i == n) {
            out.emplace_back(cur);
            return;
        }
        const int limit = kind == DegreeKind::kMax ? d : d - total;
        for (int e = 0; e <= limit; ++e) {
            cur[i] = e;
            self(self, i + 1, total + e);
        }
        cur[i] = 0;
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

int poly_degree(const Polynomial& p, DegreeKind kind) {
    return kind == DegreeKind::kMax ? p.max_degree() : p.total_degree();
}

RatVec MacaulaySystem::b_dense() const {
    RatVec out(m.rows(), Rational(0));
    for (const auto& [r, v] : b) out[r] = v;
    return out;
}

std::vector<double> MacaulaySystem::b_double() const {
    std::vector<double> out(m.rows(), 0.0);
    for (const auto& [r, v] : b) out[r] = to_double(v);
    return out;
}

MacaulaySystem build_macaulay(const PolySystem& sys, DegreeKind kind, int d,
                              const BuildOptions& opts) {
    if (sys.field() != Field::kC)
        throw DimensionError("build_macaulay expects a C-tagged system");
    const int n = sys.num_vars();
    for (const auto& p : sys.polys()) {
        if (p.is_zero())
            throw DimensionError("build_macaulay: zero polynomial in system");
        if (poly_degree(p, kind) > d)
            throw DimensionError("degree bound below an input polynomial degree");
    }
    if (count_monomials(n, d, kind) > Int(opts.plain_col_cap) + 1)
        throw CapacityError("column count exceeds the cap of " +
                            std::to_string(opts.plain_col_cap));

    MacaulaySystem out;
    out.flavor = Flavor::kPlain;
    out.kind = kind;
    out.degree = d;
    out.num_vars = n;

    std::vector<Monomial> all = enumerate_monomials(n, d, kind);
    std::map<Monomial, int, MonomialLess> col_index;
    for (const auto& mono : all) {
        if (mono.is_constant()) continue;
        const int idx = static_cast<int>(out.m.col_labels.size());
        out.m.col_labels.push_back(mono);
        col_index.emplace(mono, idx);
    }

    for (int j = 0; j < sys.size(); ++j) {
        const Polynomial& f = sys.polys()[j];
        std::vector<Monomial> multipliers;
        if (kind == DegreeKind::kMax) {
            const std::vector<int> g = f.variable_max_exponents();
            std::vector<int> cur(n, 0);
            auto rec = [&](auto&& self, int i) -> void {
                if (i == n) {
                    multipliers.emplace_back(cur);
                    return;
                }
                for (int e = 0; e + g[i] <= d; ++e) {
                    cur[i] = e;
                    self(self, i + 1);
                }
                cur[i] = 0;
            };
            rec(rec, 0);
            std::sort(multipliers.begin(), multipliers.end(), MonomialLess{});
        } else {
            multipliers = enumerate_monomials(n, d - f.total_degree(), kind);
        }

        for (const auto& mult : multipliers) {
            const int r = static_cast<int>(out.m.row_labels.size());
            out.m.row_labels.push_back(RowLabel{mult, j});
            SparseRow row;
            Rational b_val(0);
            for (const auto& [t, c] : f.terms()) {
                Monomial prod = mult * t;
                if (prod.is_constant()) {
                    b_val = -c;
                    continue;
                }
                row.emplace_back(col_index.at(prod), c);
            }
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.m.mat.row.push_back(std::move(row));
            if (b_val != 0) out.b.emplace_back(r, b_val);
        }
    }
    out.m.mat.rows = static_cast<int>(out.m.row_labels.size());
    out.m.mat.cols = static_cast<int>(out.m.col_labels.size());
    return out;
}

MacaulaySystem build_boolean_macaulay(const PolySystem& f1, int d,
                                      const BuildOptions& opts) {
    if (f1.field() != Field::kC)
        throw DimensionError("build_boolean_macaulay expects a C-tagged system");
    const int n = f1.num_vars();
    if (n > 62) throw CapacityError("multilinear masks limited to 62 variables");
    if (d < 0 || d > n) d = n;

    const bool definitional = n <= opts.boolean_var_cap;
    if (!definitional && !opts.allow_truncated_boolean)
        throw CapacityError(
            "Boolean materialization capped at " +
            std::to_string(opts.boolean_var_cap) +
            " variables (truncated mode available past the cap)");

    Int col_count(0);
    for (int i = 0; i <= d; ++i) col_count += binomial(n, i);
    if (col_count > Int(opts.boolean_col_cap) + 1)
        throw CapacityError("multilinear column count exceeds the cap");

    MacaulaySystem out;
    out.flavor = Flavor::kBoolean;
    out.kind = DegreeKind::kTotal;
    out.degree = d;
    out.num_vars = n;

    std::vector<uint64_t> col_masks;
    std::unordered_map<uint64_t, int> col_index;
    if (definitional && d == n) {
        col_masks = multilinear_masks_up_to(n, n);
    } else {
        // popcount <= d masks; enumerate by combinations to avoid 2^n scans
        std::vector<uint64_t> masks;
        masks.push_back(0);
        auto rec = [&](auto&& self, int start, uint64_t mask, int left) -> void {
            if (left == 0) return;
            for (int i = start; i < n; ++i) {
                uint64_t next = mask | (1ULL << i);
                masks.push_back(next);
                self(self, i + 1, next, left - 1);
            }
        };
        rec(rec, 0, 0, d);
        std::sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
            int pa = popcount64(a), pb = popcount64(b);
            return pa != pb ? pa < pb : a < b;
        });
        col_masks = std::move(masks);
    }
    for (uint64_t mask : col_masks) {
        if (mask == 0) continue;
        const int idx = static_cast<int>(out.m.col_labels.size());
        out.m.col_labels.push_back(Monomial::from_mask(n, mask));
        col_index.emplace(mask, idx);
    }

    // Multiplier candidates: every multilinear monomial in the definitional
    // regime; otherwise only those with at most d variables (any omitted row
    // is identically zero since a surviving image would exceed degree d).
    std::vector<uint64_t> mult_masks;
    if (definitional) {
        mult_masks = multilinear_masks_up_to(n, n);
    } else {
        mult_masks = col_masks;  // already includes the empty mask
    }

    for (int j = 0; j < f1.size(); ++j) {
        const std::vector<MaskTerm> terms = mask_terms(f1.polys()[j]);
        for (uint64_t mm : mult_masks) {
            auto img = psi_image(terms, mm);
            if (image_degree(img) > d) continue;
            const int r = static_cast<int>(out.m.row_labels.size());
            out.m.row_labels.push_back(RowLabel{Monomial::from_mask(n, mm), j});
            SparseRow row;
            for (const auto& [mask, c] : img) {
                if (mask == 0) {
                    out.b.emplace_back(r, -c);
                    continue;
                }
                row.emplace_back(col_index.at(mask), c);
            }
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.m.mat.row.push_back(std::move(row));
        }
    }
    out.m.mat.rows = static_cast<int>(out.m.row_labels.size());
    out.m.mat.cols = static_cast<int>(out.m.col_labels.size());
    return out;
}

SparseMatrixQ augmented_matrix(const MacaulaySystem& sys) {
    SparseMatrixQ aug;
    aug.rows = sys.m.rows();
    aug.cols = sys.m.cols() + 1;
    aug.row.resize(aug.rows);
    RatVec b = sys.b_dense();
    for (int r = 0; r < aug.rows; ++r) {
        SparseRow row;
        if (b[r] != 0) row.emplace_back(0, -b[r]);
        for (const auto& [c, v] : sys.m.mat.row[r]) row.emplace_back(c + 1, v);
        aug.row[r] = std::move(row);
    }
    return aug;
}

RatVec solution_vector_on_columns(const Assignment& a,
                                  const std::vector<Monomial>& cols) {
    const uint64_t am = a.mask();
    RatVec y(cols.size(), Rational(0));
    for (size_t i = 0; i < cols.size(); ++i) {
        const uint64_t sm = cols[i].support_mask();
        if ((sm & am) == sm) y[i] = 1;
    }
    return y;
}

MacaulaySpec spec_of(const MacaulaySystem& built, const PolySystem& sys) {
    return MacaulaySpec{built.flavor, built.kind, built.degree, &sys};
}

bool row_label_valid(const MacaulaySpec& spec, const RowLabel& label) {
    if (label.poly_index < 0 || label.poly_index >= spec.sys->size()) return false;
    const Polynomial& f = spec.sys->polys()[label.poly_index];
    if (spec.flavor == Flavor::kPlain) {
        if (f.is_zero()) return false;
        if (spec.kind == DegreeKind::kMax) {
            const std::vector<int> g = f.variable_max_exponents();
            for (int i = 0; i < f.num_vars(); ++i)
                if (label.multiplier.exponent(i) + g[i] > spec.degree) return false;
            return true;
        }
        return label.multiplier.total_degree() + f.total_degree() <= spec.degree;
    }
    if (!label.multiplier.is_multilinear()) return false;
    auto img = psi_image(mask_terms(f), label.multiplier.mask());
    return image_degree(img) <= spec.degree;
}

Polynomial row_polynomial(const MacaulaySpec& spec, const RowLabel& label) {
    const Polynomial& f = spec.sys->polys()[label.poly_index];
    Polynomial prod = f.times_monomial(label.multiplier);
    return spec.flavor == Flavor::kBoolean ? prod.multilinear_image() : prod;
}

namespace {

std::vector<std::pair<Monomial, Rational>> row_nontrivial_entries(
    const MacaulaySpec& spec, const RowLabel& label) {
    if (!row_label_valid(spec, label))
        throw DimensionError("row label is not part of the matrix");
    Polynomial p = row_polynomial(spec, label);
    std::vector<std::pair<Monomial, Rational>> out;
    for (const auto& [m, c] : p.terms()) {
        if (m.is_constant()) continue;
        out.emplace_back(m, c);
    }
    // Polynomial terms are already in canonical order.
    return out;
}

}  // namespace

Monomial entry_col_oracle(const MacaulaySpec& spec, const RowLabel& label, int k) {
    auto entries = row_nontrivial_entries(spec, label);
    if (k < 0 || k >= static_cast<int>(entries.size()))
        throw OracleRangeError("nonzero index " + std::to_string(k) +
                               " out of range for row with " +
                               std::to_string(entries.size()) + " entries");
    return entries[k].first;
}

Rational entry_value_oracle(const MacaulaySpec& spec, const RowLabel& label,
                            const Monomial& col) {
    if (!row_label_valid(spec, label))
        throw DimensionError("row label is not part of the matrix");
    const Polynomial& f = spec.sys->polys()[label.poly_index];
    if (spec.flavor == Flavor::kPlain) {
        if (!label.multiplier.divides(col)) return Rational(0);
        return f.coefficient(label.multiplier.quotient_of(col));
    }
    if (!col.is_multilinear())
        throw DimensionError("Boolean columns are multilinear");
    const uint64_t cm = col.mask();
    const uint64_t mm = label.multiplier.mask();
    if ((mm & cm) != mm) return Rational(0);
    Rational sum(0);
    for (const auto& [t, c] : f.terms()) {
        if ((mm | t.support_mask()) == cm) sum += c;
    }
    return sum;
}

std::vector<RowLabel> column_nonzero_rows(const MacaulaySpec& spec,
                                          const Monomial& col) {
    std::vector<RowLabel> out;
    const int n = spec.sys->num_vars();
    for (int j = 0; j < spec.sys->size(); ++j) {
        const Polynomial& f = spec.sys->polys()[j];
        if (spec.flavor == Flavor::kPlain) {
            for (const auto& [t, c] : f.terms()) {
                if (!t.divides(col)) continue;
                RowLabel label{t.quotient_of(col), j};
                if (row_label_valid(spec, label)) out.push_back(std::move(label));
            }
        } else {
            const uint64_t cm = col.mask();
            std::set<uint64_t> candidates;
            for (const auto& [t, c] : f.terms()) {
                const uint64_t tm = t.support_mask();
                if ((tm & cm) != tm) continue;
                const uint64_t fixed = cm & ~tm;
                for_each_subset(tm, [&](uint64_t s) { candidates.insert(fixed | s); });
            }
            for (uint64_t mm : candidates) {
                RowLabel label{Monomial::from_mask(n, mm), j};
                if (!row_label_valid(spec, label)) continue;
                if (entry_value_oracle(spec, label, col) != 0)
                    out.push_back(std::move(label));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RowLabel& a, const RowLabel& b) {
        if (a.poly_index != b.poly_index) return a.poly_index < b.poly_index;
        return monomial_less(a.multiplier, b.multiplier);
    });
    return out;
}

RowLabel entry_row_oracle(const MacaulaySpec& spec, const Monomial& col, int k) {
    auto rows = column_nonzero_rows(spec, col);
    if (k < 0 || k >= static_cast<int>(rows.size()))
        throw OracleRangeError("nonzero index " + std::to_string(k) +
                               " out of range for column with " +
                               std::to_string(rows.size()) + " rows");
    return rows[k];
}

BlockReduceVerdict block_reduce_check(const PolySystem& sys, int d,
                                      const BuildOptions& opts) {
    if (sys.field() != Field::kC)
        throw DimensionError("block_reduce_check expects a C-tagged system");
    const int n = sys.num_vars();

    std::vector<char> has_field(n, 0);
    PolySystem f1(n, Field::kC);
    for (const auto& p : sys.polys()) {
        if (auto v = field_equation_var(p)) {
            has_field[*v] = 1;
        } else {
            f1.add(p);
        }
    }
    for (int i = 0; i < n; ++i)
        if (!has_field[i])
            throw DimensionError("block_reduce_check needs every field equation");

    MacaulaySystem plain = build_macaulay(sys, DegreeKind::kMax, d, opts);
    SparseMatrixQ plain_aug = augmented_matrix(plain);

    std::map<Monomial, int, MonomialLess> aug_col;
    aug_col.emplace(Monomial::one(n), 0);
    for (size_t i = 0; i < plain.m.col_labels.size(); ++i)
        aug_col.emplace(plain.m.col_labels[i], static_cast<int>(i) + 1);

    SparseMatrixQ block;
    block.cols = plain_aug.cols;
    BlockReduceVerdict verdict;

    if (f1.size() > 0) {
        MacaulaySystem boolean = build_boolean_macaulay(f1, n, opts);
        SparseMatrixQ bool_aug = augmented_matrix(boolean);
        std::vector<int> embed(bool_aug.cols);
        embed[0] = 0;
        for (size_t i = 0; i < boolean.m.col_labels.size(); ++i)
            embed[i + 1] = aug_col.at(boolean.m.col_labels[i]);
        for (const auto& row : bool_aug.row) {
            SparseRow embedded;
            for (const auto& [c, v] : row) embedded.emplace_back(embed[c], v);
            std::sort(embedded.begin(), embedded.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            block.row.push_back(std::move(embedded));
        }
    }

    // Reduction rows x^a - clamp(x^a) for every nonmultilinear monomial.
    for (const auto& [mono, idx] : aug_col) {
        if (mono.is_multilinear()) continue;
        SparseRow row;
        const int img = aug_col.at(mono.multilinear_image());
        row.emplace_back(std::min(idx, img), idx < img ? Rational(1) : Rational(-1));
        row.emplace_back(std::max(idx, img), idx < img ? Rational(-1) : Rational(1));
        block.row.push_back(std::move(row));
        ++verdict.identity_rows;
    }
    block.rows = static_cast<int>(block.row.size());

    SparseMatrixQ stack;
    stack.cols = plain_aug.cols;
    stack.row = plain_aug.row;
    stack.row.insert(stack.row.end(), block.row.begin(), block.row.end());
    stack.rows = static_cast<int>(stack.row.size());

    verdict.rank_plain = sparse_rank(plain_aug);
    verdict.rank_block = sparse_rank(block);
    verdict.rank_stack = sparse_rank(std::move(stack));
    verdict.row_space_equal = verdict.rank_plain == verdict.rank_block &&
                              verdict.rank_block == verdict.rank_stack;
    return verdict;
}

CorrespondenceVerdict solution_correspondence_check(const PolySystem& sysC,
                                                    const BuildOptions& opts) {
    int constants = 0;
    for (const auto& p : sysC.polys()) {
        if (p.constant_term() == 0) continue;
        ++constants;
        if (p.constant_term() != -1)
            throw DimensionError("expected a normalized system (constant -1)");
    }
    if (constants != 1)
        throw DimensionError("expected exactly one constant-bearing polynomial");

    const int n = sysC.num_vars();
    PolySystem f1(n, Field::kC);
    for (const auto& p : sysC.non_field_polys()) f1.add(p);

    MacaulaySystem boolean = build_boolean_macaulay(f1, n, opts);
    std::vector<Assignment> sols = brute_force_solutions(sysC);
    LsqResult lsq = least_squares_normal(boolean.m.mat, boolean.b);

    CorrespondenceVerdict v;
    v.num_solutions = static_cast<int>(sols.size());
    v.full_column_rank = lsq.status == LsqStatus::kUnique;
    v.consistent = v.full_column_rank
                       ? lsq.residual_zero
                       : system_consistent(boolean.m.mat, boolean.b);

    RatVec bvec = boolean.b_dense();
    v.all_monomial_vectors_satisfy = true;
    for (const auto& a : sols) {
        RatVec y = solution_vector_on_columns(a, boolean.m.col_labels);
        if (boolean.m.mat.multiply(y) != bvec) {
            v.all_monomial_vectors_satisfy = false;
            break;
        }
    }

    if (v.num_solutions == 1 && v.full_column_rank && lsq.residual_zero) {
        RatVec expect = solution_vector_on_columns(sols[0], boolean.m.col_labels);
        v.unique_matches_monomial_vector = lsq.x == expect;
        long nonzero = 0;
        for (const auto& c : lsq.x)
            if (c != 0) ++nonzero;
        v.weight_identity = nonzero == (1L << sols[0].weight()) - 1;
    }

    if (v.num_solutions == 0) {
        v.ok = !v.consistent && v.all_monomial_vectors_satisfy;
    } else if (v.num_solutions == 1) {
        v.ok = v.consistent && v.full_column_rank &&
               v.unique_matches_monomial_vector && v.weight_identity &&
               v.all_monomial_vectors_satisfy;
    } else {
        v.ok = v.consistent && !v.full_column_rank && v.all_monomial_vectors_satisfy;
    }
    return v;
}

}  // namespace mq
