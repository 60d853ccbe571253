#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mq/macaulay.hpp"
#include "mq/reduce.hpp"
#include "support.hpp"

using namespace mq;

namespace {

Polynomial poly_of(int n, Field f,
                   std::vector<std::pair<std::vector<int>, Rational>> terms) {
    Polynomial p(n, f);
    for (auto& [e, c] : terms) p.add_term(Monomial(e), c);
    return p;
}

// Row inner product with a dense vector minus the b entry.
Rational row_residual(const MacaulaySystem& sys, int r, const RatVec& y) {
    Rational s(0);
    for (const auto& [c, v] : sys.m.mat.row[r]) s += v * y[c];
    for (const auto& [br, bv] : sys.b)
        if (br == r) s -= bv;
    return s;
}

PolySystem f1_of(const PolySystem& sys) {
    PolySystem f1(sys.num_vars(), Field::kC);
    for (const auto& p : sys.non_field_polys()) f1.add(p);
    return f1;
}

}  // namespace

TEST_CASE("multilinear image examples") {
    // 3 x1^3 x2 - 1 -> 3 x1 x2 - 1
    Polynomial p = poly_of(2, Field::kC, {{{3, 1}, 3}, {{0, 0}, -1}});
    Polynomial img = p.multilinear_image();
    CHECK(img == poly_of(2, Field::kC, {{{1, 1}, 3}, {{0, 0}, -1}}));

    // x1^3 - 2 x1^2 x2^2 + x1 x2 - 1 -> x1 - x1 x2 - 1
    Polynomial q = poly_of(2, Field::kC, {{{3, 0}, 1}, {{2, 2}, -2},
                                          {{1, 1}, 1}, {{0, 0}, -1}});
    CHECK(q.multilinear_image() ==
          poly_of(2, Field::kC, {{{1, 0}, 1}, {{1, 1}, -1}, {{0, 0}, -1}}));

    // multilinear polynomials are fixed points
    Polynomial ml = poly_of(3, Field::kC, {{{1, 0, 1}, 5}, {{0, 1, 0}, -2}});
    CHECK(ml.multilinear_image() == ml);
}

TEST_CASE("multilinear image is idempotent, linear, and Boolean-faithful") {
    Rng rng(3);
    std::uniform_int_distribution<int> expo(0, 3), coeff(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        Polynomial p(n, Field::kC), q(n, Field::kC);
        for (int t = 0; t < 4; ++t) {
            std::vector<int> e1(n), e2(n);
            for (int i = 0; i < n; ++i) e1[i] = expo(rng), e2[i] = expo(rng);
            p.add_term(Monomial(e1), Rational(coeff(rng)));
            q.add_term(Monomial(e2), Rational(coeff(rng)));
        }
        Polynomial pi = p.multilinear_image();
        CHECK(pi.multilinear_image() == pi);

        // linearity: psi(p + 3q) = psi(p) + 3 psi(q)
        Polynomial comb = p;
        comb.add_scaled(q, Rational(3));
        Polynomial lhs = comb.multilinear_image();
        Polynomial rhs = pi;
        rhs.add_scaled(q.multilinear_image(), Rational(3));
        CHECK(lhs == rhs);

        // evaluations at 0/1 points agree
        for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            Assignment a = Assignment::from_mask(n, mask);
            CHECK(p.eval(a) == pi.eval(a));
        }
    }
}

TEST_CASE("plain construction for {x^2 - x} at max degree 2") {
    PolySystem sys(1, Field::kC);
    sys.add(field_equation(1, 0));
    MacaulaySystem built = build_macaulay(sys, DegreeKind::kMax, 2);

    REQUIRE(built.m.rows() == 1);
    CHECK(built.m.row_labels[0].multiplier == Monomial::one(1));
    REQUIRE(built.m.cols() == 2);
    CHECK(built.m.col_labels[0] == Monomial({1}));
    CHECK(built.m.col_labels[1] == Monomial({2}));
    REQUIRE(built.m.mat.row[0].size() == 2);
    CHECK(built.m.mat.row[0][0] == std::pair<int, Rational>(0, Rational(-1)));
    CHECK(built.m.mat.row[0][1] == std::pair<int, Rational>(1, Rational(1)));
    CHECK(built.b.empty());
}

TEST_CASE("plain column counts") {
    PolySystem sys(2, Field::kC);
    sys.add(poly_of(2, Field::kC, {{{1, 1}, 1}, {{0, 0}, -1}}));
    sys.append_field_equations();
    CHECK(build_macaulay(sys, DegreeKind::kMax, 3).m.cols() == 15);  // 4^2-1
    CHECK(build_macaulay(sys, DegreeKind::kTotal, 3).m.cols() == 9);  // C(5,2)-1

    BuildOptions tight;
    tight.plain_col_cap = 10;
    CHECK_THROWS_AS(build_macaulay(sys, DegreeKind::kMax, 3, tight),
                    CapacityError);
    // degree below an input polynomial degree is rejected
    CHECK_THROWS_AS(build_macaulay(sys, DegreeKind::kMax, 1), DimensionError);
}

TEST_CASE("construction identity on random systems (plain, both kinds)") {
    Rng rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 3, planted, rng);
        for (DegreeKind kind : {DegreeKind::kMax, DegreeKind::kTotal}) {
            MacaulaySystem built = build_macaulay(sys, kind, n + 2);
            MacaulaySpec spec = spec_of(built, sys);
            for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
                Assignment a = Assignment::from_mask(n, mask);
                RatVec y = solution_vector_on_columns(a, built.m.col_labels);
                for (int r = 0; r < built.m.rows(); ++r) {
                    Polynomial rp = row_polynomial(spec, built.m.row_labels[r]);
                    CHECK(row_residual(built, r, y) == rp.eval(a));
                }
            }
        }
    }
}

TEST_CASE("boolean construction for {x1 - 1} at d = 1") {
    PolySystem f1(1, Field::kC);
    f1.add(poly_of(1, Field::kC, {{{1}, 1}, {{0}, -1}}));
    MacaulaySystem built = build_boolean_macaulay(f1, 1);

    REQUIRE(built.m.rows() == 2);  // m 2^n rows
    REQUIRE(built.m.cols() == 1);  // 2^n - 1 columns
    // row (1, f): entry 1 at column x1, b = 1
    CHECK(built.m.mat.row[0].size() == 1);
    CHECK(built.m.mat.row[0][0] == std::pair<int, Rational>(0, Rational(1)));
    REQUIRE(built.b.size() == 1);
    CHECK(built.b[0] == std::pair<int, Rational>(0, Rational(1)));
    // row (x1, f): psi(x1^2 - x1) = 0, retained as a zero row
    CHECK(built.m.mat.row[1].empty());

    // unique solution y = [1]
    LsqResult lsq = least_squares_normal(built.m.mat, built.b);
    REQUIRE(lsq.status == LsqStatus::kUnique);
    CHECK(lsq.residual_zero);
    CHECK(lsq.x[0] == 1);
}

TEST_CASE("boolean dimensions and duplicate-row retention") {
    Rng rng(29);
    for (int n : {2, 3, 4}) {
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 3, planted, rng);
        PolySystem f1 = f1_of(sys);
        MacaulaySystem built = build_boolean_macaulay(f1, n);
        CHECK(built.m.rows() == f1.size() << n);
        CHECK(built.m.cols() == (1 << n) - 1);
    }
    BuildOptions opts;
    opts.boolean_var_cap = 3;
    CHECK_THROWS_AS(build_boolean_macaulay(PolySystem(5, Field::kC), -1, opts),
                    CapacityError);
}

TEST_CASE("boolean construction identity") {
    Rng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 4, planted, rng);
        PolySystem f1 = f1_of(sys);
        MacaulaySystem built = build_boolean_macaulay(f1, n);
        MacaulaySpec spec = spec_of(built, f1);
        for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            Assignment a = Assignment::from_mask(n, mask);
            RatVec y = solution_vector_on_columns(a, built.m.col_labels);
            for (int r = 0; r < built.m.rows(); ++r) {
                Polynomial rp = row_polynomial(spec, built.m.row_labels[r]);
                CHECK(row_residual(built, r, y) == rp.eval(a));
            }
        }
    }
}

TEST_CASE("boolean sparsity bounds") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);  // up to 8
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 4, planted, rng);
        PolySystem f1 = f1_of(sys);
        MacaulaySystem built = build_boolean_macaulay(f1, n);
        const int t_f1 = f1.max_sparsity();
        const int m = f1.size();

        // row sparsity <= T(f); column sparsity of the augmented matrix
        // (including b as the constant column) <= 4 m T(F1)
        std::vector<long> col_count(built.m.cols() + 1, 0);
        for (int r = 0; r < built.m.rows(); ++r) {
            const auto& row = built.m.mat.row[r];
            CHECK(static_cast<int>(row.size()) <=
                  f1.polys()[built.m.row_labels[r].poly_index].sparsity());
            for (const auto& [c, v] : row) ++col_count[c + 1];
        }
        for (const auto& [r, v] : built.b) ++col_count[0];
        for (long cnt : col_count) CHECK(cnt <= 4L * m * t_f1);
    }
}

TEST_CASE("full column rank for unique-solution systems (exact rank)") {
    Rng rng(71);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);  // up to 6
        uint64_t planted_mask = 1 + rng() % ((1ULL << n) - 1);
        Assignment planted = Assignment::from_mask(n, planted_mask);
        PolySystem sys =
            test::random_c_system_with_solution(n, n + 1, 3, planted, rng);
        auto sols = brute_force_solutions(sys);
        if (sols.size() != 1) continue;
        MacaulaySystem built = build_boolean_macaulay(f1_of(sys), n);
        CHECK(sparse_rank(built.m.mat) == built.m.cols());
        ++done;
    }
    CHECK(done >= 4);
}

TEST_CASE("entry oracles: multiplier-1 row lists the nontrivial monomials") {
    PolySystem sys(2, Field::kC);
    sys.add(poly_of(2, Field::kC, {{{1, 1}, 2}, {{1, 0}, -3}, {{0, 0}, 7}}));
    sys.append_field_equations();
    MacaulaySystem built = build_macaulay(sys, DegreeKind::kMax, 3);
    MacaulaySpec spec = spec_of(built, sys);

    RowLabel unit{Monomial::one(2), 0};
    CHECK(entry_col_oracle(spec, unit, 0) == Monomial({1, 0}));
    CHECK(entry_col_oracle(spec, unit, 1) == Monomial({1, 1}));
    CHECK_THROWS_AS(entry_col_oracle(spec, unit, 2), OracleRangeError);
    CHECK(entry_value_oracle(spec, unit, Monomial({1, 1})) == 2);
    CHECK(entry_value_oracle(spec, unit, Monomial({0, 1})) == 0);
}

TEST_CASE("boolean transpose oracle: divisor structure of a monomial row") {
    // f = x1 x2 (single monomial), column x1 x2 x3: multipliers are
    // x3 * (divisors of x1 x2), four rows, all entries 1
    PolySystem f1(3, Field::kC);
    f1.add(poly_of(3, Field::kC, {{{1, 1, 0}, 1}}));
    MacaulaySpec spec{Flavor::kBoolean, DegreeKind::kTotal, 3, &f1};
    Monomial col({1, 1, 1});
    auto rows = column_nonzero_rows(spec, col);
    REQUIRE(rows.size() == 4);
    std::set<uint64_t> multipliers;
    for (const auto& label : rows) {
        multipliers.insert(label.multiplier.mask());
        CHECK(entry_value_oracle(spec, label, col) == 1);
    }
    CHECK(multipliers ==
          std::set<uint64_t>{0b100, 0b101, 0b110, 0b111});
    CHECK_THROWS_AS(entry_row_oracle(spec, col, 4), OracleRangeError);
}

TEST_CASE("oracles agree with materialized matrices") {
    Rng rng(83);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);  // up to 4 here
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 4, planted, rng);
        PolySystem f1 = f1_of(sys);

        for (Flavor flavor : {Flavor::kPlain, Flavor::kBoolean}) {
            MacaulaySystem built =
                flavor == Flavor::kPlain
                    ? build_macaulay(sys, DegreeKind::kMax, 3)
                    : build_boolean_macaulay(f1, n);
            const PolySystem& src = flavor == Flavor::kPlain ? sys : f1;
            MacaulaySpec spec = spec_of(built, src);

            // row direction: every (row, k) and every (row, col)
            for (int r = 0; r < built.m.rows(); ++r) {
                const auto& row = built.m.mat.row[r];
                const RowLabel& label = built.m.row_labels[r];
                for (int k = 0; k < static_cast<int>(row.size()); ++k) {
                    CHECK(entry_col_oracle(spec, label, k) ==
                          built.m.col_labels[row[k].first]);
                }
                CHECK_THROWS_AS(
                    entry_col_oracle(spec, label, static_cast<int>(row.size())),
                    OracleRangeError);
                size_t k = 0;
                for (int c = 0; c < built.m.cols(); ++c) {
                    Rational want(0);
                    if (k < row.size() && row[k].first == c) want = row[k++].second;
                    CHECK(entry_value_oracle(spec, label, built.m.col_labels[c]) ==
                          want);
                }
            }

            // column direction: nonzero rows per column match exactly
            for (int c = 0; c < built.m.cols(); ++c) {
                std::vector<RowLabel> expect;
                for (int r = 0; r < built.m.rows(); ++r)
                    for (const auto& [cc, vv] : built.m.mat.row[r])
                        if (cc == c) expect.push_back(built.m.row_labels[r]);
                auto got = column_nonzero_rows(spec, built.m.col_labels[c]);
                REQUIRE(got.size() == expect.size());
                for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
            }
        }
    }
}

TEST_CASE("block reduction: {x1 - 1} with field equations at d = 3") {
    PolySystem sys(1, Field::kC);
    sys.add(poly_of(1, Field::kC, {{{1}, 1}, {{0}, -1}}));
    sys.append_field_equations();
    BlockReduceVerdict v = block_reduce_check(sys, 3);
    CHECK(v.row_space_equal);
    CHECK(v.identity_rows == 2);  // x1^2, x1^3
}

TEST_CASE("block reduction: field equations alone") {
    for (int n : {1, 2}) {
        PolySystem sys(n, Field::kC);
        sys.append_field_equations();
        const int d = n + 2;
        BlockReduceVerdict v = block_reduce_check(sys, d);
        long expect = 1;
        for (int i = 0; i < n; ++i) expect *= (d + 1);
        expect -= 1L << n;
        CHECK(v.identity_rows == expect);
        CHECK(v.row_space_equal);
    }
}

TEST_CASE("block reduction on random quadratic systems") {
    Rng rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        Assignment planted = Assignment::from_mask(n, rng() % (1ULL << n));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 3, planted, rng);
        BlockReduceVerdict v = block_reduce_check(sys, n + 2);
        CHECK(v.row_space_equal);
    }
}

TEST_CASE("solution correspondence: unique, multiple, inconsistent") {
    // unique solution (1,1): x1 - 1 = 0, x1 x2 - 1 = 0
    PolySystem uniq(2, Field::kC);
    uniq.add(poly_of(2, Field::kC, {{{1, 0}, 1}, {{0, 0}, -1}}));
    uniq.add(poly_of(2, Field::kC, {{{1, 1}, 1}, {{0, 0}, -1}}));
    uniq.append_field_equations();
    NormalizeResult norm = normalize_constants(uniq);
    REQUIRE_FALSE(norm.zero_solution);
    CorrespondenceVerdict v = solution_correspondence_check(norm.system);
    CHECK(v.ok);
    CHECK(v.num_solutions == 1);
    CHECK(v.full_column_rank);
    CHECK(v.unique_matches_monomial_vector);
    CHECK(v.weight_identity);

    // multiple solutions: x1 x2 - 1 has (1,1); x1 - 1: drop -> {x1 - 1} only
    PolySystem multi(2, Field::kC);
    multi.add(poly_of(2, Field::kC, {{{1, 0}, 1}, {{0, 0}, -1}}));
    multi.append_field_equations();
    NormalizeResult norm2 = normalize_constants(multi);
    CorrespondenceVerdict v2 = solution_correspondence_check(norm2.system);
    CHECK(v2.ok);
    CHECK(v2.num_solutions == 2);  // (1,0) and (1,1)
    CHECK_FALSE(v2.full_column_rank);
    CHECK(v2.all_monomial_vectors_satisfy);

    // inconsistent: x1 - 1 and x1 x2, x2 - 1
    PolySystem bad(2, Field::kC);
    bad.add(poly_of(2, Field::kC, {{{1, 0}, 1}, {{0, 0}, -1}}));
    bad.add(poly_of(2, Field::kC, {{{0, 1}, 1}, {{0, 0}, -1}}));
    bad.add(poly_of(2, Field::kC, {{{1, 1}, 1}}));
    bad.append_field_equations();
    NormalizeResult norm3 = normalize_constants(bad);
    CorrespondenceVerdict v3 = solution_correspondence_check(norm3.system);
    CHECK(v3.ok);
    CHECK(v3.num_solutions == 0);
    CHECK_FALSE(v3.consistent);
}

TEST_CASE("normalized systems give a single unit b entry") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Assignment planted =
            Assignment::from_mask(n, 1 + rng() % ((1ULL << n) - 1));
        PolySystem sys = test::random_c_system_with_solution(n, 2, 4, planted, rng);
        NormalizeResult norm = normalize_constants(sys);
        if (norm.zero_solution) continue;
        MacaulaySystem built = build_boolean_macaulay(f1_of(norm.system), n);
        REQUIRE(built.b.size() == 1);
        CHECK(built.b[0].second == 1);
    }
}
