#pragma once

#include <vector>

#include "mq/polynomial.hpp"
#include "mq/rng.hpp"

namespace mq::test {

// Random multilinear quadratic polynomial over F2 with at most max_terms
// terms (at least one).
inline Polynomial random_f2_poly(int n, int max_terms, Rng& rng) {
    Polynomial p(n, Field::kF2);
    std::uniform_int_distribution<int> term_count(1, max_terms);
    std::uniform_int_distribution<int> var(0, n - 1);
    const int t = term_count(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<int> e(n, 0);
        switch (rng() % 3) {
            case 0:  // constant
                break;
            case 1:
                e[var(rng)] = 1;
                break;
            default: {
                e[var(rng)] = 1;
                e[var(rng)] = 1;  // may coincide: degree-1 term
                break;
            }
        }
        p.add_term(Monomial(e), Rational(1));
    }
    if (p.is_zero()) p.add_term(Monomial::variable(n, var(rng)), Rational(1));
    return p;
}

inline PolySystem random_f2_system(int n, int m, int max_terms, Rng& rng) {
    PolySystem sys(n, Field::kF2);
    for (int i = 0; i < m; ++i) sys.add(random_f2_poly(n, max_terms, rng));
    return sys;
}

// Random F2 system guaranteed to vanish at the planted assignment.
inline PolySystem random_f2_system_with_solution(int n, int m, int max_terms,
                                                 const Assignment& planted,
                                                 Rng& rng) {
    PolySystem sys(n, Field::kF2);
    for (int i = 0; i < m; ++i) {
        Polynomial p = random_f2_poly(n, max_terms, rng);
        if (p.eval_mod2(planted) != 0)
            p.add_term(Monomial::one(n), Rational(1));  // flip the parity
        if (p.is_zero()) {
            p.add_term(Monomial::one(n), Rational(1));
            p.add_term(Monomial::one(n), Rational(1));  // cancels back to zero
            // degenerate; replace with x_j + a_j so the planted point stays
            int j = static_cast<int>(rng() % n);
            p.add_term(Monomial::variable(n, j), Rational(1));
            if (planted.bits[j]) p.add_term(Monomial::one(n), Rational(1));
        }
        sys.add(std::move(p));
    }
    return sys;
}

// Random C-tagged multilinear quadratic system with field equations, built to
// vanish exactly at the planted point (terms chosen so the integer value is
// zero, not merely even).
inline PolySystem random_c_system_with_solution(int n, int m, int max_terms,
                                                const Assignment& planted,
                                                Rng& rng) {
    PolySystem sys(n, Field::kC);
    std::uniform_int_distribution<int> var(0, n - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < m; ++i) {
        Polynomial p(n, Field::kC);
        Rational value(0);
        for (int t = 0; t < max_terms - 1; ++t) {
            std::vector<int> e(n, 0);
            if (rng() % 2) {
                e[var(rng)] = 1;
            } else {
                e[var(rng)] = 1;
                e[var(rng)] = 1;
            }
            int c = coeff(rng);
            if (c == 0) c = 1;
            Monomial mono(e);
            const uint64_t sm = mono.support_mask();
            if ((sm & planted.mask()) == sm) value += c;
            p.add_term(mono, Rational(c));
        }
        p.add_term(Monomial::one(n), -value);  // force an exact zero at planted
        if (p.is_zero()) {
            int j = var(rng);
            p.add_term(Monomial::variable(n, j), Rational(1));
            if (planted.bits[j]) p.add_term(Monomial::one(n), Rational(-1));
        }
        sys.add(std::move(p));
    }
    sys.append_field_equations();
    return sys;
}

}  // namespace mq::test
