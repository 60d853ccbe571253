#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mq {

// Exact arithmetic used everywhere a matrix is constructed or reduced.
// Floating point appears only in the SVD-based routines.
using Rational = mpq_class;
using Int = mpz_class;

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline Int int_pow(long base, long exp) {
    Int b(base), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(const Int& z) { return z.get_d(); }

inline Rational rational_of(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

using RatVec = std::vector<Rational>;

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational norm_sq(const RatVec& a) { return dot(a, a); }

}  // namespace mq
