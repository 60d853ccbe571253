#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mq/errors.hpp"

namespace mq {

/// A power product of variables, stored as its exponent vector.
///
/// Multilinear monomials (every exponent 0 or 1) additionally map to a
/// bitmask with variable i on bit i, which is what the subset-valued
/// machinery works with.
class Monomial {
  public:
    explicit Monomial(std::vector<int> exponents);

    static Monomial one(int num_vars);
    static Monomial variable(int num_vars, int i);
    static Monomial from_mask(int num_vars, uint64_t mask);

    int num_vars() const { return static_cast<int>(exps_.size()); }
    int exponent(int i) const { return exps_[i]; }
    const std::vector<int>& exponents() const { return exps_; }

    int total_degree() const;
    int max_degree() const;
    bool is_constant() const;
    bool is_multilinear() const;

    /// Bitmask of the exponent vector; defined only for multilinear monomials.
    uint64_t mask() const;
    /// Bitmask of variables appearing with exponent >= 1 (any monomial).
    uint64_t support_mask() const;
    int support_size() const;

    Monomial operator*(const Monomial& rhs) const;
    bool divides(const Monomial& rhs) const;
    /// rhs / *this, valid when *this divides rhs.
    Monomial quotient_of(const Monomial& rhs) const;

    /// Image under exponent clamping: every exponent becomes min(e, 1).
    Monomial multilinear_image() const;

    bool operator==(const Monomial& rhs) const { return exps_ == rhs.exps_; }
    bool operator!=(const Monomial& rhs) const { return exps_ != rhs.exps_; }

    std::string str() const;

  private:
    std::vector<int> exps_;
};

/// Canonical order: ascending total degree, ties broken by ascending value of
/// the exponent vector read as an integer in base d+1 with x1 least
/// significant. The tie-break is base-independent for any base exceeding all
/// exponents, so it reduces to comparing exponent vectors from the last
/// variable down. On multilinear monomials of one degree it is ascending
/// bitmask order.
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_less(a, b);
    }
};

}  // namespace mq
