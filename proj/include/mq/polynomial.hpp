#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mq/monomial.hpp"
#include "mq/rational.hpp"

namespace mq {

enum class Field { kF2, kC };

std::string field_name(Field f);
Field field_from_name(const std::string& s);

/// A 0/1 point; all evaluation in this library happens at Boolean points.
struct Assignment {
    std::vector<uint8_t> bits;

    Assignment() = default;
    explicit Assignment(std::vector<uint8_t> b) : bits(std::move(b)) {}
    static Assignment from_mask(int num_vars, uint64_t mask);

    int num_vars() const { return static_cast<int>(bits.size()); }
    int weight() const;
    uint64_t mask() const;
    bool operator==(const Assignment& rhs) const { return bits == rhs.bits; }
};

/// Sparse polynomial: monomial -> exact rational coefficient, zero
/// coefficients never stored. F2-tagged polynomials keep multilinear
/// monomials with coefficients in {0,1} (mod-2 reduced).
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    Polynomial(int num_vars, Field field);

    int num_vars() const { return num_vars_; }
    Field field() const { return field_; }
    const TermMap& terms() const { return terms_; }

    /// Adds coeff * mono, folding into an existing term and dropping zeros;
    /// F2 coefficients are reduced mod 2.
    void add_term(const Monomial& mono, const Rational& coeff);
    void add_scaled(const Polynomial& other, const Rational& scale);

    /// Number of stored terms.
    int sparsity() const { return static_cast<int>(terms_.size()); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& mono) const;
    Rational constant_term() const;
    int total_degree() const;
    int max_degree() const;
    /// Per-variable maximum exponent over all stored terms.
    std::vector<int> variable_max_exponents() const;
    bool is_multilinear() const;

    /// Value at a 0/1 point: sum of coefficients whose monomial support is
    /// contained in the support of a.
    Rational eval(const Assignment& a) const;
    /// Companion mod-2 value; requires integer coefficients.
    int eval_mod2(const Assignment& a) const;

    Polynomial times_monomial(const Monomial& m) const;
    /// Exponent-clamping image extended linearly; colliding images are summed
    /// and cancellations dropped. Result is C-tagged.
    Polynomial multilinear_image() const;

    Polynomial negated() const;
    Polynomial scaled(const Rational& c) const;
    /// Copy into a wider variable space; index_map[i] is the new index of
    /// variable i.
    Polynomial reindexed(int new_num_vars, const std::vector<int>& index_map) const;

    bool operator==(const Polynomial& rhs) const;
    std::string str() const;

  private:
    int num_vars_;
    Field field_;
    TermMap terms_;
};

/// x_i^2 - x_i over C.
Polynomial field_equation(int num_vars, int i);
/// Index of the variable if p is exactly some x_i^2 - x_i.
std::optional<int> field_equation_var(const Polynomial& p);

class PolySystem {
  public:
    PolySystem(int num_vars, Field field)
        : num_vars_(num_vars), field_(field) {}

    int num_vars() const { return num_vars_; }
    Field field() const { return field_; }
    bool includes_field_equations() const { return includes_field_equations_; }
    void set_includes_field_equations(bool v) { includes_field_equations_ = v; }

    const std::vector<Polynomial>& polys() const { return polys_; }
    int size() const { return static_cast<int>(polys_.size()); }
    void add(Polynomial p);

    /// Largest sparsity over member polynomials (0 for an empty system).
    int max_sparsity() const;
    int max_degree() const;
    int total_degree() const;

    /// Member polynomials that are not field equations, in order.
    std::vector<Polynomial> non_field_polys() const;
    /// Appends x_i^2 - x_i for every variable and sets the flag.
    void append_field_equations();

    bool eval_zero(const Assignment& a) const;

  private:
    int num_vars_;
    Field field_;
    bool includes_field_equations_ = false;
    std::vector<Polynomial> polys_;
};

/// Enumerates all 2^n points in ascending bitmask order and returns those
/// where every polynomial vanishes (mod 2 for F2 systems, over the rationals
/// otherwise). Throws CapacityError when n exceeds the cap.
std::vector<Assignment> brute_force_solutions(const PolySystem& sys,
                                              int num_vars_cap = 20);

}  // namespace mq
