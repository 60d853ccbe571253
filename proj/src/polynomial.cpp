#include "mq/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace mq {

std::string field_name(Field f) { return f == Field::kF2 ? "F2" : "C"; }

Field field_from_name(const std::string& s) {
    if (s == "F2") return Field::kF2;
    if (s == "C") return Field::kC;
    throw ParseError("unknown field tag '" + s + "' (expected F2 or C)");
}

Assignment Assignment::from_mask(int num_vars, uint64_t mask) {
    std::vector<uint8_t> b(num_vars, 0);
    for (int i = 0; i < num_vars; ++i) b[i] = (mask >> i) & 1ULL;
    return Assignment(std::move(b));
}

int Assignment::weight() const {
    int w = 0;
    for (uint8_t b : bits) w += b;
    return w;
}

uint64_t Assignment::mask() const {
    uint64_t m = 0;
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) m |= 1ULL << i;
    return m;
}

Polynomial::Polynomial(int num_vars, Field field)
    : num_vars_(num_vars), field_(field) {}

void Polynomial::add_term(const Monomial& mono, const Rational& coeff) {
    if (mono.num_vars() != num_vars_)
        throw DimensionError("term has wrong exponent length");
    if (field_ == Field::kF2) {
        if (!mono.is_multilinear())
            throw ParseError("F2 polynomials store multilinear monomials only");
        if (coeff.get_den() != 1)
            throw ParseError("F2 coefficient must be an integer");
    }
    auto it = terms_.find(mono);
    Rational next = coeff;
    if (it != terms_.end()) next += it->second;
    if (field_ == Field::kF2) {
        Int num = next.get_num();
        mpz_mod_ui(num.get_mpz_t(), num.get_mpz_t(), 2);
        next = Rational(num);
    }
    if (next == 0) {
        if (it != terms_.end()) terms_.erase(it);
        return;
    }
    if (it != terms_.end())
        it->second = next;
    else
        terms_.emplace(mono, next);
}

void Polynomial::add_scaled(const Polynomial& other, const Rational& scale) {
    if (other.num_vars_ != num_vars_)
        throw DimensionError("add_scaled across different variable counts");
    if (scale == 0) return;
    for (const auto& [m, c] : other.terms_) add_term(m, c * scale);
}

Rational Polynomial::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
    return coefficient(Monomial::one(num_vars_));
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int Polynomial::max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.max_degree());
    return d;
}

std::vector<int> Polynomial::variable_max_exponents() const {
    std::vector<int> g(num_vars_, 0);
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < num_vars_; ++i) g[i] = std::max(g[i], m.exponent(i));
    return g;
}

bool Polynomial::is_multilinear() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.is_multilinear(); });
}

Rational Polynomial::eval(const Assignment& a) const {
    if (a.num_vars() != num_vars_)
        throw DimensionError("assignment length does not match polynomial");
    const uint64_t am = a.mask();
    Rational s(0);
    for (const auto& [m, c] : terms_) {
        uint64_t sm = m.support_mask();
        if ((sm & am) == sm) s += c;
    }
    return s;
}

int Polynomial::eval_mod2(const Assignment& a) const {
    if (a.num_vars() != num_vars_)
        throw DimensionError("assignment length does not match polynomial");
    const uint64_t am = a.mask();
    Int s(0);
    for (const auto& [m, c] : terms_) {
        if (c.get_den() != 1)
            throw Error("eval_mod2 requires integer coefficients");
        uint64_t sm = m.support_mask();
        if ((sm & am) == sm) s += c.get_num();
    }
    Int r;
    mpz_mod_ui(r.get_mpz_t(), s.get_mpz_t(), 2);
    return static_cast<int>(r.get_si());
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
    Polynomial out(num_vars_, field_);
    for (const auto& [t, c] : terms_) out.add_term(t * m, c);
    return out;
}

Polynomial Polynomial::multilinear_image() const {
    Polynomial out(num_vars_, Field::kC);
    for (const auto& [t, c] : terms_) out.add_term(t.multilinear_image(), c);
    return out;
}

Polynomial Polynomial::negated() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(num_vars_, field_);
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
}

Polynomial Polynomial::reindexed(int new_num_vars,
                                 const std::vector<int>& index_map) const {
    Polynomial out(new_num_vars, field_);
    for (const auto& [m, c] : terms_) {
        std::vector<int> e(new_num_vars, 0);
        for (int i = 0; i < num_vars_; ++i) {
            if (m.exponent(i) == 0) continue;
            e.at(index_map.at(i)) = m.exponent(i);
        }
        out.add_term(Monomial(std::move(e)), c);
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return num_vars_ == rhs.num_vars_ && field_ == rhs.field_ &&
           terms_ == rhs.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        os << c.get_str();
        if (!m.is_constant()) os << "*" << m.str();
        first = false;
    }
    return os.str();
}

Polynomial field_equation(int num_vars, int i) {
    Polynomial p(num_vars, Field::kC);
    std::vector<int> e(num_vars, 0);
    e[i] = 2;
    p.add_term(Monomial(e), Rational(1));
    p.add_term(Monomial::variable(num_vars, i), Rational(-1));
    return p;
}

std::optional<int> field_equation_var(const Polynomial& p) {
    if (p.sparsity() != 2) return std::nullopt;
    int var = -1;
    for (const auto& [m, c] : p.terms()) {
        if (m.support_size() != 1) return std::nullopt;
        int i = 0;
        while (m.exponent(i) == 0) ++i;
        if (m.exponent(i) == 1 && c == -1) {
            if (var != -1 && var != i) return std::nullopt;
            var = i;
        } else if (m.exponent(i) == 2 && c == 1) {
            if (var != -1 && var != i) return std::nullopt;
            var = i;
        } else {
            return std::nullopt;
        }
    }
    // Both the degree-1 and degree-2 term must reference the same variable.
    Polynomial ref = field_equation(p.num_vars(), var);
    return ref == p ? std::optional<int>(var) : std::nullopt;
}

void PolySystem::add(Polynomial p) {
    if (p.num_vars() != num_vars_)
        throw DimensionError("polynomial variable count differs from system");
    if (p.field() != field_)
        throw DimensionError("polynomial field tag differs from system");
    polys_.push_back(std::move(p));
}

int PolySystem::max_sparsity() const {
    int t = 0;
    for (const auto& p : polys_) t = std::max(t, p.sparsity());
    return t;
}

int PolySystem::max_degree() const {
    int d = 0;
    for (const auto& p : polys_) d = std::max(d, p.max_degree());
    return d;
}

int PolySystem::total_degree() const {
    int d = 0;
    for (const auto& p : polys_) d = std::max(d, p.total_degree());
    return d;
}

std::vector<Polynomial> PolySystem::non_field_polys() const {
    std::vector<Polynomial> out;
    for (const auto& p : polys_)
        if (!field_equation_var(p)) out.push_back(p);
    return out;
}

void PolySystem::append_field_equations() {
    for (int i = 0; i < num_vars_; ++i) add(field_equation(num_vars_, i));
    includes_field_equations_ = true;
}

bool PolySystem::eval_zero(const Assignment& a) const {
    for (const auto& p : polys_) {
        if (field_ == Field::kF2) {
            if (p.eval_mod2(a) != 0) return false;
        } else {
            if (p.eval(a) != 0) return false;
        }
    }
    return true;
}

std::vector<Assignment> brute_force_solutions(const PolySystem& sys,
                                              int num_vars_cap) {
    const int n = sys.num_vars();
    if (n > num_vars_cap)
        throw CapacityError("brute force capped at " +
                            std::to_string(num_vars_cap) + " variables");
    std::vector<Assignment> out;
    const uint64_t lim = 1ULL << n;
    for (uint64_t mask = 0; mask < lim; ++mask) {
        Assignment a = Assignment::from_mask(n, mask);
        if (sys.eval_zero(a)) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace mq
