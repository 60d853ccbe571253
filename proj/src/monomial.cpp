#include "mq/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mq {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_) {
        if (e < 0) throw ParseError("monomial exponent must be non-negative");
    }
}

Monomial Monomial::one(int num_vars) {
    return Monomial(std::vector<int>(num_vars, 0));
}

Monomial Monomial::variable(int num_vars, int i) {
    std::vector<int> e(num_vars, 0);
    e.at(i) = 1;
    return Monomial(std::move(e));
}

Monomial Monomial::from_mask(int num_vars, uint64_t mask) {
    std::vector<int> e(num_vars, 0);
    for (int i = 0; i < num_vars; ++i)
        if ((mask >> i) & 1ULL) e[i] = 1;
    return Monomial(std::move(e));
}

int Monomial::total_degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0);
}

int Monomial::max_degree() const {
    return exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end());
}

bool Monomial::is_constant() const { return total_degree() == 0; }

bool Monomial::is_multilinear() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e <= 1; });
}

uint64_t Monomial::mask() const {
    if (!is_multilinear())
        throw Error("mask() requested for a non-multilinear monomial");
    return support_mask();
}

uint64_t Monomial::support_mask() const {
    uint64_t m = 0;
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > 0) m |= 1ULL << i;
    return m;
}

int Monomial::support_size() const {
    int s = 0;
    for (int e : exps_)
        if (e > 0) ++s;
    return s;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    if (num_vars() != rhs.num_vars())
        throw DimensionError("monomial product across different variable counts");
    std::vector<int> e(exps_);
    for (size_t i = 0; i < e.size(); ++i) e[i] += rhs.exps_[i];
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& rhs) const {
    if (num_vars() != rhs.num_vars()) return false;
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > rhs.exps_[i]) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& rhs) const {
    std::vector<int> e(rhs.exps_);
    for (size_t i = 0; i < e.size(); ++i) {
        e[i] -= exps_[i];
        if (e[i] < 0) throw Error("quotient_of: monomial does not divide");
    }
    return Monomial(std::move(e));
}

Monomial Monomial::multilinear_image() const {
    std::vector<int> e(exps_);
    for (int& v : e) v = std::min(v, 1);
    return Monomial(std::move(e));
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!first) os << "*";
        os << "x" << (i + 1);
        if (exps_[i] > 1) os << "^" << exps_[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    int ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta < tb;
    for (int i = a.num_vars() - 1; i >= 0; --i) {
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
    }
    return false;
}

}  // namespace mq
