#pragma once

#include "ctaut/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ctaut {

using Exponent = std::vector<int>;

// Sparse polynomial over Q in variables a_1..a_n. No zero coefficients are stored.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t arity) : arity_(arity) {}

    static MultiPoly constant(std::size_t arity, const Rational& c);
    static MultiPoly variable(std::size_t arity, std::size_t index);  // a_{index+1}
    static MultiPoly monomial(const Exponent& e, const Rational& c);

    std::size_t arity() const { return arity_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponent& e) const;
    void add_term(const Exponent& e, const Rational& c);

    int degree() const;  // -1 for the zero polynomial
    bool is_homogeneous(int k) const;
    MultiPoly homogeneous_part(int k) const;

    Rational evaluate(std::span<const Rational> point) const;
    Rational evaluate(std::span<const long> point) const;

    // Exact division; throws std::domain_error if the divisor does not divide.
    MultiPoly divide_exact(const MultiPoly& divisor) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void check_arity(const MultiPoly& o) const;

    std::size_t arity_ = 0;
    std::map<Exponent, Rational> terms_;
};

// All exponent vectors of length n with total degree k, in lexicographically decreasing order.
std::vector<Exponent> homogeneous_exponents(std::size_t n, int k);

}  // namespace ctaut
