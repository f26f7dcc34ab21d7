#pragma once

#include "lipeq/rational.hpp"

#include <string>
#include <vector>

namespace lipeq {

// Polynomial in the contraction-ratio symbol `l`, rational coefficients,
// ascending degree, trailing zeros stripped (so the zero polynomial has no
// coefficients at all).
class LambdaPoly {
public:
    LambdaPoly() = default;
    explicit LambdaPoly(Rational constant);
    explicit LambdaPoly(std::vector<Rational> coefficients);

    static LambdaPoly lambda();
    static LambdaPoly monomial(Rational coefficient, unsigned degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(unsigned degree) const;

    Rational eval(const Rational& lambda) const;

    LambdaPoly operator-() const;
    LambdaPoly& operator+=(const LambdaPoly& rhs);
    LambdaPoly& operator-=(const LambdaPoly& rhs);
    LambdaPoly& operator*=(const LambdaPoly& rhs);
    friend LambdaPoly operator+(LambdaPoly lhs, const LambdaPoly& rhs) { return lhs += rhs; }
    friend LambdaPoly operator-(LambdaPoly lhs, const LambdaPoly& rhs) { return lhs -= rhs; }
    friend LambdaPoly operator*(LambdaPoly lhs, const LambdaPoly& rhs) { return lhs *= rhs; }
    LambdaPoly pow(unsigned exp) const;

    friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

    // Canonical rendering inside the expression grammar:
    // parse_expr(p.to_string()) == p for every p.
    std::string to_string() const;

private:
    void strip();

    std::vector<Rational> coeffs_;
};

}  // namespace lipeq
