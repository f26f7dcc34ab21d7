#include "lipeq/poly.hpp"

#include "lipeq/errors.hpp"

namespace lipeq {

LambdaPoly::LambdaPoly(Rational constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
}

LambdaPoly::LambdaPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    strip();
}

LambdaPoly LambdaPoly::lambda() { return monomial(Rational(1), 1); }

LambdaPoly LambdaPoly::monomial(Rational coefficient, unsigned degree) {
    LambdaPoly p;
    if (coefficient == 0) return p;
    p.coeffs_.assign(degree + 1, Rational(0));
    p.coeffs_[degree] = std::move(coefficient);
    return p;
}

Rational LambdaPoly::coefficient(unsigned degree) const {
    if (degree >= coeffs_.size()) return Rational(0);
    return coeffs_[degree];
}

Rational LambdaPoly::eval(const Rational& lambda) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

LambdaPoly LambdaPoly::operator-() const {
    LambdaPoly out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    strip();
    return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    strip();
    return *this;
}

LambdaPoly& LambdaPoly::operator*=(const LambdaPoly& rhs) {
    if (coeffs_.empty() || rhs.coeffs_.empty()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    coeffs_ = std::move(out);
    strip();
    return *this;
}

LambdaPoly LambdaPoly::pow(unsigned exp) const {
    LambdaPoly acc(Rational(1));
    LambdaPoly base(*this);
    while (exp > 0) {
        if (exp & 1u) acc *= base;
        exp >>= 1u;
        if (exp > 0) base *= base;
    }
    return acc;
}

void LambdaPoly::strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::string LambdaPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t deg = 0; deg < coeffs_.size(); ++deg) {
        const Rational& c = coeffs_[deg];
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (deg == 0) {
                out += to_fraction_string(c);
            } else if (c == 1) {
                out += "l";
            } else {
                // "-1*l^2" rather than "-l^2": the grammar has no unary minus
                // on the symbol, only signed literals.
                out += to_fraction_string(c) + "*l";
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (deg == 0) {
                out += to_fraction_string(mag);
            } else if (mag == 1) {
                out += "l";
            } else {
                out += to_fraction_string(mag) + "*l";
            }
        }
        if (deg >= 2) out += "^" + std::to_string(deg);
        first = false;
    }
    return out;
}

}  // namespace lipeq
