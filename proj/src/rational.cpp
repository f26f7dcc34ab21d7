#include "lipeq/rational.hpp"

#include <stdexcept>

namespace lipeq {

namespace {

const BigInt kSqrtScale = BigInt(1) << 62;

BigInt floor_sqrt(const BigInt& n) {
    return boost::multiprecision::sqrt(n);  // floor of the square root
}

}  // namespace

Rational rat_pow(const Rational& base, unsigned exp) {
    if (exp == 0) return Rational(1);
    BigInt n = boost::multiprecision::pow(numerator(base), exp);
    BigInt d = boost::multiprecision::pow(denominator(base), exp);
    return Rational(n, d);
}

Rational sqrt_lower_bound(const Rational& q) {
    if (q < 0) throw std::domain_error("sqrt of negative rational");
    if (q == 0) return Rational(0);
    BigInt scaled = numerator(q) * kSqrtScale * kSqrtScale / denominator(q);
    return Rational(floor_sqrt(scaled), kSqrtScale);
}

Rational sqrt_upper_bound(const Rational& q) {
    if (q < 0) throw std::domain_error("sqrt of negative rational");
    if (q == 0) return Rational(0);
    BigInt scaled = numerator(q) * kSqrtScale * kSqrtScale / denominator(q);
    return Rational(floor_sqrt(scaled) + 1, kSqrtScale);
}

std::string to_fraction_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_decimal_string(const Rational& q, int significant) {
    if (significant < 1) throw std::invalid_argument("significant digits must be >= 1");
    if (q == 0) return "0";

    std::string sign = q < 0 ? "-" : "";
    BigInt n = boost::multiprecision::abs(numerator(q));
    BigInt d = denominator(q);

    // Decimal exponent e with 10^e <= |q| < 10^(e+1).
    int e = 0;
    if (n >= d) {
        BigInt whole = n / d;
        e = static_cast<int>(whole.str().size()) - 1;
    } else {
        BigInt num = n;
        while (num < d) {
            num *= 10;
            --e;
        }
    }

    // Round |q| * 10^(significant-1-e) half away from zero.
    int shift = significant - 1 - e;
    BigInt num = n;
    BigInt den = d;
    if (shift >= 0) {
        num *= boost::multiprecision::pow(BigInt(10), shift);
    } else {
        den *= boost::multiprecision::pow(BigInt(10), -shift);
    }
    BigInt scaled = (2 * num + den) / (2 * den);

    std::string digits = scaled.str();
    if (static_cast<int>(digits.size()) > significant) {
        // 999..9 rounded up to 1000..0; drop the trailing zero.
        digits.pop_back();
        ++e;
    }

    std::string out;
    if (e >= 0) {
        int int_len = e + 1;
        if (int_len >= static_cast<int>(digits.size())) {
            out = digits + std::string(int_len - digits.size(), '0');
        } else {
            out = digits.substr(0, int_len) + "." + digits.substr(int_len);
        }
    } else {
        out = "0." + std::string(-e - 1, '0') + digits;
    }

    if (out.find('.') != std::string::npos) {
        std::size_t last = out.find_last_not_of('0');
        if (out[last] == '.') --last;
        out.erase(last + 1);
    }
    return sign + out;
}

}  // namespace lipeq
