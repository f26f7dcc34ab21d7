#pragma once

#include "lipeq/geometry.hpp"
#include "lipeq/poly.hpp"
#include "lipeq/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lipeq {

// Word in map indices, 0-based internally; 1-based only at the IO boundary.
using MapWord = std::vector<int>;

// Which of the end maps is overlap-free.
enum class FreeSide { LeftFree, RightFree, BothFree };

// Adjacent pair (index, index+1) overlaps in an interval of length
// lambda^exponent.
struct Overlap {
    int index;
    int exponent;

    friend bool operator==(const Overlap&, const Overlap&) = default;
};

// Successful class check: the complete-overlap structure of a 1D system.
struct ClassCertificate {
    std::vector<int> k_vector;             // distinct exponents, strictly decreasing, each >= 2
    std::vector<Overlap> overlaps;         // ascending by index
    std::vector<std::vector<int>> gamma;   // gamma[level] = sorted indices with exponent k_vector[level]
    std::vector<int> gamma_rest;           // adjacent pairs with no overlap
    FreeSide side = FreeSide::BothFree;

    std::vector<int> gamma_counts() const;
};

struct ClassViolation {
    std::string condition;     // "m", "I", "II" or "III"
    std::string detail;
    std::vector<int> indices;  // offending map indices, 0-based
    std::optional<Box> witness;
};

class ClassViolationError : public std::runtime_error {
public:
    explicit ClassViolationError(ClassViolation v)
        : std::runtime_error("class condition (" + v.condition + ") violated: " + v.detail),
          violation_(std::move(v)) {}

    const ClassViolation& violation() const { return violation_; }

private:
    ClassViolation violation_;
};

// Homogeneous system {f_i(x) = lambda*x + a_i} on [0,1]^dim, dim 1 or 2.
// Translation coordinates are polynomials in lambda, kept symbolic so
// reflection and overlap identities stay exact across lambda values.
class HomogeneousIFS {
public:
    HomogeneousIFS(Rational lambda, int dim, std::vector<std::vector<LambdaPoly>> translations);

    const Rational& lambda() const { return lambda_; }
    int dim() const { return dim_; }
    int map_count() const { return static_cast<int>(translations_.size()); }

    const std::vector<LambdaPoly>& translation_poly(int i) const;
    const Vec& translation(int i) const;  // evaluated at lambda
    AffineMap map(int i) const;

    // f_{w_1} after f_{w_2} after ... applied to the unit box; the empty word
    // gives the unit box itself.
    Box cylinder(const MapWord& word) const;
    AffineMap word_map(const MapWord& word) const;

private:
    Rational lambda_;
    int dim_;
    std::vector<std::vector<LambdaPoly>> translations_;
    std::vector<Vec> evaluated_;
};

// Checks the complete-overlap class conditions for a 1D system:
//   (I)  a_1 = 0 < a_2 < ... < a_m = 1 - lambda
//   (II) no triple intersections; adjacent intersections empty or of length
//        lambda^k with k >= 2 (exponents bounded by 64)
//   (III) at least one of the two end maps overlap-free
// A system with no overlaps at all passes with an empty k-vector.
std::variant<ClassCertificate, ClassViolation> validate_class(const HomogeneousIFS& ifs);

// Overlap counts per level (#gamma_1, ..., #gamma_n).
std::vector<int> gamma_signature(const ClassCertificate& cert);

// Mirror about the midpoint of [0,1]: c_i = (1 - lambda) - a_{m+1-i}. 1D only.
HomogeneousIFS reflect(const HomogeneousIFS& ifs);

// Returns ifs unchanged when the last adjacent pair carries no overlap,
// otherwise the reflected system (whose last pair is then free).
HomogeneousIFS normalize_right_free(const HomogeneousIFS& ifs, const ClassCertificate& cert);

ClassCertificate validate_or_throw(const HomogeneousIFS& ifs);  // wraps violations in ClassViolationError

}  // namespace lipeq
