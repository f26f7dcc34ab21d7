#pragma once

#include "lipeq/rational.hpp"

#include <vector>

namespace lipeq {

using Vec = std::vector<Rational>;

// Axis-aligned box with exact rational corners, lower[i] <= upper[i].
struct Box {
    Vec lower;
    Vec upper;

    int dim() const { return static_cast<int>(lower.size()); }
    Rational width(int axis) const { return upper[axis] - lower[axis]; }

    static Box unit(int dim);

    bool contains(const Box& inner) const;    // closed containment
    bool intersects(const Box& other) const;  // closed boxes, touching counts

    friend bool operator==(const Box&, const Box&) = default;
};

// Strict total order (lower corner lexicographic, then upper); gives the
// deterministic box ordering used for cover dedup and report output.
bool lex_less(const Box& a, const Box& b);

// x |-> scale*x + shift with the same scale on every coordinate.
struct AffineMap {
    Rational scale;
    Vec shift;

    int dim() const { return static_cast<int>(shift.size()); }

    static AffineMap identity(int dim);

    Vec apply(const Vec& x) const;
    Box apply(const Box& b) const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// outer after inner; throws DimensionMismatch.
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

Vec midpoint(const Box& b);
Rational distance_squared(const Vec& x, const Vec& y);

// Squared Euclidean gap between closed boxes, 0 if they intersect.
Rational box_gap_squared(const Box& a, const Box& b);

// Smallest box containing both.
Box bounding_box(const Box& a, const Box& b);

}  // namespace lipeq
