#include "lipeq/geometry.hpp"

#include "lipeq/errors.hpp"

namespace lipeq {

Box Box::unit(int dim) {
    Box b;
    b.lower.assign(dim, Rational(0));
    b.upper.assign(dim, Rational(1));
    return b;
}

bool Box::contains(const Box& inner) const {
    for (int i = 0; i < dim(); ++i)
        if (inner.lower[i] < lower[i] || inner.upper[i] > upper[i]) return false;
    return true;
}

bool Box::intersects(const Box& other) const {
    for (int i = 0; i < dim(); ++i)
        if (other.lower[i] > upper[i] || other.upper[i] < lower[i]) return false;
    return true;
}

bool lex_less(const Box& a, const Box& b) {
    if (a.lower != b.lower) return a.lower < b.lower;
    return a.upper < b.upper;
}

AffineMap AffineMap::identity(int dim) {
    AffineMap m;
    m.scale = 1;
    m.shift.assign(dim, Rational(0));
    return m;
}

Vec AffineMap::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim()) throw DimensionMismatch("affine apply: dimension");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * x[i] + shift[i];
    return out;
}

Box AffineMap::apply(const Box& b) const {
    // scale > 0 everywhere in this code, so corners stay ordered
    Box out;
    out.lower = apply(b.lower);
    out.upper = apply(b.upper);
    return out;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch("affine compose: dimension");
    AffineMap out;
    out.scale = outer.scale * inner.scale;
    out.shift.resize(outer.shift.size());
    for (std::size_t i = 0; i < out.shift.size(); ++i)
        out.shift[i] = outer.scale * inner.shift[i] + outer.shift[i];
    return out;
}

Vec midpoint(const Box& b) {
    Vec out(b.lower.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (b.lower[i] + b.upper[i]) / 2;
    return out;
}

Rational distance_squared(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("distance: dimension");
    Rational acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

Rational box_gap_squared(const Box& a, const Box& b) {
    Rational acc(0);
    for (int i = 0; i < a.dim(); ++i) {
        Rational d(0);
        if (b.lower[i] > a.upper[i]) d = b.lower[i] - a.upper[i];
        else if (a.lower[i] > b.upper[i]) d = a.lower[i] - b.upper[i];
        acc += d * d;
    }
    return acc;
}

Box bounding_box(const Box& a, const Box& b) {
    Box out = a;
    for (int i = 0; i < a.dim(); ++i) {
        if (b.lower[i] < out.lower[i]) out.lower[i] = b.lower[i];
        if (b.upper[i] > out.upper[i]) out.upper[i] = b.upper[i];
    }
    return out;
}

}  // namespace lipeq
