#include "lipeq/ifs.hpp"

#include "lipeq/errors.hpp"

#include <algorithm>

namespace lipeq {

std::vector<int> ClassCertificate::gamma_counts() const {
    std::vector<int> counts;
    counts.reserve(gamma.size());
    for (const auto& g : gamma) counts.push_back(static_cast<int>(g.size()));
    return counts;
}

HomogeneousIFS::HomogeneousIFS(Rational lambda, int dim,
                               std::vector<std::vector<LambdaPoly>> translations)
    : lambda_(std::move(lambda)), dim_(dim), translations_(std::move(translations)) {
    if (lambda_ <= 0 || lambda_ >= 1) throw std::invalid_argument("lambda must lie in (0,1)");
    if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("dim must be 1 or 2");
    if (translations_.size() < 2) throw std::invalid_argument("need at least two maps");
    evaluated_.reserve(translations_.size());
    for (const auto& t : translations_) {
        if (static_cast<int>(t.size()) != dim_)
            throw DimensionMismatch("translation arity does not match dim");
        Vec v(t.size());
        for (std::size_t c = 0; c < t.size(); ++c) v[c] = t[c].eval(lambda_);
        evaluated_.push_back(std::move(v));
    }
}

const std::vector<LambdaPoly>& HomogeneousIFS::translation_poly(int i) const {
    if (i < 0 || i >= map_count()) throw IndexOutOfRange("map index " + std::to_string(i));
    return translations_[i];
}

const Vec& HomogeneousIFS::translation(int i) const {
    if (i < 0 || i >= map_count()) throw IndexOutOfRange("map index " + std::to_string(i));
    return evaluated_[i];
}

AffineMap HomogeneousIFS::map(int i) const {
    AffineMap m;
    m.scale = lambda_;
    m.shift = translation(i);
    return m;
}

AffineMap HomogeneousIFS::word_map(const MapWord& word) const {
    AffineMap acc = AffineMap::identity(dim_);
    for (int idx : word) acc = compose(acc, map(idx));
    return acc;
}

Box HomogeneousIFS::cylinder(const MapWord& word) const {
    return word_map(word).apply(Box::unit(dim_));
}

namespace {

// lambda^k == value for some k in [0, limit]? Returns -1 if not.
int power_exponent(const Rational& lambda, Rational value, int limit) {
    int k = 0;
    while (value < 1 && k <= limit) {
        value /= lambda;
        ++k;
    }
    return value == 1 ? k : -1;
}

}  // namespace

std::variant<ClassCertificate, ClassViolation> validate_class(const HomogeneousIFS& ifs) {
    if (ifs.dim() != 1) throw DimensionMismatch("class validation applies to 1D systems");
    const int m = ifs.map_count();
    const Rational& lambda = ifs.lambda();

    if (m < 3)
        return ClassViolation{"m", "need at least 3 maps, got " + std::to_string(m), {}, {}};

    auto a = [&](int i) -> const Rational& { return ifs.translation(i)[0]; };

    if (a(0) != 0)
        return ClassViolation{"I", "a_1 = " + to_fraction_string(a(0)) + ", expected 0", {0}, {}};
    if (a(m - 1) != 1 - lambda)
        return ClassViolation{"I",
                              "a_m = " + to_fraction_string(a(m - 1)) + ", expected 1 - lambda = " +
                                  to_fraction_string(1 - lambda),
                              {m - 1},
                              {}};
    for (int i = 0; i + 1 < m; ++i) {
        if (a(i) >= a(i + 1))
            return ClassViolation{"I",
                                  "translations not strictly increasing: a_" + std::to_string(i + 1) +
                                      " = " + to_fraction_string(a(i)) + " >= a_" +
                                      std::to_string(i + 2) + " = " + to_fraction_string(a(i + 1)),
                                  {i, i + 1},
                                  {}};
    }

    // Triple intersections: with sorted translations the common part of
    // I_i, I_j, I_t (i < j < t) is [a_t, a_i + lambda].
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int t = j + 1; t < m; ++t) {
                if (a(t) <= a(i) + lambda) {
                    Box w;
                    w.lower = {a(t)};
                    w.upper = {a(i) + lambda};
                    return ClassViolation{
                        "II",
                        "maps " + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                            std::to_string(t + 1) + " intersect in [" + to_fraction_string(a(t)) +
                            ", " + to_fraction_string(a(i) + lambda) + "]",
                        {i, j, t},
                        w};
                }
            }

    // Non-adjacent overlaps are implied impossible by the triple check above,
    // but the class definition names them, so check explicitly.
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            if (a(j) <= a(i) + lambda) {
                return ClassViolation{"II",
                                      "non-adjacent maps " + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + " intersect",
                                      {i, j},
                                      {}};
            }
        }

    constexpr int kExponentLimit = 64;
    std::vector<Overlap> overlaps;
    for (int i = 0; i + 1 < m; ++i) {
        Rational len = a(i) + lambda - a(i + 1);
        if (len < 0) continue;
        if (len == 0)
            return ClassViolation{"II",
                                  "maps " + std::to_string(i + 1) + "," + std::to_string(i + 2) +
                                      " touch in a single point",
                                  {i, i + 1},
                                  {}};
        int k = power_exponent(lambda, len, kExponentLimit);
        if (k < 0)
            return ClassViolation{"II",
                                  "overlap of maps " + std::to_string(i + 1) + "," +
                                      std::to_string(i + 2) + " has length " +
                                      to_fraction_string(len) +
                                      ", not a power of lambda (exponent limit " +
                                      std::to_string(kExponentLimit) + ")",
                                  {i, i + 1},
                                  {}};
        if (k < 2)
            return ClassViolation{"II",
                                  "overlap of maps " + std::to_string(i + 1) + "," +
                                      std::to_string(i + 2) + " has exponent " + std::to_string(k) +
                                      ", need >= 2",
                                  {i, i + 1},
                                  {}};
        // Complete-overlap identity: f_i o f_m^(k-1) == f_{i+1} o f_1^(k-1).
        MapWord left{i}, right{i + 1};
        left.insert(left.end(), k - 1, m - 1);
        right.insert(right.end(), k - 1, 0);
        if (ifs.word_map(left) != ifs.word_map(right))
            return ClassViolation{"II",
                                  "overlap of maps " + std::to_string(i + 1) + "," +
                                      std::to_string(i + 2) +
                                      " fails the complete-overlap identity",
                                  {i, i + 1},
                                  {}};
        overlaps.push_back({i, k});
    }

    bool left_overlaps = !overlaps.empty() && overlaps.front().index == 0;
    bool right_overlaps = !overlaps.empty() && overlaps.back().index == m - 2;
    if (left_overlaps && right_overlaps)
        return ClassViolation{"III", "both end maps carry overlaps", {0, m - 1}, {}};

    ClassCertificate cert;
    cert.overlaps = overlaps;
    for (const auto& o : overlaps)
        if (std::find(cert.k_vector.begin(), cert.k_vector.end(), o.exponent) == cert.k_vector.end())
            cert.k_vector.push_back(o.exponent);
    std::sort(cert.k_vector.rbegin(), cert.k_vector.rend());
    cert.gamma.resize(cert.k_vector.size());
    for (const auto& o : overlaps) {
        auto level = std::find(cert.k_vector.begin(), cert.k_vector.end(), o.exponent);
        cert.gamma[level - cert.k_vector.begin()].push_back(o.index);
    }
    std::vector<bool> overlapped(m - 1, false);
    for (const auto& o : overlaps) overlapped[o.index] = true;
    for (int i = 0; i + 1 < m; ++i)
        if (!overlapped[i]) cert.gamma_rest.push_back(i);
    cert.side = left_overlaps    ? FreeSide::RightFree
                : right_overlaps ? FreeSide::LeftFree
                                 : FreeSide::BothFree;
    return cert;
}

std::vector<int> gamma_signature(const ClassCertificate& cert) { return cert.gamma_counts(); }

HomogeneousIFS reflect(const HomogeneousIFS& ifs) {
    if (ifs.dim() != 1) throw DimensionMismatch("reflect applies to 1D systems");
    LambdaPoly one_minus_l = LambdaPoly(Rational(1)) - LambdaPoly::lambda();
    std::vector<std::vector<LambdaPoly>> out;
    const int m = ifs.map_count();
    out.reserve(m);
    for (int i = m - 1; i >= 0; --i)
        out.push_back({one_minus_l - ifs.translation_poly(i)[0]});
    return HomogeneousIFS(ifs.lambda(), 1, std::move(out));
}

HomogeneousIFS normalize_right_free(const HomogeneousIFS& ifs, const ClassCertificate& cert) {
    if (cert.side == FreeSide::LeftFree) return reflect(ifs);
    return ifs;
}

ClassCertificate validate_or_throw(const HomogeneousIFS& ifs) {
    auto result = validate_class(ifs);
    if (auto* violation = std::get_if<ClassViolation>(&result))
        throw ClassViolationError(*std::move(violation));
    return std::get<ClassCertificate>(std::move(result));
}

}  // namespace lipeq
