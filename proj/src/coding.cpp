#include "lipeq/coding.hpp"

#include "lipeq/errors.hpp"
#include "lipeq/signature.hpp"

#include <random>

namespace lipeq {

namespace {

Rational diameter_upper(const Box& b) {
    if (b.dim() == 1) return b.width(0);
    Rational sq(0);
    for (int i = 0; i < b.dim(); ++i) sq += b.width(i) * b.width(i);
    return sqrt_upper_bound(sq);
}

struct DistBounds {
    Rational lb, ub;
};

DistBounds point_distance_bounds(const Vec& x, const Vec& y) {
    if (x.size() == 1) {
        Rational d = x[0] >= y[0] ? x[0] - y[0] : y[0] - x[0];
        return {d, d};
    }
    Rational sq = distance_squared(x, y);
    return {sqrt_lower_bound(sq), sqrt_upper_bound(sq)};
}

// Everything certified is far above this, so adding it absorbs the 2^-62
// slack of the square-root brackets without weakening any real inequality.
const Rational kMargin = Rational(BigInt(1), BigInt(1) << 50);

AffineMap word_affine(const GraphDirectedSystem& gds, const EdgeWord& word) {
    AffineMap acc = AffineMap::identity(gds.dim);
    for (int ei : word.edges) acc = compose(acc, gds.edges[ei].map);
    return acc;
}

}  // namespace

bool is_admissible(const GraphDirectedSystem& gds, const EdgeWord& word) {
    if (word.start < 0 || word.start >= gds.vertex_count) return false;
    int at = word.start;
    for (int ei : word.edges) {
        if (ei < 0 || ei >= static_cast<int>(gds.edges.size())) return false;
        if (gds.edges[ei].from != at) return false;
        at = gds.edges[ei].to;
    }
    return true;
}

Box pi_eval(const GraphDirectedSystem& gds, const std::vector<PieceSpec>&,
            const EdgeWord& word) {
    if (!is_admissible(gds, word)) throw NotAdmissible("edge word does not follow the graph");
    return word_affine(gds, word).apply(Box::unit(gds.dim));
}

BilipCertificate bilip_constants(const HomogeneousIFS& ifs_a, const GraphDirectedSystem& gds_a,
                                 const std::vector<PieceSpec>& pieces_a,
                                 const HomogeneousIFS& ifs_b, const GraphDirectedSystem& gds_b,
                                 const std::vector<PieceSpec>& pieces_b, int depth) {
    if (gds_a.lambda != gds_b.lambda)
        throw std::invalid_argument("distortion constants need equal contraction ratios");
    if (!(canonical_signature(gds_a) == canonical_signature(gds_b)))
        throw SignatureMismatch("systems are not edge-label isomorphic");

    CoverCache cache_a(ifs_a, pieces_a);
    CoverCache cache_b(ifs_b, pieces_b);
    VerificationResult va = verify_equations(cache_a, gds_a, depth);
    VerificationResult vb = verify_equations(cache_b, gds_b, depth);
    if (!va.equations.ok) throw EquationMismatchError(*va.equations.mismatch, va.depth);
    if (!vb.equations.ok) throw EquationMismatchError(*vb.equations.mismatch, vb.depth);
    if (va.separation.status != SeparationStatus::Certified)
        throw NotSeparated("first system not certified separated at depth " +
                           std::to_string(va.depth));
    if (vb.separation.status != SeparationStatus::Certified)
        throw NotSeparated("second system not certified separated at depth " +
                           std::to_string(vb.depth));

    auto attractor_diameter_upper = [](CoverCache& cache, const GraphDirectedSystem& gds,
                                       int d) {
        Box hull = Box::unit(gds.dim);
        bool first = true;
        for (int p = 0; p < gds.vertex_count; ++p)
            for (const auto& b : cache.cover(p, d)) {
                hull = first ? b : bounding_box(hull, b);
                first = false;
            }
        return diameter_upper(hull);
    };

    BilipCertificate cert;
    cert.depth_used = std::max(va.depth, vb.depth);
    cert.c_star = std::min(va.separation.min_gap_lower_bound, vb.separation.min_gap_lower_bound);
    if (cert.c_star <= 0) throw NotSeparated("separation gap bound is not positive");
    cert.c_upper = std::max(attractor_diameter_upper(cache_a, gds_a, va.depth),
                            attractor_diameter_upper(cache_b, gds_b, vb.depth));
    cert.c = cert.c_upper / cert.c_star;
    return cert;
}

EdgeWord map_word(const GraphDirectedSystem& gds_a, const GraphDirectedSystem& gds_b,
                  const std::vector<int>& vertex_map, const EdgeWord& word) {
    if (!is_admissible(gds_a, word)) throw NotAdmissible("edge word does not follow the graph");
    std::vector<int> matching = match_edges(gds_a, gds_b, vertex_map);
    EdgeWord out;
    out.start = vertex_map[word.start];
    out.edges.reserve(word.edges.size());
    for (int ei : word.edges) out.edges.push_back(matching[ei]);
    if (!is_admissible(gds_b, out))
        throw SignatureMismatch("transported word is not admissible");
    return out;
}

Box bilip_map(const GraphDirectedSystem& gds_a, const std::vector<PieceSpec>& pieces_a,
              const GraphDirectedSystem& gds_b, const std::vector<PieceSpec>& pieces_b,
              const std::vector<int>& vertex_map, const EdgeWord& word) {
    (void)pieces_a;
    return pi_eval(gds_b, pieces_b, map_word(gds_a, gds_b, vertex_map, word));
}

DistortionReport sample_bilip_check(const HomogeneousIFS& ifs_a, const GraphDirectedSystem& gds_a,
                                    const std::vector<PieceSpec>& pieces_a,
                                    const HomogeneousIFS& ifs_b, const GraphDirectedSystem& gds_b,
                                    const std::vector<PieceSpec>& pieces_b,
                                    const std::vector<int>& vertex_map,
                                    const BilipCertificate& cert, int pair_count, int word_length,
                                    std::uint64_t seed) {
    (void)ifs_a;
    (void)ifs_b;
    // Validates the matching up front; a corrupted vertex map dies here,
    // before any sampling.
    std::vector<int> matching = match_edges(gds_a, gds_b, vertex_map);

    std::vector<std::vector<int>> out_edges(gds_a.vertex_count);
    for (int u = 0; u < gds_a.vertex_count; ++u) out_edges[u] = gds_a.out_edge_indices(u);

    // Raw engine output reduced by modulo keeps the stream identical across
    // platforms; distribution adapters would not.
    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t n) { return static_cast<int>(rng() % n); };

    auto draw_word = [&](int start) {
        EdgeWord w;
        w.start = start;
        int at = start;
        for (int step = 0; step < word_length; ++step) {
            const auto& outs = out_edges[at];
            int ei = outs[pick(outs.size())];
            w.edges.push_back(ei);
            at = gds_a.edges[ei].to;
        }
        return w;
    };

    DistortionReport report;
    for (int i = 0; i < pair_count; ++i) {
        int start = pick(static_cast<std::size_t>(gds_a.vertex_count));
        EdgeWord w1 = draw_word(start);
        EdgeWord w2 = draw_word(start);
        for (int attempt = 0; attempt < 100 && w2.edges == w1.edges; ++attempt)
            w2 = draw_word(start);
        if (w2.edges == w1.edges) continue;  // single-path vertex; nothing to compare

        EdgeWord m1;
        m1.start = vertex_map[w1.start];
        for (int ei : w1.edges) m1.edges.push_back(matching[ei]);
        EdgeWord m2;
        m2.start = vertex_map[w2.start];
        for (int ei : w2.edges) m2.edges.push_back(matching[ei]);

        Box a1 = pi_eval(gds_a, pieces_a, w1);
        Box a2 = pi_eval(gds_a, pieces_a, w2);
        Box b1 = pi_eval(gds_b, pieces_b, m1);
        Box b2 = pi_eval(gds_b, pieces_b, m2);

        DistBounds da = point_distance_bounds(midpoint(a1), midpoint(a2));
        DistBounds db = point_distance_bounds(midpoint(b1), midpoint(b2));
        Rational slack_a = (diameter_upper(a1) + diameter_upper(a2)) / 2;
        Rational slack_b = (diameter_upper(b1) + diameter_upper(b2)) / 2;

        ++report.pairs_checked;

        bool forward_ok = db.ub <= cert.c * (da.lb + slack_a) + slack_b + kMargin;
        bool backward_ok = da.ub <= cert.c * (db.lb + slack_b) + slack_a + kMargin;
        if (!forward_ok || !backward_ok) {
            ++report.violations;
            if (!report.first_violation)
                report.first_violation =
                    DistortionViolation{w1, w2, forward_ok ? "backward" : "forward"};
        }

        double fa = static_cast<double>(da.ub);
        double fb = static_cast<double>(db.ub);
        if (fa > 0 && fb > 0) {
            double r = std::max(fb / fa, fa / fb);
            if (r > report.max_ratio) report.max_ratio = r;
        }
    }
    return report;
}

}  // namespace lipeq
