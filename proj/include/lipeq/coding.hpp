#pragma once

#include "lipeq/gds.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lipeq {

// Path in a graph-directed system: start vertex plus a chain of edge indices,
// each edge leaving the vertex the previous one entered.
struct EdgeWord {
    int start = 0;
    std::vector<int> edges;

    friend bool operator==(const EdgeWord&, const EdgeWord&) = default;
};

bool is_admissible(const GraphDirectedSystem& gds, const EdgeWord& word);

// Unit-box image under the word's composed map: an exact box containing
// every point the word can code, with side equal to the product of edge
// ratios. Throws NotAdmissible.
Box pi_eval(const GraphDirectedSystem& gds, const std::vector<PieceSpec>& pieces,
            const EdgeWord& word);

struct BilipCertificate {
    Rational c_star;   // lower bound on same-depth sibling point separation
    Rational c_upper;  // upper bound on either attractor's diameter
    Rational c;        // distortion constant c_upper / c_star
    int depth_used = 0;
};

// Distortion constant valid for both systems at once. Requires matching
// canonical signatures and Certified separation on both sides at the given
// cover depth; throws SignatureMismatch or NotSeparated.
BilipCertificate bilip_constants(const HomogeneousIFS& ifs_a, const GraphDirectedSystem& gds_a,
                                 const std::vector<PieceSpec>& pieces_a,
                                 const HomogeneousIFS& ifs_b, const GraphDirectedSystem& gds_b,
                                 const std::vector<PieceSpec>& pieces_b, int depth);

// Transport of an edge word through a vertex map: same edge positions, edges
// replaced by their deterministic class mates. Throws SignatureMismatch if
// the map does not preserve edge classes, NotAdmissible on a broken word.
EdgeWord map_word(const GraphDirectedSystem& gds_a, const GraphDirectedSystem& gds_b,
                  const std::vector<int>& vertex_map, const EdgeWord& word);

// pi_eval of the transported word in the second system.
Box bilip_map(const GraphDirectedSystem& gds_a, const std::vector<PieceSpec>& pieces_a,
              const GraphDirectedSystem& gds_b, const std::vector<PieceSpec>& pieces_b,
              const std::vector<int>& vertex_map, const EdgeWord& word);

struct DistortionViolation {
    EdgeWord first;
    EdgeWord second;
    std::string direction;  // which inequality broke
};

struct DistortionReport {
    int pairs_checked = 0;
    int violations = 0;
    double max_ratio = 0.0;  // observed max of d_B/d_A and d_A/d_B over midpoints
    std::optional<DistortionViolation> first_violation;
};

// Draws word pairs of the given length from a fixed-seed generator and checks
// the two-sided Lipschitz inequality with explicit box-diameter slack, so a
// reported violation is a genuine one and never float noise.
DistortionReport sample_bilip_check(const HomogeneousIFS& ifs_a, const GraphDirectedSystem& gds_a,
                                    const std::vector<PieceSpec>& pieces_a,
                                    const HomogeneousIFS& ifs_b, const GraphDirectedSystem& gds_b,
                                    const std::vector<PieceSpec>& pieces_b,
                                    const std::vector<int>& vertex_map,
                                    const BilipCertificate& cert, int pair_count, int word_length,
                                    std::uint64_t seed);

}  // namespace lipeq
