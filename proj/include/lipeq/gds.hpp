#pragma once

#include "lipeq/geometry.hpp"
#include "lipeq/ifs.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lipeq {

// Edge u -> v labeled by a word in the source system's maps; the piece at u
// contains the image of the piece at v under that word's map.
struct GdsEdge {
    int from = 0;
    int to = 0;
    MapWord via;
    AffineMap map;  // word_map(via), cached

    int ratio_exponent() const { return static_cast<int>(via.size()); }

    friend bool operator==(const GdsEdge&, const GdsEdge&) = default;
};

struct GraphDirectedSystem {
    int vertex_count = 0;
    int dim = 1;
    Rational lambda;
    std::vector<GdsEdge> edges;  // sorted by (from, to, via)

    std::vector<int> out_edge_indices(int vertex) const;
    int out_degree(int vertex) const;
};

// Piece f_base(K) minus the union of f_u(K) over subtracted words u; every
// subtracted word strictly extends base. Empty base means K itself.
struct PieceSpec {
    MapWord base;
    std::vector<MapWord> minus;

    friend bool operator==(const PieceSpec&, const PieceSpec&) = default;
};

enum class SeparationStatus { Certified, UnknownAtDepth };

struct SeparationReport {
    SeparationStatus status = SeparationStatus::UnknownAtDepth;
    int depth = 0;  // absolute cover depth used
    std::optional<std::pair<Box, Box>> witness;  // intersecting sibling boxes
    // Valid when Certified: squared gap minimized over all sibling cover box
    // pairs, and a rational lower bound on the Euclidean gap itself.
    Rational min_gap_squared;
    Rational min_gap_lower_bound;
};

struct EquationWitness {
    int vertex = 0;
    Box box;
    bool lhs_only = false;  // box on the piece side but not the mapped-union side
};

struct EquationCheck {
    bool ok = true;
    std::optional<EquationWitness> mismatch;
};

struct PartitionCheck {
    bool disjoint = true;   // piece covers pairwise disjoint
    bool complete = true;   // union of piece covers equals the attractor cover
    std::optional<std::pair<int, int>> overlap_pair;
    std::optional<Box> witness;
};

struct VerificationResult {
    int depth = 0;  // effective absolute depth after raising to resolution minima
    EquationCheck equations;
    SeparationReport separation;
    PartitionCheck partition;
};

class EquationMismatchError : public std::runtime_error {
public:
    EquationMismatchError(EquationWitness w, int depth);
    const EquationWitness& witness() const { return witness_; }

private:
    EquationWitness witness_;
};

class DisjointnessError : public std::runtime_error {
public:
    DisjointnessError(PartitionCheck c, int depth);
    const PartitionCheck& check() const { return check_; }

private:
    PartitionCheck check_;
};

// Depth-D cover of a piece: the depth-D cylinder boxes extending base, minus
// those box-contained in a subtracted word's cylinder; sorted, deduplicated.
// D is an absolute depth and must be >= |base|.
std::vector<Box> piece_cover(const HomogeneousIFS& ifs, const PieceSpec& piece, int depth);

// Memoizes piece covers across depths for one ifs+pieces pair.
class CoverCache {
public:
    CoverCache(const HomogeneousIFS& ifs, std::vector<PieceSpec> pieces);

    const std::vector<Box>& cover(int piece_index, int depth);
    const HomogeneousIFS& ifs() const { return ifs_; }
    const std::vector<PieceSpec>& pieces() const { return pieces_; }

private:
    const HomogeneousIFS& ifs_;
    std::vector<PieceSpec> pieces_;
    std::map<std::pair<int, int>, std::vector<Box>> memo_;
};

// Partition graph of a validated, right-free system with overlaps:
// m + k1 - 2 vertices; pieces 0..m-1 are the relabeled first-level pieces,
// pieces m..m+k1-3 the tail differences f_m^(t+1)(K) \ f_m^(t+2)(K), and the
// last piece f_m^(k1-1)(K). Throws NotNormalized if the last adjacent pair
// overlaps, OutsideClass if there are no overlaps at all.
std::pair<GraphDirectedSystem, std::vector<PieceSpec>> build_partition_graph(
    const HomogeneousIFS& ifs, const ClassCertificate& cert);

// One vertex, one self-loop per map: the trivial system of an overlap-free
// attractor.
std::pair<GraphDirectedSystem, std::vector<PieceSpec>> build_full_shift(const HomogeneousIFS& ifs);

struct CustomEdge {
    int from = 0;
    int to = 0;
    MapWord via;
};

// Structure checks only (index ranges, nonempty words, minus extends base,
// every vertex has an out-edge); no geometry is verified.
GraphDirectedSystem assemble_custom_graph(const HomogeneousIFS& ifs,
                                          const std::vector<PieceSpec>& pieces,
                                          const std::vector<CustomEdge>& edges);

// assemble_custom_graph + verify_equations; throws EquationMismatchError or
// DisjointnessError when the claimed system fails at the given depth.
GraphDirectedSystem build_custom_graph(const HomogeneousIFS& ifs,
                                       const std::vector<PieceSpec>& pieces,
                                       const std::vector<CustomEdge>& edges, int depth);

// Checks, at finite depth, that each piece cover equals the union of mapped
// covers of its out-edge targets, that sibling edge images are strictly
// separated, and that the pieces form a partition of the attractor cover.
// Depth is raised to the minimal resolution (base/minus/via word lengths).
VerificationResult verify_equations(const HomogeneousIFS& ifs, const GraphDirectedSystem& gds,
                                    const std::vector<PieceSpec>& pieces, int depth);
VerificationResult verify_equations(CoverCache& cache, const GraphDirectedSystem& gds, int depth);

}  // namespace lipeq
