#pragma once

#include "lipeq/gds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lipeq {

// Canonical form of a graph-directed system viewed as a directed multigraph
// with edges labeled by contraction-ratio exponents. Two systems are
// edge-label isomorphic iff their encodings are equal.
struct CanonicalSignature {
    std::string encoding;
    std::vector<int> ordering;  // ordering[old vertex] = canonical position

    friend bool operator==(const CanonicalSignature& a, const CanonicalSignature& b) {
        return a.encoding == b.encoding;
    }
};

CanonicalSignature canonical_signature(const GraphDirectedSystem& gds);

// Vertex map A -> B realizing an exponent-preserving isomorphism, or nullopt.
std::optional<std::vector<int>> find_isomorphism(const GraphDirectedSystem& a,
                                                 const GraphDirectedSystem& b);

// Deterministic edge pairing compatible with the vertex map: result[i] is the
// index in b.edges matched to a.edges[i]. Throws SignatureMismatch when the
// map does not preserve per-class edge counts.
std::vector<int> match_edges(const GraphDirectedSystem& a, const GraphDirectedSystem& b,
                             const std::vector<int>& vertex_map);

}  // namespace lipeq
