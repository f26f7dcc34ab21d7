#pragma once

#include "lipeq/gds.hpp"
#include "lipeq/ifs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lipeq {

struct AnalysisParams {
    int depth = 4;           // cover verification depth
    int word_depth = 5;      // sampled edge-word length
    int pairs = 500;         // sampled word pairs
    std::uint64_t seed = 1;
    double tol = 1e-12;
    long long cap = 10000000;
};

struct CustomPartition {
    std::vector<PieceSpec> pieces;
    std::vector<CustomEdge> edges;
};

// One system as read from disk: the maps, an optional hand-specified
// partition (pieces + edges), and analysis parameters.
struct SpecFile {
    HomogeneousIFS ifs;
    std::optional<CustomPartition> partition;
    AnalysisParams params;
    std::string origin;  // path, for error messages
};

// JSON layout:
//   {
//     "dim": 1,
//     "lambda": "1/6",
//     "maps": ["0", "l*(1-l)", ...],            // dim 2: [["0","0"], ...]
//     "partition": {                            // optional
//       "pieces": [{"base": [4], "minus": [[4,2]]}, ...],   // 1-based words
//       "edges":  [{"from": 1, "to": 2, "via": [3]}, ...]   // 1-based
//     },
//     "params": {"depth": 4, "pairs": 500, "seed": 1, ...}  // optional
//   }
SpecFile load_spec_file(const std::string& path);
SpecFile parse_spec_json(const std::string& text, const std::string& origin);

}  // namespace lipeq
