#pragma once

#include "lipeq/coding.hpp"
#include "lipeq/specfile.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace lipeq {

// Key order is part of the report contract (golden files compare bytes).
using Report = nlohmann::ordered_json;

struct CommandResult {
    Report report;
    int exit_code = 0;
};

// Exit codes: 0 success / Equivalent, 1 input or usage failure,
// 2 class violation or equation failure, 3 Inconclusive.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInconclusive = 3;

// A spec's graph-directed system together with how it was obtained.
struct BuiltSystem {
    HomogeneousIFS ifs;  // reflected copy when normalization flipped the system
    GraphDirectedSystem gds;
    std::vector<PieceSpec> pieces;
    std::string source;  // "partition", "custom" or "full_shift"
    bool reflected = false;
    std::optional<ClassCertificate> cert;
};

// Partition route for validated 1D class systems (full shift when there are
// no overlaps), custom route when the file carries a partition. Throws
// ClassViolationError, SpecError (2D without partition) or the custom
// builder's errors.
BuiltSystem build_system(const SpecFile& spec, int verify_depth);

CommandResult cmd_validate(const SpecFile& spec);
CommandResult cmd_gamma(const SpecFile& spec);
CommandResult cmd_graph(const SpecFile& spec, int depth_override = 0);  // 0 = file params

struct EquivOptions {
    int word_depth = 0;  // 0 = file params
    int pairs = -1;      // -1 = file params
    std::optional<std::uint64_t> seed;
};

CommandResult cmd_equiv(const SpecFile& a, const SpecFile& b, const EquivOptions& options = {});

struct DimOptions {
    int box_depth = 8;
    double tol = 1e-12;
    std::optional<long long> cap;  // unset = env LIPEQ_CAP or built-in default
};

CommandResult cmd_dim(const SpecFile& spec, const DimOptions& options = {});

CommandResult cmd_render(const SpecFile& a, const SpecFile* b, const std::string& out_path);

// Shared JSON formatting helpers (used by reports and tests).
Report rational_entry(const Rational& q);
Report word_json(const MapWord& w);  // 1-based

}  // namespace lipeq
