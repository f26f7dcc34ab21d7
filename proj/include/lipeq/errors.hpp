#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lipeq {

// Expression parser failure; position is a 0-based byte offset into the input.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          pos_(position) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Edge word does not follow the graph (wrong start vertex or broken chain).
class NotAdmissible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two systems whose canonical signatures (or claimed matchings) disagree.
class SignatureMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Separation was required but the report is not Certified.
class NotSeparated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Partition-graph construction asked for on a left-overlapping system.
class NotNormalized : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// System validates but has no overlaps, so the partition construction
// does not apply.
class OutsideClass : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured cylinder budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Power iteration failed to reach the tolerance.
class NotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph has edges with unequal contraction ratios; the uniform-ratio
// dimension formula does not apply.
class NotHomogeneous : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Spec file could not be read or parsed.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lipeq
