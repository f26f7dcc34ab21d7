#pragma once

#include "lipeq/gds.hpp"
#include "lipeq/ifs.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lipeq {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// M(u,v) = number of edges u -> v.
CountMatrix count_matrix(const GraphDirectedSystem& gds);

struct SpectralResult {
    double rho = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool primitive = true;  // false = Perron eigenvalue may be non-dominant
};

// Power iteration from the all-ones vector, Rayleigh-quotient stopping rule.
// Throws NotConverged after max_iterations.
SpectralResult spectral_radius(const CountMatrix& m, double tol = 1e-12,
                               int max_iterations = 1000000);

// log(rho) / log(1/lambda) for a system whose edges all contract by exactly
// lambda. Requires Certified separation (the open-set-style hypothesis) and
// uniform ratio exponents; throws NotSeparated / NotHomogeneous.
double hausdorff_dim(const GraphDirectedSystem& gds, const SeparationReport& separation,
                     double tol = 1e-12);

struct BoxCountResult {
    std::vector<long long> counts;  // N_k for k = 1..depth: distinct depth-k cylinders
    double slope = 0.0;             // least-squares fit of log N_k against k*log(1/lambda)
};

// Counts distinct depth-k cylinder boxes; identical translations collapse,
// which is exactly what complete overlaps do. Budget guard: throws
// BudgetExceeded when m^depth exceeds cap.
BoxCountResult box_count_dim(const HomogeneousIFS& ifs, int depth,
                             long long cap = 10000000);

}  // namespace lipeq
