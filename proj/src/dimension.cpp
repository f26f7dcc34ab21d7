#include "lipeq/dimension.hpp"

#include "lipeq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lipeq {

CountMatrix count_matrix(const GraphDirectedSystem& gds) {
    CountMatrix m = CountMatrix::Zero(gds.vertex_count, gds.vertex_count);
    for (const auto& e : gds.edges) m(e.from, e.to) += 1;
    return m;
}

namespace {

// Primitivity via boolean reachability: some power of the positivity pattern
// is all-ones. The Wielandt bound (n-1)^2 + 1 caps the exponent.
bool is_primitive(const CountMatrix& m) {
    const int n = static_cast<int>(m.rows());
    using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
    BoolMat base(n, n), acc(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) base(i, j) = m(i, j) > 0;
    acc = base;
    const int limit = (n - 1) * (n - 1) + 1;
    for (int step = 1; step <= limit; ++step) {
        if (acc.all()) return true;
        BoolMat next = BoolMat::Constant(n, n, false);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (acc(i, k))
                    for (int j = 0; j < n; ++j)
                        if (base(k, j)) next(i, j) = true;
        acc = std::move(next);
    }
    return false;
}

}  // namespace

SpectralResult spectral_radius(const CountMatrix& m, double tol, int max_iterations) {
    const int n = static_cast<int>(m.rows());
    if (n == 0 || m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    if ((m.array() < 0).any()) throw std::invalid_argument("matrix must be nonnegative");
    if (n == 1) return {static_cast<double>(m(0, 0)), 0, 0.0, true};

    Eigen::MatrixXd a = m.cast<double>();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    v /= v.norm();
    double rho = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd w = a * v;
        double norm = w.norm();
        if (norm == 0.0) return {0.0, it, 0.0, is_primitive(m)};
        double rayleigh = v.dot(w);
        double residual = (w - rayleigh * v).lpNorm<Eigen::Infinity>();
        if (std::abs(rayleigh - rho) < tol && residual < tol * std::max(1.0, rayleigh))
            return {rayleigh, it, residual, is_primitive(m)};
        rho = rayleigh;
        v = w / norm;
    }
    throw NotConverged("power iteration did not reach tolerance in " +
                       std::to_string(max_iterations) + " iterations");
}

double hausdorff_dim(const GraphDirectedSystem& gds, const SeparationReport& separation,
                     double tol) {
    if (separation.status != SeparationStatus::Certified)
        throw NotSeparated("dimension formula needs certified separation");
    for (const auto& e : gds.edges)
        if (e.ratio_exponent() != 1)
            throw NotHomogeneous("edge ratios are mixed powers of lambda");
    SpectralResult s = spectral_radius(count_matrix(gds), tol);
    double lambda = static_cast<double>(gds.lambda);
    return std::log(s.rho) / std::log(1.0 / lambda);
}

BoxCountResult box_count_dim(const HomogeneousIFS& ifs, int depth, long long cap) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    const int m = ifs.map_count();
    long long words = 1;
    for (int k = 0; k < depth; ++k) {
        if (words > cap / m)
            throw BudgetExceeded("m^depth = " + std::to_string(m) + "^" + std::to_string(depth) +
                                 " exceeds the cylinder budget " + std::to_string(cap));
        words *= m;
    }

    // Depth-k cylinders are determined by their lower corners, and the
    // corner of i.w is a_i + lambda * corner(w), so each level grows from
    // the previous level's deduplicated corner set.
    BoxCountResult result;
    std::vector<Vec> corners{Vec(ifs.dim(), Rational(0))};
    for (int k = 1; k <= depth; ++k) {
        std::vector<Vec> next;
        next.reserve(corners.size() * m);
        for (int i = 0; i < m; ++i) {
            const Vec& a = ifs.translation(i);
            for (const auto& c : corners) {
                Vec nc(c.size());
                for (std::size_t d = 0; d < c.size(); ++d) nc[d] = a[d] + ifs.lambda() * c[d];
                next.push_back(std::move(nc));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        corners = std::move(next);
        result.counts.push_back(static_cast<long long>(corners.size()));
    }

    // Least squares with intercept: log N_k = slope * (k log(1/lambda)) + b.
    double loginv = std::log(1.0 / static_cast<double>(ifs.lambda()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 1; k <= depth; ++k) {
        double x = k * loginv;
        double y = std::log(static_cast<double>(result.counts[k - 1]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (depth == 1) {
        result.slope = sy / sx;
    } else {
        double n = depth;
        result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return result;
}

}  // namespace lipeq
