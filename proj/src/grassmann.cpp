#include "grassfault/grassmann.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "grassfault/errors.hpp"
#include "grassfault/parallel.hpp"

namespace grassfault {

namespace {

// Flips column signs so the entry of largest magnitude in each column is
// nonnegative; the first such row wins on ties. Leaves the spanned subspace
// untouched.
void canonicalize_signs(Eigen::MatrixXd& X) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const double mag = std::abs(X(i, j));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        if (X(pivot, j) < 0.0) X.col(j) = -X.col(j);
    }
}

void require_matching(const GrassmannPoint& a, const GrassmannPoint& b) {
    if (a.n() != b.n() || a.d() != b.d())
        throw ParameterError("subspace dimension mismatch: (" + std::to_string(a.n()) + "," +
                             std::to_string(a.d()) + ") vs (" + std::to_string(b.n()) + "," +
                             std::to_string(b.d()) + ")");
}

bool lex_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
}

// Squared projection distance d - ||X1^T X2||_F^2, evaluated through the
// residual form ||X2 - X1 (X1^T X2)||_F^2. The residual is formed before any
// norm is taken, so nearly equal subspaces come out near zero instead of
// drowning in the cancellation of d - ||.||^2. Arguments are ordered
// canonically to make the value exactly symmetric.
double distance_squared(const GrassmannPoint& a, const GrassmannPoint& b) {
    const bool swap = lex_less(b.X, a.X);
    const Eigen::MatrixXd& first = swap ? b.X : a.X;
    const Eigen::MatrixXd& second = swap ? a.X : b.X;
    const Eigen::MatrixXd cross = first.transpose() * second;
    return (second - first * cross).squaredNorm();
}

}  // namespace

GrassmannPoint orthonormalize(const Eigen::MatrixXd& M) {
    if (M.rows() < M.cols() || M.cols() < 1)
        throw ParameterError("orthonormalize: need an n x d matrix with n >= d >= 1");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sigma = svd.singularValues();
    if (sigma(0) <= 0.0 || sigma(sigma.size() - 1) <= 1e-12 * sigma(0))
        throw RankDeficiencyError("orthonormalize: matrix is rank deficient (sigma_min/sigma_max = " +
                                  std::to_string(sigma(sigma.size() - 1) / std::max(sigma(0), 1e-300)) +
                                  ")");

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd X = qr.householderQ() * Eigen::MatrixXd::Identity(M.rows(), M.cols());
    canonicalize_signs(X);
    return GrassmannPoint{std::move(X)};
}

double projection_distance(const GrassmannPoint& a, const GrassmannPoint& b) {
    require_matching(a, b);
    return std::sqrt(distance_squared(a, b));
}

double projection_kernel(const GrassmannPoint& a, const GrassmannPoint& b, double beta) {
    if (!(beta > 0.0)) throw ParameterError("projection_kernel: beta must be positive");
    require_matching(a, b);
    return std::exp(-beta * distance_squared(a, b));
}

KernelGram gram_matrix(const std::vector<GrassmannPoint>& points, double beta, int threads) {
    if (points.empty()) throw ParameterError("gram_matrix: need at least one point");
    if (!(beta > 0.0)) throw ParameterError("gram_matrix: beta must be positive");
    const Eigen::Index n0 = points.front().n();
    const Eigen::Index d0 = points.front().d();
    for (const auto& p : points)
        if (p.n() != n0 || p.d() != d0)
            throw ParameterError("gram_matrix: points must share dimensions");

    const std::size_t n = points.size();
    Eigen::MatrixXd K(n, n);
    parallel_for(n, threads, [&](std::size_t i) {
        K(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j)
            K(i, j) = projection_kernel(points[i], points[j], beta);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) K(j, i) = K(i, j);
    return KernelGram{std::move(K), beta};
}

std::vector<double> kernel_row(const GrassmannPoint& point,
                               const std::vector<GrassmannPoint>& train_points, double beta) {
    std::vector<double> row(train_points.size());
    for (std::size_t j = 0; j < train_points.size(); ++j)
        row[j] = projection_kernel(point, train_points[j], beta);
    return row;
}

}  // namespace grassfault
