#pragma once

#include <Eigen/Core>
#include <vector>

namespace grassfault {

// A d-dimensional subspace of R^n held as an n x d representative with
// orthonormal columns. Columns are sign-canonical: the entry of largest
// magnitude in each column is nonnegative (first such row on ties), so equal
// subspaces produced by different routes compare bit-stably.
struct GrassmannPoint {
    Eigen::MatrixXd X;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index d() const { return X.cols(); }
};

// Pairwise kernel values for a point set, with the width that produced them.
struct KernelGram {
    Eigen::MatrixXd K;
    double beta = 0.0;
};

// Thin-QR orthonormal basis of span(M) with canonical column signs.
// Throws RankDeficiencyError when sigma_d < 1e-12 * sigma_1.
GrassmannPoint orthonormalize(const Eigen::MatrixXd& M);

// Projection distance sqrt(d - ||X1^T X2||_F^2), in [0, sqrt(d)].
// Equals 2^(-1/2) * ||X1 X1^T - X2 X2^T||_F without forming the projectors.
double projection_distance(const GrassmannPoint& a, const GrassmannPoint& b);

// exp(-beta * projection_distance^2), in (0, 1].
double projection_kernel(const GrassmannPoint& a, const GrassmannPoint& b, double beta);

// Symmetric Gram matrix with unit diagonal; each pair evaluated once.
// The result is independent of the thread count.
KernelGram gram_matrix(const std::vector<GrassmannPoint>& points, double beta,
                       int threads = 1);

std::vector<double> kernel_row(const GrassmannPoint& point,
                               const std::vector<GrassmannPoint>& train_points,
                               double beta);

}  // namespace grassfault
