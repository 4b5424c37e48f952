#include "grassfault/arma_subspace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "grassfault/errors.hpp"

namespace grassfault {

ArmaModel fit_arma(const MultichannelWindow& window, int d) {
    const Eigen::Index tau = window.tau();
    const Eigen::Index r = window.features();
    if (tau < 2 || r < 1) throw ParameterError("fit_arma: window must be at least 2 x 1");
    if (d < 1 || d > std::min<Eigen::Index>(r, tau - 1))
        throw ParameterError("fit_arma: need 1 <= d <= min(r, tau-1), got d=" + std::to_string(d));
    if (!window.data.allFinite()) throw ParameterError("fit_arma: window has non-finite entries");

    // Feature-by-time matrix with per-feature means removed.
    Eigen::MatrixXd Y = window.data.transpose();
    Y.colwise() -= window.data.colwise().mean().transpose();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (sigma(0) <= 0.0 || sigma(d - 1) <= 1e-12 * sigma(0))
        throw RankDeficiencyError(
            "fit_arma: centered data does not support hidden dimension " + std::to_string(d));

    ArmaModel model;
    model.d = d;
    model.H = svd.matrixU().leftCols(d);
    model.singular_values = sigma.head(d);

    // State sequence is diag(sigma) * M^T; the transition solves the one-step
    // least squares on it: P = diag(s) * (M^T S1 M) (M^T S2 M)^-1 * diag(1/s),
    // where M^T S1 M sums m_{t+1} m_t^T and M^T S2 M sums m_t m_t^T over the
    // first tau-1 frames.
    const Eigen::MatrixXd M = svd.matrixV().leftCols(d);  // tau x d
    const Eigen::MatrixXd head = M.topRows(tau - 1);
    const Eigen::MatrixXd shifted = M.bottomRows(tau - 1);
    const Eigen::MatrixXd G1 = shifted.transpose() * head;  // d x d
    const Eigen::MatrixXd G2 = head.transpose() * head;     // d x d

    Eigen::JacobiSVD<Eigen::MatrixXd> g2_svd(G2);
    const Eigen::VectorXd& g2_sigma = g2_svd.singularValues();
    if (g2_sigma(d - 1) <= 0.0 || g2_sigma(0) / g2_sigma(d - 1) > 1e12)
        throw ConditioningError("fit_arma: state regression is numerically singular");

    const Eigen::VectorXd s = model.singular_values;
    const Eigen::MatrixXd ratio = G2.ldlt().solve(G1.transpose()).transpose();  // G1 * G2^-1
    model.P = s.asDiagonal() * ratio * s.cwiseInverse().asDiagonal();
    return model;
}

ObservabilityMatrix observability(const ArmaModel& model, int l) {
    if (l < 1) throw ParameterError("observability: l must be >= 1");
    const Eigen::Index r = model.H.rows();
    const Eigen::Index d = model.H.cols();
    ObservabilityMatrix result;
    result.l = l;
    result.O.resize(l * r, d);
    Eigen::MatrixXd block = model.H;  // H * P^i, built incrementally
    for (int i = 0; i < l; ++i) {
        result.O.middleRows(i * r, r) = block;
        if (i + 1 < l) block = block * model.P;
    }
    return result;
}

GrassmannPoint grassmann_embed(const MultichannelWindow& window, int d, int l) {
    const ArmaModel model = fit_arma(window, d);
    const ObservabilityMatrix obs = observability(model, l);
    try {
        return orthonormalize(obs.O);
    } catch (const RankDeficiencyError&) {
        throw RankDeficiencyError("grassmann_embed: observability matrix lost rank");
    }
}

}  // namespace grassfault
