#pragma once

#include <Eigen/Core>

#include "grassfault/grassmann.hpp"
#include "grassfault/window.hpp"

namespace grassfault {

// State-space model fitted to a window: g(t) ~ H x(t), x(t+1) ~ P x(t).
// H comes from the truncated SVD of the centered feature-by-time matrix, so
// its columns are orthonormal.
struct ArmaModel {
    Eigen::MatrixXd H;                // r x d
    Eigen::MatrixXd P;                // d x d
    int d = 0;                        // hidden dimension
    Eigen::VectorXd singular_values;  // length d, positive, nonincreasing
};

// Vertical stack [H; HP; HP^2; ...; HP^(l-1)], shape (l*r) x d.
struct ObservabilityMatrix {
    Eigen::MatrixXd O;
    int l = 0;
};

// Fits via the thin SVD L*diag(s)*M^T of the centered r x tau data matrix:
// H = L, P = diag(s) M^T S M (M^T S' M)^-1 diag(s)^-1 with S the one-step
// shift and S' the first tau-1 frame selector. Throws RankDeficiencyError
// when the data cannot support hidden dimension d, ConditioningError when
// the state regression is numerically singular (condition above 1e12).
ArmaModel fit_arma(const MultichannelWindow& window, int d);

ObservabilityMatrix observability(const ArmaModel& model, int l);

// orthonormalize(observability(fit_arma(window, d), l)).
GrassmannPoint grassmann_embed(const MultichannelWindow& window, int d, int l);

}  // namespace grassfault
