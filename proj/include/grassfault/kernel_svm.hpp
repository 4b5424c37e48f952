#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grassfault/fault_class.hpp"
#include "grassfault/grassmann.hpp"

namespace grassfault {

struct SmoSettings {
    double C = 10.0;
    double tol = 1e-3;   // KKT tolerance
    int max_passes = 5;  // consecutive sweeps without progress before giving up
    std::int64_t max_updates = 1'000'000;
};

// One soft-margin binary classifier over a precomputed kernel. Only samples
// with nonzero alpha are kept; dual_coefs[i] = alpha_i * y_i.
struct BinaryModel {
    std::vector<int> support_indices;  // into the training set
    std::vector<double> dual_coefs;
    double bias = 0.0;
    std::pair<int, int> class_pair{0, 1};  // indices into the class list
    double C = 0.0;
    bool converged = true;
    double dual_objective = 0.0;
};

struct TrainedClassifier {
    std::vector<BinaryModel> models;  // K(K-1)/2, lexicographic pair order
    std::vector<FaultClass> classes;  // first-appearance order
    std::vector<GrassmannPoint> train_points;
    double beta = 3.0;
    int d = 6;
    int l = 5;
    double C = 10.0;
};

// SMO over the dual: max sum(alpha) - 1/2 sum alpha_i alpha_j y_i y_j K_ij
// subject to 0 <= alpha <= C, sum alpha_i y_i = 0. Pair selection follows the
// maximal KKT violator, partnered with the maximal |E_i - E_j|. labels must
// contain both +1 and -1.
BinaryModel train_binary(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                         const SmoSettings& settings);

// sum dual_coefs[i] * krow[support_indices[i]] + bias.
double decision_value(const BinaryModel& model, const std::vector<double>& krow);

// One-vs-one decomposition: one binary model per unordered class pair, each
// trained on the sub-Gram of that pair's samples. Deterministic regardless of
// the thread count. The returned classifier carries no train_points; callers
// that need prediction on fresh windows attach them.
TrainedClassifier train_multiclass(const KernelGram& gram,
                                   const std::vector<FaultClass>& labels,
                                   const SmoSettings& settings, int threads = 1);

// Majority vote over the pair models; a zero decision votes for the pair's
// first class. Ties fall to the class whose winning decisions carry the
// largest total magnitude, then to class order. When decisions_out is given
// it receives one decision value per model.
FaultClass predict(const TrainedClassifier& clf, const std::vector<double>& krow,
                   std::vector<double>* decisions_out = nullptr);

}  // namespace grassfault
