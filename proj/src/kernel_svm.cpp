#include "grassfault/kernel_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grassfault/errors.hpp"
#include "grassfault/parallel.hpp"

namespace grassfault {

namespace {

constexpr double kMoveEps = 1e-14;       // minimal meaningful alpha move
constexpr double kBoundSlack = 1e-12;    // alpha-at-bound detection

struct SmoState {
    const Eigen::MatrixXd& K;
    const std::vector<int>& y;
    double C;
    double tol;
    std::vector<double> alpha;
    std::vector<double> g;  // sum_j alpha_j y_j K_ij, bias excluded

    SmoState(const Eigen::MatrixXd& gram, const std::vector<int>& labels, double c, double t)
        : K(gram), y(labels), C(c), tol(t), alpha(labels.size(), 0.0), g(labels.size(), 0.0) {}

    int size() const { return static_cast<int>(y.size()); }

    // Bias-free error; differences E_i - E_j are what the updates consume.
    double error(int i) const { return g[i] - y[i]; }

    // The bias would have to equal y_i - g_i to put sample i exactly on its
    // margin. KKT holds at tolerance tol when the admissible raises (the
    // "up" set) stay within 2*tol of the admissible cuts (the "low" set).
    double margin_bias(int i) const { return y[i] - g[i]; }
    bool in_up(int i) const {
        return y[i] > 0 ? alpha[i] < C - kBoundSlack : alpha[i] > kBoundSlack;
    }
    bool in_low(int i) const {
        return y[i] > 0 ? alpha[i] > kBoundSlack : alpha[i] < C - kBoundSlack;
    }

    // Platt-style pair update; returns true when either alpha moved.
    bool take_step(int i1, int i2) {
        if (i1 == i2) return false;
        const double a1_old = alpha[i1], a2_old = alpha[i2];
        const int y1 = y[i1], y2 = y[i2];
        const double e1 = error(i1), e2 = error(i2);
        const double s = y1 * y2;

        double low, high;
        if (y1 != y2) {
            low = std::max(0.0, a2_old - a1_old);
            high = std::min(C, C + a2_old - a1_old);
        } else {
            low = std::max(0.0, a1_old + a2_old - C);
            high = std::min(C, a1_old + a2_old);
        }
        if (high - low < kMoveEps) return false;

        const double k11 = K(i1, i1), k12 = K(i1, i2), k22 = K(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 1e-15) {
            a2 = a2_old + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, low, high);
        } else {
            // Flat or concave direction: evaluate the dual at both ends.
            const double f1 = y1 * e1 - a1_old * k11 - s * a2_old * k12;
            const double f2 = y2 * e2 - a2_old * k22 - s * a1_old * k12;
            const double l1 = a1_old + s * (a2_old - low);
            const double h1 = a1_old + s * (a2_old - high);
            const double obj_low =
                l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 + 0.5 * low * low * k22 + s * low * l1 * k12;
            const double obj_high = h1 * f1 + high * f2 + 0.5 * h1 * h1 * k11 +
                                    0.5 * high * high * k22 + s * high * h1 * k12;
            if (obj_low < obj_high - 1e-12)
                a2 = low;
            else if (obj_high < obj_low - 1e-12)
                a2 = high;
            else
                return false;
        }

        if (std::abs(a2 - a2_old) < kMoveEps * (a2 + a2_old + kMoveEps)) return false;

        double a1 = a1_old + s * (a2_old - a2);
        if (a1 < 0.0) a1 = 0.0;
        if (a1 > C) a1 = C;

        const double d1 = y1 * (a1 - a1_old);
        const double d2 = y2 * (a2 - a2_old);
        for (int m = 0; m < size(); ++m) g[m] += d1 * K(i1, m) + d2 * K(i2, m);
        alpha[i1] = a1;
        alpha[i2] = a2;
        return true;
    }

    double dual_objective() const {
        double linear = 0.0;
        for (int i = 0; i < size(); ++i) linear += alpha[i];
        double quad = 0.0;
        for (int i = 0; i < size(); ++i) {
            if (alpha[i] == 0.0) continue;
            quad += alpha[i] * y[i] * g[i];
        }
        return linear - 0.5 * quad;
    }

    // Final bias: mean over free supports, else midpoint of the feasible
    // interval pinned by the bound supports.
    double final_bias() const {
        double sum = 0.0;
        int free_count = 0;
        for (int i = 0; i < size(); ++i) {
            if (alpha[i] > kBoundSlack && alpha[i] < C - kBoundSlack) {
                sum += y[i] - g[i];
                ++free_count;
            }
        }
        if (free_count > 0) return sum / free_count;

        double lower = -std::numeric_limits<double>::infinity();
        double upper = std::numeric_limits<double>::infinity();
        for (int i = 0; i < size(); ++i) {
            const double candidate = y[i] - g[i];
            const bool at_zero = alpha[i] <= kBoundSlack;
            if ((at_zero && y[i] > 0) || (!at_zero && y[i] < 0))
                lower = std::max(lower, candidate);
            else
                upper = std::min(upper, candidate);
        }
        if (std::isinf(lower) && std::isinf(upper)) return 0.0;
        if (std::isinf(lower)) return upper;
        if (std::isinf(upper)) return lower;
        return 0.5 * (lower + upper);
    }
};

}  // namespace

BinaryModel train_binary(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                         const SmoSettings& settings) {
    const int n = static_cast<int>(labels.size());
    if (gram.rows() != n || gram.cols() != n)
        throw ParameterError("train_binary: gram and labels disagree on size");
    if (!(settings.C > 0.0)) throw ParameterError("train_binary: C must be positive");
    if (!gram.allFinite()) throw DataError("train_binary: non-finite kernel entries");

    bool has_pos = false, has_neg = false;
    for (int v : labels) {
        if (v == 1)
            has_pos = true;
        else if (v == -1)
            has_neg = true;
        else
            throw ParameterError("train_binary: labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw ParameterError("train_binary: both classes required");

    SmoState state(gram, labels, settings.C, settings.tol);

    std::int64_t updates = 0;
    int idle_sweeps = 0;
    bool converged = false;
    while (updates < settings.max_updates) {
        // Maximal violating pair: the sample that most wants the bias raised
        // against the one that most wants it cut. Their gap doubles as the
        // worst single-point KKT violation once the bias sits between them.
        int up = -1, low = -1;
        double up_val = -std::numeric_limits<double>::infinity();
        double low_val = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double mb = state.margin_bias(i);
            if (state.in_up(i) && mb > up_val) {
                up_val = mb;
                up = i;
            }
            if (state.in_low(i) && mb < low_val) {
                low_val = mb;
                low = i;
            }
        }
        if (up < 0 || low < 0 || up_val - low_val <= 2.0 * settings.tol) {
            converged = true;
            break;
        }

        bool progressed = state.take_step(up, low);
        if (!progressed) {
            // Deterministic fallback over every admissible pair.
            for (int i = 0; i < n && !progressed; ++i) {
                if (!state.in_up(i)) continue;
                for (int j = 0; j < n && !progressed; ++j) {
                    if (j == i || !state.in_low(j)) continue;
                    if (state.margin_bias(i) - state.margin_bias(j) <= 2.0 * settings.tol)
                        continue;
                    progressed = state.take_step(i, j);
                }
            }
        }
        if (progressed) {
            ++updates;
            idle_sweeps = 0;
        } else {
            if (++idle_sweeps >= settings.max_passes) break;
        }
    }

    BinaryModel model;
    model.C = settings.C;
    model.converged = converged;
    model.bias = state.final_bias();
    model.dual_objective = state.dual_objective();
    for (int i = 0; i < n; ++i) {
        if (state.alpha[i] > 0.0) {
            model.support_indices.push_back(i);
            model.dual_coefs.push_back(state.alpha[i] * labels[i]);
        }
    }
    return model;
}

double decision_value(const BinaryModel& model, const std::vector<double>& krow) {
    double value = model.bias;
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        const int idx = model.support_indices[s];
        if (idx < 0 || idx >= static_cast<int>(krow.size()))
            throw ParameterError("decision_value: kernel row shorter than the training set");
        value += model.dual_coefs[s] * krow[idx];
    }
    return value;
}

TrainedClassifier train_multiclass(const KernelGram& gram, const std::vector<FaultClass>& labels,
                                   const SmoSettings& settings, int threads) {
    const int n = static_cast<int>(labels.size());
    if (gram.K.rows() != n || gram.K.cols() != n)
        throw ParameterError("train_multiclass: gram and labels disagree on size");

    TrainedClassifier clf;
    clf.beta = gram.beta;
    clf.C = settings.C;

    // Class order is first appearance; pair order is lexicographic in it.
    std::vector<int> class_of(n, -1);
    for (int i = 0; i < n; ++i) {
        int idx = -1;
        for (std::size_t c = 0; c < clf.classes.size(); ++c)
            if (clf.classes[c] == labels[i]) idx = static_cast<int>(c);
        if (idx < 0) {
            idx = static_cast<int>(clf.classes.size());
            clf.classes.push_back(labels[i]);
        }
        class_of[i] = idx;
    }
    const int num_classes = static_cast<int>(clf.classes.size());
    if (num_classes < 2) throw ParameterError("train_multiclass: need at least two classes");

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < num_classes; ++a)
        for (int b = a + 1; b < num_classes; ++b) pairs.emplace_back(a, b);

    clf.models.resize(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t p) {
        const auto [ca, cb] = pairs[p];
        std::vector<int> subset;
        std::vector<int> sub_labels;
        for (int i = 0; i < n; ++i) {
            if (class_of[i] == ca) {
                subset.push_back(i);
                sub_labels.push_back(1);
            } else if (class_of[i] == cb) {
                subset.push_back(i);
                sub_labels.push_back(-1);
            }
        }
        const int m = static_cast<int>(subset.size());
        Eigen::MatrixXd sub_gram(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) sub_gram(a, b) = gram.K(subset[a], subset[b]);

        BinaryModel model = train_binary(sub_gram, sub_labels, settings);
        for (int& idx : model.support_indices) idx = subset[idx];
        model.class_pair = {ca, cb};
        clf.models[p] = std::move(model);
    });
    return clf;
}

FaultClass predict(const TrainedClassifier& clf, const std::vector<double>& krow,
                   std::vector<double>* decisions_out) {
    const int num_classes = static_cast<int>(clf.classes.size());
    if (num_classes < 1) throw ParameterError("predict: classifier has no classes");
    if (decisions_out) decisions_out->assign(clf.models.size(), 0.0);

    std::vector<int> votes(num_classes, 0);
    std::vector<double> strength(num_classes, 0.0);  // |decision| of won pairs
    for (std::size_t m = 0; m < clf.models.size(); ++m) {
        const BinaryModel& model = clf.models[m];
        const double value = decision_value(model, krow);
        if (decisions_out) (*decisions_out)[m] = value;
        const int winner = value >= 0.0 ? model.class_pair.first : model.class_pair.second;
        ++votes[winner];
        strength[winner] += std::abs(value);
    }

    int best = 0;
    for (int c = 1; c < num_classes; ++c) {
        if (votes[c] > votes[best] ||
            (votes[c] == votes[best] && strength[c] > strength[best]))
            best = c;
    }
    return clf.classes[best];
}

}  // namespace grassfault
