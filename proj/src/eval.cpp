#include "grassfault/eval.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "grassfault/errors.hpp"
#include "grassfault/grassmann.hpp"
#include "grassfault/kernel_svm.hpp"
#include "grassfault/parallel.hpp"
#include "grassfault/pipeline.hpp"

namespace grassfault {

namespace {

std::vector<FaultClass> classes_in_appearance_order(const std::vector<FaultClass>& labels) {
    std::vector<FaultClass> classes;
    for (FaultClass label : labels)
        if (std::find(classes.begin(), classes.end(), label) == classes.end())
            classes.push_back(label);
    return classes;
}

int index_of(const std::vector<FaultClass>& classes, FaultClass label) {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c] == label) return static_cast<int>(c);
    return -1;
}

ClassMetrics from_counts(long tp, long fp, long fn, long tn) {
    ClassMetrics m;
    m.support = tp + fn;
    const double total = static_cast<double>(tp + fp + fn + tn);
    m.accuracy = total > 0 ? (tp + tn) / total : 0.0;
    m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    const double denom = static_cast<double>(tp + fp) * static_cast<double>(tp + fn) *
                         static_cast<double>(tn + fp) * static_cast<double>(tn + fn);
    if (tp > 0 && fp == 0 && fn == 0)
        m.mcc = 1.0;  // perfect row; the formula's 0/0 limit
    else
        m.mcc = denom > 0.0 ? (static_cast<double>(tp) * tn - static_cast<double>(fp) * fn) /
                                  std::sqrt(denom)
                            : 0.0;
    return m;
}

}  // namespace

FoldAssignment stratified_kfold(const std::vector<FaultClass>& labels, int k,
                                std::uint64_t seed) {
    const int n = static_cast<int>(labels.size());
    if (k < 2) throw ParameterError("stratified_kfold: k must be >= 2");
    if (k > n) throw ParameterError("stratified_kfold: k exceeds the sample count");

    FoldAssignment assignment;
    assignment.k = k;
    assignment.seed = seed;
    assignment.fold_of.assign(n, -1);

    std::mt19937_64 rng(seed);
    std::vector<long> fold_fill(k, 0);

    for (FaultClass cls : classes_in_appearance_order(labels)) {
        std::vector<int> indices;
        for (int i = 0; i < n; ++i)
            if (labels[i] == cls) indices.push_back(i);

        // Seeded Fisher-Yates; the engine itself is portable, so the shuffle is
        // reproducible everywhere.
        for (std::size_t i = indices.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(indices[i - 1], indices[j]);
        }

        // Deal round-robin starting at the least-filled fold, which keeps the
        // overall fold sizes within one of each other as classes stack up.
        int start = 0;
        for (int f = 1; f < k; ++f)
            if (fold_fill[f] < fold_fill[start]) start = f;
        for (std::size_t m = 0; m < indices.size(); ++m) {
            const int fold = static_cast<int>((start + m) % k);
            assignment.fold_of[indices[m]] = fold;
            ++fold_fill[fold];
        }
    }
    return assignment;
}

ConfusionMatrix confusion(const std::vector<FaultClass>& actual,
                          const std::vector<FaultClass>& predicted,
                          const std::vector<FaultClass>& classes) {
    if (actual.size() != predicted.size())
        throw ParameterError("confusion: actual and predicted differ in length");
    ConfusionMatrix cm;
    cm.classes = classes;
    const int k = static_cast<int>(classes.size());
    cm.counts.setZero(k, k);
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const int a = index_of(classes, actual[i]);
        const int p = index_of(classes, predicted[i]);
        if (a < 0 || p < 0)
            throw ParameterError("confusion: label not in the class list: " +
                                 to_string(a < 0 ? actual[i] : predicted[i]));
        ++cm.counts(a, p);
    }
    return cm;
}

MetricsReport per_class_metrics(const ConfusionMatrix& cm) {
    const int k = static_cast<int>(cm.classes.size());
    if (k < 1) throw ParameterError("per_class_metrics: empty confusion matrix");

    MetricsReport report;
    report.classes = cm.classes;
    const long total = cm.total();
    for (int c = 0; c < k; ++c) {
        const long tp = cm.counts(c, c);
        const long fn = cm.counts.row(c).sum() - tp;
        const long fp = cm.counts.col(c).sum() - tp;
        const long tn = total - tp - fn - fp;
        report.per_class.push_back(from_counts(tp, fp, fn, tn));
    }
    return report;
}

void aggregate(MetricsReport& report) {
    if (report.per_class.empty()) throw ParameterError("aggregate: no per-class rows");

    ClassMetrics macro, weighted;
    double weight_sum = 0.0;
    for (const ClassMetrics& m : report.per_class) {
        macro.accuracy += m.accuracy;
        macro.precision += m.precision;
        macro.recall += m.recall;
        macro.f1 += m.f1;
        macro.mcc += m.mcc;
        const double w = static_cast<double>(m.support);
        weighted.accuracy += w * m.accuracy;
        weighted.precision += w * m.precision;
        weighted.recall += w * m.recall;
        weighted.f1 += w * m.f1;
        weighted.mcc += w * m.mcc;
        weight_sum += w;
        macro.support += m.support;
    }
    const double k = static_cast<double>(report.per_class.size());
    macro.accuracy /= k;
    macro.precision /= k;
    macro.recall /= k;
    macro.f1 /= k;
    macro.mcc /= k;
    weighted.support = macro.support;
    if (weight_sum > 0.0) {
        weighted.accuracy /= weight_sum;
        weighted.precision /= weight_sum;
        weighted.recall /= weight_sum;
        weighted.f1 /= weight_sum;
        weighted.mcc /= weight_sum;
    }
    report.macro_avg = macro;
    report.weighted_avg = weighted;
}

CrossValResult cross_validate(const LabeledDataset& dataset, const PipelineConfig& config,
                              int threads) {
    if (dataset.windows.size() != dataset.labels.size())
        throw ParameterError("cross_validate: windows and labels differ in length");
    if (dataset.windows.empty()) throw ParameterError("cross_validate: empty dataset");
    config.validate(static_cast<int>(dataset.windows.front().features()));

    const int n = static_cast<int>(dataset.size());
    const std::vector<FaultClass> classes = classes_in_appearance_order(dataset.labels);

    // Embeddings are label-free and fold-independent: compute once, reuse in
    // every fold.
    const std::vector<GrassmannPoint> points =
        embed_dataset(dataset, config.d, config.l, threads);
    const KernelGram gram = gram_matrix(points, config.beta, threads);

    const FoldAssignment folds = stratified_kfold(dataset.labels, config.k, config.seed);

    SmoSettings smo;
    smo.C = config.C;
    smo.tol = config.tol;

    CrossValResult result;
    for (int fold = 0; fold < config.k; ++fold) {
        std::vector<int> train_idx, test_idx;
        for (int i = 0; i < n; ++i)
            (folds.fold_of[i] == fold ? test_idx : train_idx).push_back(i);

        std::vector<FaultClass> train_labels;
        train_labels.reserve(train_idx.size());
        for (int i : train_idx) train_labels.push_back(dataset.labels[i]);
        if (classes_in_appearance_order(train_labels).size() < 2)
            throw DataError("cross_validate: fold " + std::to_string(fold + 1) +
                            " training split has fewer than two classes");

        const int m = static_cast<int>(train_idx.size());
        Eigen::MatrixXd sub(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) sub(a, b) = gram.K(train_idx[a], train_idx[b]);

        const TrainedClassifier clf =
            train_multiclass(KernelGram{std::move(sub), gram.beta}, train_labels, smo, threads);

        std::vector<FaultClass> actual, predicted;
        actual.reserve(test_idx.size());
        predicted.reserve(test_idx.size());
        std::vector<FaultClass> fold_predictions(test_idx.size());
        parallel_for(test_idx.size(), threads, [&](std::size_t t) {
            std::vector<double> krow(m);
            for (int a = 0; a < m; ++a) krow[a] = gram.K(test_idx[t], train_idx[a]);
            fold_predictions[t] = predict(clf, krow);
        });
        for (std::size_t t = 0; t < test_idx.size(); ++t) {
            actual.push_back(dataset.labels[test_idx[t]]);
            predicted.push_back(fold_predictions[t]);
        }

        FoldResult fr;
        fr.cm = confusion(actual, predicted, classes);
        fr.report = per_class_metrics(fr.cm);
        aggregate(fr.report);
        result.folds.push_back(std::move(fr));
    }

    // Table-style average row: arithmetic mean of each fold's summary rows.
    auto mean_of = [&](auto pick) {
        ClassMetrics mean;
        for (const FoldResult& fr : result.folds) {
            const ClassMetrics& m = pick(fr);
            mean.accuracy += m.accuracy;
            mean.precision += m.precision;
            mean.recall += m.recall;
            mean.f1 += m.f1;
            mean.mcc += m.mcc;
            mean.support += m.support;
        }
        const double k = static_cast<double>(result.folds.size());
        mean.accuracy /= k;
        mean.precision /= k;
        mean.recall /= k;
        mean.f1 /= k;
        mean.mcc /= k;
        return mean;
    };
    result.macro_avg = mean_of([](const FoldResult& fr) -> const ClassMetrics& {
        return fr.report.macro_avg;
    });
    result.weighted_avg = mean_of([](const FoldResult& fr) -> const ClassMetrics& {
        return fr.report.weighted_avg;
    });
    return result;
}

}  // namespace grassfault
