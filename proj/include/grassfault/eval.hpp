#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "grassfault/config.hpp"
#include "grassfault/fault_class.hpp"
#include "grassfault/window.hpp"

namespace grassfault {

struct FoldAssignment {
    std::vector<int> fold_of;  // sample index -> fold in [0, k)
    int k = 0;
    std::uint64_t seed = 0;
};

struct ConfusionMatrix {
    Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> counts;  // rows actual
    std::vector<FaultClass> classes;

    long total() const { return counts.sum(); }
};

struct ClassMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mcc = 0.0;
    long support = 0;
};

struct MetricsReport {
    std::vector<FaultClass> classes;
    std::vector<ClassMetrics> per_class;
    ClassMetrics macro_avg;
    ClassMetrics weighted_avg;
};

struct FoldResult {
    ConfusionMatrix cm;
    MetricsReport report;
};

struct CrossValResult {
    std::vector<FoldResult> folds;
    ClassMetrics macro_avg;     // arithmetic mean of per-fold macro rows
    ClassMetrics weighted_avg;  // arithmetic mean of per-fold weighted rows
};

// Per class: seeded shuffle, then round-robin deal starting at the currently
// least-filled fold. Keeps per-class and overall fold sizes within one of
// each other. Deterministic for fixed (labels, k, seed).
FoldAssignment stratified_kfold(const std::vector<FaultClass>& labels, int k,
                                std::uint64_t seed);

ConfusionMatrix confusion(const std::vector<FaultClass>& actual,
                          const std::vector<FaultClass>& predicted,
                          const std::vector<FaultClass>& classes);

// One-vs-rest TP/FP/FN/TN per class; accuracy (TP+TN)/total, precision
// TP/(TP+FP), recall TP/(TP+FN), F1 = 2PR/(P+R), MCC from the 2x2 collapse.
// Zero denominators yield 0. Aggregate rows are left unfilled.
MetricsReport per_class_metrics(const ConfusionMatrix& cm);

// Fills macro_avg (unweighted mean) and weighted_avg (support-weighted mean).
void aggregate(MetricsReport& report);

// Embeds every window once, then per fold trains a one-vs-one SVM on the
// train split's sub-Gram and scores the held-out fold.
CrossValResult cross_validate(const LabeledDataset& dataset, const PipelineConfig& config,
                              int threads = 1);

}  // namespace grassfault
