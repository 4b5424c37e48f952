#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "grassfault/errors.hpp"
#include "grassfault/eval.hpp"
#include "grassfault/signalgen.hpp"

using namespace grassfault;

namespace {

// Reference per-class rows for a 12-class, 1813-sample evaluation fold.
// TP/FP/FN are reconstructed from each row's support, precision and recall;
// reconstruction_is_consistent() proves the reconstruction reproduces the
// quoted precision/recall before the rows are used as oracles.
struct ReferenceRow {
    FaultClass cls;
    long tp, fp, fn, tn;
    double accuracy, precision, recall, f1;
    long support;
};

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = {
        {FaultClass::CAG, 145, 0, 2, 1666, 0.9989, 1.0, 0.98639, 0.99315, 147},
        {FaultClass::ABG, 144, 1, 0, 1668, 0.99945, 0.9931, 1.0, 0.99654, 144},
        {FaultClass::TSC, 154, 1, 1, 1657, 0.9989, 0.99355, 0.99355, 0.99355, 155},
    };
    return rows;
}

bool reconstruction_is_consistent(const ReferenceRow& row) {
    if (row.tp + row.fn != row.support) return false;
    if (row.tp + row.fp + row.fn + row.tn != 1813) return false;
    const double precision = static_cast<double>(row.tp) / (row.tp + row.fp);
    const double recall = static_cast<double>(row.tp) / (row.tp + row.fn);
    return std::abs(precision - row.precision) < 5e-5 && std::abs(recall - row.recall) < 5e-5;
}

// A 12-class confusion matrix realizing one reference row: TP hits on the
// diagonal, FP fed from a filler class, FN sent to the filler class, and the
// remaining TN spread across the filler diagonal.
ConfusionMatrix matrix_for(const ReferenceRow& row) {
    ConfusionMatrix cm;
    for (FaultClass c : all_fault_classes()) cm.classes.push_back(c);
    const int k = kNumFaultClasses;
    cm.counts.setZero(k, k);
    const int target = static_cast<int>(std::find(cm.classes.begin(), cm.classes.end(),
                                                  row.cls) -
                                        cm.classes.begin());
    const int filler = (target + 1) % k;
    cm.counts(target, target) = row.tp;
    cm.counts(target, filler) = row.fn;
    cm.counts(filler, target) = row.fp;
    cm.counts(filler, filler) = row.tn;
    return cm;
}

ClassMetrics find_metrics(const MetricsReport& report, FaultClass cls) {
    for (std::size_t c = 0; c < report.classes.size(); ++c)
        if (report.classes[c] == cls) return report.per_class[c];
    FAIL("class not present in report");
    return {};
}

std::vector<FaultClass> labels_with_counts(const std::vector<std::pair<FaultClass, int>>& spec) {
    std::vector<FaultClass> labels;
    for (const auto& [cls, count] : spec)
        for (int i = 0; i < count; ++i) labels.push_back(cls);
    return labels;
}

}  // namespace

TEST_CASE("stratified folds split balanced classes exactly") {
    const auto labels = labels_with_counts({{FaultClass::AG, 5}, {FaultClass::NF, 5}});
    const FoldAssignment folds = stratified_kfold(labels, 2, 7);
    std::map<int, int> sizes;
    for (int f : folds.fold_of) ++sizes[f];
    CHECK(sizes[0] == 5);
    CHECK(sizes[1] == 5);
    // Per-class fold counts stay within one of each other.
    for (FaultClass cls : {FaultClass::AG, FaultClass::NF}) {
        int in_fold0 = 0;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (folds.fold_of[i] == 0 && labels[i] == cls) ++in_fold0;
        CHECK((in_fold0 == 2 || in_fold0 == 3));
    }
}

TEST_CASE("full-scale fold sizes stay within one sample") {
    std::vector<std::pair<FaultClass, int>> spec;
    for (FaultClass c : all_fault_classes())
        spec.emplace_back(c, c == FaultClass::NF ? 2197 : 1449);
    const auto labels = labels_with_counts(spec);
    REQUIRE(labels.size() == 18136);

    const FoldAssignment folds = stratified_kfold(labels, 10, 42);
    std::vector<int> sizes(10, 0);
    for (int f : folds.fold_of) {
        REQUIRE(f >= 0);
        REQUIRE(f < 10);
        ++sizes[f];
    }
    for (int f = 0; f < 10; ++f) {
        INFO("fold ", f, " size ", sizes[f]);
        CHECK((sizes[f] == 1813 || sizes[f] == 1814));
    }
    // Per-class spread stays within one.
    for (FaultClass c : all_fault_classes()) {
        std::vector<int> per(10, 0);
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) ++per[folds.fold_of[i]];
        const auto [lo, hi] = std::minmax_element(per.begin(), per.end());
        CHECK(*hi - *lo <= 1);
    }
}

TEST_CASE("fold assignment replays under the same seed") {
    const auto labels = labels_with_counts({{FaultClass::AG, 13}, {FaultClass::BG, 9},
                                            {FaultClass::NF, 21}});
    const FoldAssignment a = stratified_kfold(labels, 4, 99);
    const FoldAssignment b = stratified_kfold(labels, 4, 99);
    CHECK(a.fold_of == b.fold_of);
    const FoldAssignment c = stratified_kfold(labels, 4, 100);
    CHECK(a.fold_of != c.fold_of);
}

TEST_CASE("fold parameters are validated") {
    const auto labels = labels_with_counts({{FaultClass::AG, 4}});
    CHECK_THROWS_AS(stratified_kfold(labels, 1, 0), ParameterError);
    CHECK_THROWS_AS(stratified_kfold(labels, 5, 0), ParameterError);
}

TEST_CASE("a perfect prediction yields a diagonal confusion matrix") {
    const auto labels = labels_with_counts({{FaultClass::AG, 3}, {FaultClass::NF, 2}});
    const std::vector<FaultClass> classes{FaultClass::AG, FaultClass::NF};
    const ConfusionMatrix cm = confusion(labels, labels, classes);
    CHECK(cm.counts(0, 0) == 3);
    CHECK(cm.counts(1, 1) == 2);
    CHECK(cm.counts(0, 1) == 0);
    CHECK(cm.counts(1, 0) == 0);
}

TEST_CASE("confusion counts follow a hand tally") {
    const std::vector<FaultClass> actual{FaultClass::AG, FaultClass::AG, FaultClass::NF};
    const std::vector<FaultClass> predicted{FaultClass::AG, FaultClass::NF, FaultClass::NF};
    const ConfusionMatrix cm =
        confusion(actual, predicted, {FaultClass::AG, FaultClass::NF});
    CHECK(cm.counts(0, 0) == 1);
    CHECK(cm.counts(0, 1) == 1);
    CHECK(cm.counts(1, 0) == 0);
    CHECK(cm.counts(1, 1) == 1);
}

TEST_CASE("empty input gives an all-zero matrix") {
    const ConfusionMatrix cm = confusion({}, {}, {FaultClass::AG, FaultClass::NF});
    CHECK(cm.counts.sum() == 0);
    CHECK(cm.counts.rows() == 2);
}

TEST_CASE("unknown labels are rejected") {
    CHECK_THROWS_AS(confusion({FaultClass::BG}, {FaultClass::BG}, {FaultClass::AG}),
                    ParameterError);
    CHECK_THROWS_AS(confusion({FaultClass::AG}, {FaultClass::AG, FaultClass::AG},
                              {FaultClass::AG}),
                    ParameterError);
}

TEST_CASE("per-class metrics reproduce the reference fold rows") {
    for (const ReferenceRow& row : reference_rows()) {
        INFO("class ", to_string(row.cls));
        REQUIRE(reconstruction_is_consistent(row));

        const MetricsReport report = per_class_metrics(matrix_for(row));
        const ClassMetrics m = find_metrics(report, row.cls);
        CHECK(std::abs(m.accuracy - row.accuracy) < 5e-5);
        CHECK(std::abs(m.precision - row.precision) < 5e-5);
        CHECK(std::abs(m.recall - row.recall) < 5e-5);
        CHECK(std::abs(m.f1 - row.f1) < 5e-5);
        CHECK(m.support == row.support);
    }
}

TEST_CASE("a perfect single-class matrix scores ones") {
    ConfusionMatrix cm;
    cm.classes = {FaultClass::AG};
    cm.counts.setConstant(1, 1, 9);
    const MetricsReport report = per_class_metrics(cm);
    CHECK(report.per_class[0].accuracy == doctest::Approx(1.0));
    CHECK(report.per_class[0].precision == doctest::Approx(1.0));
    CHECK(report.per_class[0].recall == doctest::Approx(1.0));
    CHECK(report.per_class[0].f1 == doctest::Approx(1.0));
    CHECK(report.per_class[0].mcc == doctest::Approx(1.0));
}

TEST_CASE("MCC hits -1 on a two-class total inversion") {
    ConfusionMatrix cm;
    cm.classes = {FaultClass::AG, FaultClass::NF};
    cm.counts.setZero(2, 2);
    cm.counts(0, 1) = 5;
    cm.counts(1, 0) = 5;
    const MetricsReport report = per_class_metrics(cm);
    CHECK(report.per_class[0].mcc == doctest::Approx(-1.0));
    CHECK(report.per_class[1].mcc == doctest::Approx(-1.0));
}

TEST_CASE("zero-denominator conventions") {
    ConfusionMatrix cm;
    cm.classes = {FaultClass::AG, FaultClass::NF};
    cm.counts.setZero(2, 2);
    cm.counts(1, 1) = 4;  // AG never occurs and is never predicted
    const MetricsReport report = per_class_metrics(cm);
    CHECK(report.per_class[0].precision == 0.0);
    CHECK(report.per_class[0].recall == 0.0);
    CHECK(report.per_class[0].f1 == 0.0);
    CHECK(report.per_class[0].mcc == 0.0);
}

TEST_CASE("aggregation reproduces the reference bottom rows") {
    // The full 12-row table: accuracy, precision, recall, f1, support.
    struct Row {
        FaultClass cls;
        double accuracy, precision, recall, f1;
        long support;
    };
    const std::vector<Row> rows = {
        {FaultClass::AB, 1.0, 1.0, 1.0, 1.0, 141},
        {FaultClass::ABG, 0.99945, 0.9931, 1.0, 0.99654, 144},
        {FaultClass::CA, 1.0, 1.0, 1.0, 1.0, 135},
        {FaultClass::AG, 0.99945, 1.0, 0.9939, 0.99694, 164},
        {FaultClass::BC, 0.9989, 0.98718, 1.0, 0.99355, 154},
        {FaultClass::BCG, 1.0, 1.0, 1.0, 1.0, 144},
        {FaultClass::BG, 1.0, 1.0, 1.0, 1.0, 132},
        {FaultClass::CAG, 0.9989, 1.0, 0.98639, 0.99315, 147},
        {FaultClass::CG, 1.0, 1.0, 1.0, 1.0, 147},
        {FaultClass::NF, 0.99945, 1.0, 0.99519, 0.99759, 208},
        {FaultClass::TLG, 0.99945, 0.99301, 1.0, 0.99649, 142},
        {FaultClass::TSC, 0.9989, 0.99355, 0.99355, 0.99355, 155},
    };

    MetricsReport report;
    for (const Row& r : rows) {
        report.classes.push_back(r.cls);
        ClassMetrics m;
        m.accuracy = r.accuracy;
        m.precision = r.precision;
        m.recall = r.recall;
        m.f1 = r.f1;
        m.support = r.support;
        report.per_class.push_back(m);
    }
    aggregate(report);

    CHECK(report.macro_avg.support == 1813);
    CHECK(std::abs(report.macro_avg.f1 - 0.99732) < 5e-5);
    CHECK(std::abs(report.macro_avg.accuracy - 0.99954) < 5e-5);
    CHECK(std::abs(report.macro_avg.precision - 0.99724) < 5e-5);
    CHECK(std::abs(report.macro_avg.recall - 0.99742) < 5e-5);
    CHECK(std::abs(report.weighted_avg.f1 - 0.99724) < 5e-5);
    CHECK(std::abs(report.weighted_avg.accuracy - 0.99952) < 5e-5);
    CHECK(std::abs(report.weighted_avg.precision - 0.99726) < 5e-5);
    CHECK(std::abs(report.weighted_avg.recall - 0.99724) < 5e-5);
}

TEST_CASE("uniform per-class metrics aggregate to themselves") {
    MetricsReport report;
    for (FaultClass c : {FaultClass::AG, FaultClass::BG, FaultClass::CG}) {
        report.classes.push_back(c);
        ClassMetrics m;
        m.accuracy = m.precision = m.recall = m.f1 = 0.75;
        m.mcc = 0.5;
        m.support = 10;
        report.per_class.push_back(m);
    }
    aggregate(report);
    CHECK(report.macro_avg.f1 == doctest::Approx(0.75));
    CHECK(report.weighted_avg.f1 == doctest::Approx(0.75));
    CHECK(report.macro_avg.mcc == doctest::Approx(0.5));
}

TEST_CASE("weighted averages respect supports") {
    MetricsReport report;
    report.classes = {FaultClass::AG, FaultClass::NF};
    ClassMetrics a;
    a.recall = 1.0;
    a.support = 1;
    ClassMetrics b;
    b.recall = 0.5;
    b.support = 3;
    report.per_class = {a, b};
    aggregate(report);
    CHECK(report.macro_avg.recall == doctest::Approx(0.75));
    CHECK(report.weighted_avg.recall == doctest::Approx(0.625));
}

TEST_CASE("F1 is the harmonic mean of the reported precision and recall") {
    for (const ReferenceRow& row : reference_rows()) {
        const MetricsReport report = per_class_metrics(matrix_for(row));
        const ClassMetrics m = find_metrics(report, row.cls);
        if (m.precision > 0.0 && m.recall > 0.0) {
            const double harmonic = 2.0 * m.precision * m.recall / (m.precision + m.recall);
            CHECK(std::abs(m.f1 - harmonic) < 1e-9);
        }
    }
}

TEST_CASE("metric conservation across a full report") {
    const ReferenceRow& row = reference_rows().front();
    const ConfusionMatrix cm = matrix_for(row);
    const MetricsReport report = per_class_metrics(cm);
    long support_sum = 0, tp_sum = 0;
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        support_sum += report.per_class[c].support;
        tp_sum += cm.counts(c, c);
    }
    CHECK(support_sum == cm.total());
    CHECK(tp_sum == cm.counts.trace());
    for (const ClassMetrics& m : report.per_class) {
        CHECK(m.mcc >= -1.0);
        CHECK(m.mcc <= 1.0);
        CHECK(m.accuracy + 1e-12 >=
              m.recall * static_cast<double>(m.support) / static_cast<double>(cm.total()));
    }
}

TEST_CASE("cross-validation produces one report per fold plus the average") {
    LabeledDataset ds = generate_dataset(desk_grid(21), 1);
    // Thin the dataset for speed: every third window.
    LabeledDataset small;
    for (std::size_t i = 0; i < ds.size(); i += 3) {
        small.windows.push_back(ds.windows[i]);
        small.labels.push_back(ds.labels[i]);
    }
    PipelineConfig cfg;
    cfg.k = 4;
    cfg.seed = 5;
    const CrossValResult result = cross_validate(small, cfg, 2);
    REQUIRE(result.folds.size() == 4);
    double mean_acc = 0.0;
    for (const FoldResult& fr : result.folds) {
        CHECK(fr.cm.total() > 0);
        mean_acc += fr.report.weighted_avg.accuracy;
    }
    CHECK(result.weighted_avg.accuracy == doctest::Approx(mean_acc / 4.0));
}

TEST_CASE("duplicated symmetric halves give identical fold reports") {
    // Two identical halves, each class a repeated copy of one window, so any
    // stratified split puts the same content in both folds.
    std::vector<CaseParams> cases;
    for (FaultClass cls : {FaultClass::AG, FaultClass::BC, FaultClass::NF}) {
        CaseParams p;
        p.fault_class = cls;
        p.resistance_ohm = 0.5;
        p.seed = 77;
        cases.push_back(p);
    }
    LabeledDataset ds;
    for (int copy = 0; copy < 2; ++copy)
        for (const CaseParams& p : cases)
            for (int i = 0; i < 2; ++i) {
                ds.windows.push_back(generate_case(p));
                ds.labels.push_back(p.fault_class);
            }

    PipelineConfig cfg;
    cfg.k = 2;
    cfg.seed = 3;
    const CrossValResult result = cross_validate(ds, cfg);
    REQUIRE(result.folds.size() == 2);
    CHECK(result.folds[0].cm.counts == result.folds[1].cm.counts);
    CHECK(result.folds[0].report.weighted_avg.accuracy ==
          doctest::Approx(result.folds[1].report.weighted_avg.accuracy));
}

TEST_CASE("a training split without two classes is rejected") {
    LabeledDataset ds;
    CaseParams p;
    p.fault_class = FaultClass::AG;
    for (int i = 0; i < 4; ++i) {
        p.seed = i;
        ds.windows.push_back(generate_case(p));
        ds.labels.push_back(p.fault_class);
    }
    PipelineConfig cfg;
    cfg.k = 2;
    CHECK_THROWS_AS(cross_validate(ds, cfg), DataError);
}
