#include "grassfault/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>

#include "grassfault/errors.hpp"

namespace grassfault {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed5(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

ordered_json metrics_to_json(const ClassMetrics& m) {
    ordered_json j;
    j["accuracy"] = m.accuracy;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["mcc"] = m.mcc;
    j["support"] = m.support;
    return j;
}

ClassMetrics metrics_from_json(const ordered_json& j) {
    ClassMetrics m;
    m.accuracy = j.at("accuracy").get<double>();
    m.precision = j.at("precision").get<double>();
    m.recall = j.at("recall").get<double>();
    m.f1 = j.at("f1").get<double>();
    m.mcc = j.at("mcc").get<double>();
    m.support = j.at("support").get<long>();
    return m;
}

}  // namespace

std::string report_to_json(const CrossValResult& result, const PipelineConfig& config) {
    ordered_json doc;
    doc["format_version"] = 1;
    doc["config"] = {{"d", config.d},     {"l", config.l},       {"beta", config.beta},
                     {"c", config.C},     {"k", config.k},       {"seed", config.seed},
                     {"tol", config.tol}};

    ordered_json folds = ordered_json::array();
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
        const FoldResult& fr = result.folds[f];
        ordered_json jf;
        jf["fold"] = f + 1;

        ordered_json classes = ordered_json::array();
        for (FaultClass c : fr.cm.classes) classes.push_back(to_string(c));
        jf["classes"] = std::move(classes);

        ordered_json rows = ordered_json::array();
        for (Eigen::Index i = 0; i < fr.cm.counts.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index j = 0; j < fr.cm.counts.cols(); ++j)
                row.push_back(fr.cm.counts(i, j));
            rows.push_back(std::move(row));
        }
        jf["confusion"] = std::move(rows);

        ordered_json per_class;
        for (std::size_t c = 0; c < fr.report.per_class.size(); ++c)
            per_class[to_string(fr.report.classes[c])] =
                metrics_to_json(fr.report.per_class[c]);
        jf["per_class"] = std::move(per_class);
        jf["macro_avg"] = metrics_to_json(fr.report.macro_avg);
        jf["weighted_avg"] = metrics_to_json(fr.report.weighted_avg);
        folds.push_back(std::move(jf));
    }
    doc["folds"] = std::move(folds);
    doc["average"] = {{"macro_avg", metrics_to_json(result.macro_avg)},
                      {"weighted_avg", metrics_to_json(result.weighted_avg)}};
    return doc.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path& path, const CrossValResult& result,
                       const PipelineConfig& config) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << report_to_json(result, config);
    if (!out) throw DataError("write failed: " + path.string());
}

void write_report_csv(const std::filesystem::path& path, const CrossValResult& result) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << "fold,accuracy,precision,recall,f1,mcc\n";
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
        const ClassMetrics& m = result.folds[f].report.weighted_avg;
        out << (f + 1) << ',' << fixed5(m.accuracy) << ',' << fixed5(m.precision) << ','
            << fixed5(m.recall) << ',' << fixed5(m.f1) << ',' << fixed5(m.mcc) << '\n';
    }
    const ClassMetrics& avg = result.weighted_avg;
    out << "average," << fixed5(avg.accuracy) << ',' << fixed5(avg.precision) << ','
        << fixed5(avg.recall) << ',' << fixed5(avg.f1) << ',' << fixed5(avg.mcc) << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << "actual";
    for (FaultClass c : cm.classes) out << ',' << to_string(c);
    out << '\n';
    for (Eigen::Index i = 0; i < cm.counts.rows(); ++i) {
        out << to_string(cm.classes[i]);
        for (Eigen::Index j = 0; j < cm.counts.cols(); ++j) out << ',' << cm.counts(i, j);
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

ReportDocument read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report: " + path.string());
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("report: malformed JSON: " + std::string(e.what()));
    }

    try {
        ReportDocument out;
        const auto& jc = doc.at("config");
        out.config.d = jc.at("d").get<int>();
        out.config.l = jc.at("l").get<int>();
        out.config.beta = jc.at("beta").get<double>();
        out.config.C = jc.at("c").get<double>();
        out.config.k = jc.at("k").get<int>();
        out.config.seed = jc.at("seed").get<std::uint64_t>();
        out.config.tol = jc.at("tol").get<double>();

        for (const auto& jf : doc.at("folds")) {
            FoldResult fr;
            for (const auto& name : jf.at("classes")) {
                const auto cls = fault_class_from_string(name.get<std::string>());
                if (!cls) throw DataError("report: unknown class label");
                fr.cm.classes.push_back(*cls);
            }
            const int k = static_cast<int>(fr.cm.classes.size());
            fr.cm.counts.setZero(k, k);
            const auto& rows = jf.at("confusion");
            if (static_cast<int>(rows.size()) != k)
                throw DataError("report: confusion matrix shape mismatch");
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) fr.cm.counts(i, j) = rows.at(i).at(j).get<long>();

            fr.report.classes = fr.cm.classes;
            for (FaultClass c : fr.cm.classes)
                fr.report.per_class.push_back(
                    metrics_from_json(jf.at("per_class").at(to_string(c))));
            fr.report.macro_avg = metrics_from_json(jf.at("macro_avg"));
            fr.report.weighted_avg = metrics_from_json(jf.at("weighted_avg"));
            out.result.folds.push_back(std::move(fr));
        }
        out.result.macro_avg = metrics_from_json(doc.at("average").at("macro_avg"));
        out.result.weighted_avg = metrics_from_json(doc.at("average").at("weighted_avg"));
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("report: missing or mistyped field: " + std::string(e.what()));
    }
}

void render_report(const ReportDocument& doc, std::ostream& out,
                   const std::filesystem::path& out_dir) {
    out << "fold  accuracy  precision  recall   f1       mcc\n";
    for (std::size_t f = 0; f < doc.result.folds.size(); ++f) {
        const ClassMetrics& m = doc.result.folds[f].report.weighted_avg;
        out << std::left << std::setw(6) << (f + 1) << std::setw(10) << fixed5(m.accuracy)
            << std::setw(11) << fixed5(m.precision) << std::setw(9) << fixed5(m.recall)
            << std::setw(9) << fixed5(m.f1) << fixed5(m.mcc) << '\n';
    }
    out << std::left << std::setw(6) << "avg" << std::setw(10)
        << fixed5(doc.result.weighted_avg.accuracy) << std::setw(11)
        << fixed5(doc.result.weighted_avg.precision) << std::setw(9)
        << fixed5(doc.result.weighted_avg.recall) << std::setw(9)
        << fixed5(doc.result.weighted_avg.f1) << fixed5(doc.result.weighted_avg.mcc) << "\n\n";

    if (!doc.result.folds.empty()) {
        const MetricsReport& last = doc.result.folds.back().report;
        out << "per-class metrics, fold " << doc.result.folds.size() << ":\n";
        out << "class  accuracy  precision  recall   f1       mcc      support\n";
        for (std::size_t c = 0; c < last.per_class.size(); ++c) {
            const ClassMetrics& m = last.per_class[c];
            out << std::left << std::setw(7) << to_string(last.classes[c]) << std::setw(10)
                << fixed5(m.accuracy) << std::setw(11) << fixed5(m.precision) << std::setw(9)
                << fixed5(m.recall) << std::setw(9) << fixed5(m.f1) << std::setw(9)
                << fixed5(m.mcc) << m.support << '\n';
        }
    }

    // Plot-ready series.
    std::ofstream cells(out_dir / "confusion_cells.csv");
    if (!cells) throw DataError("cannot open for writing: confusion_cells.csv");
    cells << "fold,actual,predicted,count\n";
    for (std::size_t f = 0; f < doc.result.folds.size(); ++f) {
        const ConfusionMatrix& cm = doc.result.folds[f].cm;
        for (Eigen::Index i = 0; i < cm.counts.rows(); ++i)
            for (Eigen::Index j = 0; j < cm.counts.cols(); ++j)
                cells << (f + 1) << ',' << to_string(cm.classes[i]) << ','
                      << to_string(cm.classes[j]) << ',' << cm.counts(i, j) << '\n';
    }

    std::ofstream bars(out_dir / "per_class_bars.csv");
    if (!bars) throw DataError("cannot open for writing: per_class_bars.csv");
    bars << "fold,class,metric,value\n";
    for (std::size_t f = 0; f < doc.result.folds.size(); ++f) {
        const MetricsReport& rep = doc.result.folds[f].report;
        for (std::size_t c = 0; c < rep.per_class.size(); ++c) {
            const ClassMetrics& m = rep.per_class[c];
            const std::string cls = to_string(rep.classes[c]);
            bars << (f + 1) << ',' << cls << ",accuracy," << fixed5(m.accuracy) << '\n';
            bars << (f + 1) << ',' << cls << ",precision," << fixed5(m.precision) << '\n';
            bars << (f + 1) << ',' << cls << ",recall," << fixed5(m.recall) << '\n';
            bars << (f + 1) << ',' << cls << ",f1," << fixed5(m.f1) << '\n';
            bars << (f + 1) << ',' << cls << ",mcc," << fixed5(m.mcc) << '\n';
        }
    }
}

}  // namespace grassfault
