#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "grassfault/config.hpp"
#include "grassfault/eval.hpp"

namespace grassfault {

// Full cross-validation report: config, per-fold confusion matrices and
// metrics, fold-averaged rows. Key order and number formatting are fixed, so
// equal inputs serialize to identical bytes.
std::string report_to_json(const CrossValResult& result, const PipelineConfig& config);

void write_report_json(const std::filesystem::path& path, const CrossValResult& result,
                       const PipelineConfig& config);

// Flat summary, one row per fold plus an average row:
//   fold,accuracy,precision,recall,f1,mcc   (weighted averages, 5 decimals)
void write_report_csv(const std::filesystem::path& path, const CrossValResult& result);

// Header row of class labels, then one row per actual class.
void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm);

// Reads a report written by write_report_json.
struct ReportDocument {
    PipelineConfig config;
    CrossValResult result;
};
ReportDocument read_report_json(const std::filesystem::path& path);

// Human-readable rendering plus plot-ready series (confusion heat-map cells,
// per-class metric bars) written next to out_dir.
void render_report(const ReportDocument& doc, std::ostream& out,
                   const std::filesystem::path& out_dir);

}  // namespace grassfault
