#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "grassfault/fault_class.hpp"

namespace grassfault {

// Hyperparameters shared by training, prediction and cross-validation.
struct PipelineConfig {
    int d = 6;           // hidden dimension
    int l = 5;           // observability truncation length
    double beta = 3.0;   // kernel width
    double C = 10.0;     // SVM penalty
    int k = 10;          // folds
    std::uint64_t seed = 42;
    double tol = 1e-3;   // SMO tolerance

    // Throws ParameterError on any out-of-range field.
    void validate(int feature_count = kNumFeatures) const;
};

// Flat `key = value` file. Lines starting with '#' and blank lines are
// skipped. Unknown keys are rejected.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Applies recognized pipeline keys (d, l, beta, c, k, seed, tol) from a
// parsed config map onto cfg.
void apply_pipeline_keys(const std::map<std::string, std::string>& kv, PipelineConfig& cfg);

}  // namespace grassfault
