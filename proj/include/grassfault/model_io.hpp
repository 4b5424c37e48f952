#pragma once

#include <filesystem>

#include "grassfault/config.hpp"
#include "grassfault/kernel_svm.hpp"

namespace grassfault {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON artifact: hyperparameters, class list, pair models and the
// retained Grassmann points (row-major flattened with explicit dimensions).
// Doubles round-trip losslessly, so save -> load -> predict is bit-exact.
void save_model(const std::filesystem::path& path, const TrainedClassifier& clf);

TrainedClassifier load_model(const std::filesystem::path& path);

}  // namespace grassfault
