#pragma once

#include <filesystem>

#include "grassfault/window.hpp"

namespace grassfault {

// Dataset CSV layout, one block per window:
//   <label>,<sample_rate_hz>,<tau>,<r>
//   tau rows of r comma-separated values (9 significant digits)
//   blank line
void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path);

LabeledDataset load_csv(const std::filesystem::path& path);

}  // namespace grassfault
