#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "grassfault/fault_class.hpp"

namespace grassfault {

// One measurement window: tau time samples (rows) of r features (columns).
struct MultichannelWindow {
    Eigen::MatrixXd data;  // tau x r
    double sample_rate_hz = 0.0;

    Eigen::Index tau() const { return data.rows(); }
    Eigen::Index features() const { return data.cols(); }
};

struct LabeledDataset {
    std::vector<MultichannelWindow> windows;
    std::vector<FaultClass> labels;

    std::size_t size() const { return windows.size(); }
};

}  // namespace grassfault
