#pragma once

#include <vector>

#include "grassfault/config.hpp"
#include "grassfault/kernel_svm.hpp"
#include "grassfault/window.hpp"

namespace grassfault {

// Embeds each window independently; order matches the input.
std::vector<GrassmannPoint> embed_dataset(const LabeledDataset& dataset, int d, int l,
                                          int threads = 1);

// Embed -> Gram -> one-vs-one SVM on the whole dataset. The returned
// classifier keeps the embedded points for later prediction.
TrainedClassifier fit_pipeline(const LabeledDataset& dataset, const PipelineConfig& config,
                               int threads = 1);

// Embeds with the classifier's (d, l) and votes over its pair models.
FaultClass predict_window(const TrainedClassifier& clf, const MultichannelWindow& window,
                          std::vector<double>* decisions_out = nullptr);

}  // namespace grassfault
