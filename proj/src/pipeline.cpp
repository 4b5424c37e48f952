#include "grassfault/pipeline.hpp"

#include "grassfault/arma_subspace.hpp"
#include "grassfault/errors.hpp"
#include "grassfault/parallel.hpp"

namespace grassfault {

std::vector<GrassmannPoint> embed_dataset(const LabeledDataset& dataset, int d, int l,
                                          int threads) {
    std::vector<GrassmannPoint> points(dataset.windows.size());
    parallel_for(dataset.windows.size(), threads, [&](std::size_t i) {
        points[i] = grassmann_embed(dataset.windows[i], d, l);
    });
    return points;
}

TrainedClassifier fit_pipeline(const LabeledDataset& dataset, const PipelineConfig& config,
                               int threads) {
    if (dataset.windows.size() != dataset.labels.size())
        throw ParameterError("fit_pipeline: windows and labels differ in length");
    if (dataset.windows.empty()) throw ParameterError("fit_pipeline: empty dataset");
    config.validate(static_cast<int>(dataset.windows.front().features()));

    std::vector<GrassmannPoint> points = embed_dataset(dataset, config.d, config.l, threads);
    const KernelGram gram = gram_matrix(points, config.beta, threads);

    SmoSettings smo;
    smo.C = config.C;
    smo.tol = config.tol;

    TrainedClassifier clf = train_multiclass(gram, dataset.labels, smo, threads);
    clf.train_points = std::move(points);
    clf.d = config.d;
    clf.l = config.l;
    return clf;
}

FaultClass predict_window(const TrainedClassifier& clf, const MultichannelWindow& window,
                          std::vector<double>* decisions_out) {
    if (clf.train_points.empty())
        throw ParameterError("predict_window: classifier carries no training points");
    if (window.features() < clf.d)
        throw ParameterError("predict_window: window has fewer features than the model's d");
    const GrassmannPoint point = grassmann_embed(window, clf.d, clf.l);
    return predict(clf, kernel_row(point, clf.train_points, clf.beta), decisions_out);
}

}  // namespace grassfault
