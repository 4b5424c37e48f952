#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "grassfault/arma_subspace.hpp"
#include "grassfault/dataset_io.hpp"
#include "grassfault/errors.hpp"
#include "grassfault/eval.hpp"
#include "grassfault/grassmann.hpp"
#include "grassfault/model_io.hpp"
#include "grassfault/pipeline.hpp"
#include "grassfault/report_io.hpp"
#include "grassfault/signalgen.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace grassfault;

namespace {

FaultClass class_from(const std::string& label) {
    const auto cls = fault_class_from_string(label);
    if (!cls) throw ParameterError("unknown fault class: " + label);
    return *cls;
}

LabeledDataset dataset_from(const std::vector<Eigen::MatrixXd>& windows,
                            const std::vector<std::string>& labels, double sample_rate_hz) {
    if (windows.size() != labels.size())
        throw ParameterError("windows and labels differ in length");
    LabeledDataset ds;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        ds.windows.push_back(MultichannelWindow{windows[i], sample_rate_hz});
        ds.labels.push_back(class_from(labels[i]));
    }
    return ds;
}

GrassmannPoint point_from(const Eigen::MatrixXd& x) {
    // Re-orthonormalize defensively so arbitrary numpy input is a valid point.
    return orthonormalize(x);
}

py::dict metrics_dict(const ClassMetrics& m) {
    py::dict d;
    d["accuracy"] = m.accuracy;
    d["precision"] = m.precision;
    d["recall"] = m.recall;
    d["f1"] = m.f1;
    d["mcc"] = m.mcc;
    d["support"] = m.support;
    return d;
}

py::dict report_dict(const MetricsReport& report) {
    py::dict per_class;
    for (std::size_t c = 0; c < report.per_class.size(); ++c)
        per_class[py::str(to_string(report.classes[c]))] = metrics_dict(report.per_class[c]);
    py::dict d;
    d["per_class"] = per_class;
    d["macro_avg"] = metrics_dict(report.macro_avg);
    d["weighted_avg"] = metrics_dict(report.weighted_avg);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grassmann-kernel classification of multichannel waveform windows";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.attr("FAULT_CLASSES") = [] {
        std::vector<std::string> names;
        for (FaultClass c : all_fault_classes()) names.push_back(to_string(c));
        return names;
    }();
    m.attr("SAMPLE_RATE_HZ") = kSampleRateHz;

    m.def(
        "generate_case",
        [](const std::string& fault_class, double resistance_ohm, double incidence_angle_deg,
           double location_km, double load_scale, double noise_snr_db, std::uint64_t seed,
           int tau) {
            CaseParams p;
            p.fault_class = class_from(fault_class);
            p.resistance_ohm = resistance_ohm;
            p.incidence_angle_deg = incidence_angle_deg;
            p.location_km = location_km;
            p.load_scale = load_scale;
            p.noise_snr_db = noise_snr_db;
            p.seed = seed;
            return generate_case(p, tau).data;
        },
        "fault_class"_a, "resistance_ohm"_a = 0.01, "incidence_angle_deg"_a = 0.0,
        "location_km"_a = 1.0, "load_scale"_a = 0.0, "noise_snr_db"_a = 40.0, "seed"_a = 0,
        "tau"_a = kDefaultTau,
        "Synthesize one tau x 6 window (Va, Vb, Vc, Ia, Ib, Ic).");

    m.def(
        "desk_dataset",
        [](std::uint64_t seed, double noise_snr_db, int tau) {
            const LabeledDataset ds = generate_dataset(desk_grid(seed, noise_snr_db), 1, tau);
            std::vector<Eigen::MatrixXd> windows;
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                windows.push_back(ds.windows[i].data);
                labels.push_back(to_string(ds.labels[i]));
            }
            return py::make_tuple(windows, labels);
        },
        "seed"_a = 42, "noise_snr_db"_a = 40.0, "tau"_a = kDefaultTau,
        "Desk-scale labeled dataset: (windows, labels).");

    m.def(
        "save_csv",
        [](const std::filesystem::path& path, const std::vector<Eigen::MatrixXd>& windows,
           const std::vector<std::string>& labels, double sample_rate_hz) {
            save_csv(dataset_from(windows, labels, sample_rate_hz), path);
        },
        "path"_a, "windows"_a, "labels"_a, "sample_rate_hz"_a = kSampleRateHz);

    m.def(
        "load_csv",
        [](const std::filesystem::path& path) {
            const LabeledDataset ds = load_csv(path);
            std::vector<Eigen::MatrixXd> windows;
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                windows.push_back(ds.windows[i].data);
                labels.push_back(to_string(ds.labels[i]));
            }
            return py::make_tuple(windows, labels);
        },
        "path"_a);

    m.def(
        "embed",
        [](const Eigen::MatrixXd& window, int d, int l) {
            return grassmann_embed(MultichannelWindow{window, kSampleRateHz}, d, l).X;
        },
        "window"_a, "d"_a = 6, "l"_a = 5,
        "Observability-subspace representative of one window, shape (l*r, d).");

    m.def(
        "projection_distance",
        [](const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2) {
            return projection_distance(point_from(x1), point_from(x2));
        },
        "x1"_a, "x2"_a);

    m.def(
        "projection_kernel",
        [](const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, double beta) {
            return projection_kernel(point_from(x1), point_from(x2), beta);
        },
        "x1"_a, "x2"_a, "beta"_a = 3.0);

    m.def(
        "gram",
        [](const std::vector<Eigen::MatrixXd>& points, double beta, int threads) {
            std::vector<GrassmannPoint> pts;
            pts.reserve(points.size());
            for (const auto& x : points) pts.push_back(point_from(x));
            return gram_matrix(pts, beta, threads).K;
        },
        "points"_a, "beta"_a = 3.0, "threads"_a = 1);

    py::class_<TrainedClassifier>(m, "Classifier")
        .def_property_readonly("classes",
                               [](const TrainedClassifier& clf) {
                                   std::vector<std::string> names;
                                   for (FaultClass c : clf.classes)
                                       names.push_back(to_string(c));
                                   return names;
                               })
        .def_readonly("beta", &TrainedClassifier::beta)
        .def_readonly("d", &TrainedClassifier::d)
        .def_readonly("l", &TrainedClassifier::l)
        .def("__len__",
             [](const TrainedClassifier& clf) { return clf.train_points.size(); })
        .def(
            "predict_window",
            [](const TrainedClassifier& clf, const Eigen::MatrixXd& window) {
                return to_string(
                    predict_window(clf, MultichannelWindow{window, kSampleRateHz}));
            },
            "window"_a, "Embed a raw window with the stored (d, l) and vote.")
        .def(
            "predict",
            [](const TrainedClassifier& clf, const Eigen::MatrixXd& point) {
                return to_string(
                    predict(clf, kernel_row(point_from(point), clf.train_points, clf.beta)));
            },
            "point"_a, "Classify an already-embedded Grassmann point.");

    m.def(
        "fit",
        [](const std::vector<Eigen::MatrixXd>& windows, const std::vector<std::string>& labels,
           int d, int l, double beta, double C, double tol, int threads) {
            PipelineConfig cfg;
            cfg.d = d;
            cfg.l = l;
            cfg.beta = beta;
            cfg.C = C;
            cfg.tol = tol;
            return fit_pipeline(dataset_from(windows, labels, kSampleRateHz), cfg, threads);
        },
        "windows"_a, "labels"_a, "d"_a = 6, "l"_a = 5, "beta"_a = 3.0, "C"_a = 10.0,
        "tol"_a = 1e-3, "threads"_a = 1,
        "Embed every window, build the Gram matrix and train the one-vs-one SVM.");

    m.def("save_model", [](const std::filesystem::path& path,
                           const TrainedClassifier& clf) { save_model(path, clf); },
          "path"_a, "classifier"_a);
    m.def("load_model",
          [](const std::filesystem::path& path) { return load_model(path); }, "path"_a);

    m.def(
        "cross_validate",
        [](const std::vector<Eigen::MatrixXd>& windows, const std::vector<std::string>& labels,
           int d, int l, double beta, double C, int k, std::uint64_t seed, double tol,
           int threads) {
            PipelineConfig cfg;
            cfg.d = d;
            cfg.l = l;
            cfg.beta = beta;
            cfg.C = C;
            cfg.k = k;
            cfg.seed = seed;
            cfg.tol = tol;
            const CrossValResult result =
                cross_validate(dataset_from(windows, labels, kSampleRateHz), cfg, threads);

            py::list folds;
            for (std::size_t f = 0; f < result.folds.size(); ++f) {
                py::dict fold;
                fold["fold"] = f + 1;
                std::vector<std::string> names;
                for (FaultClass c : result.folds[f].cm.classes)
                    names.push_back(to_string(c));
                fold["classes"] = names;
                fold["confusion"] = result.folds[f].cm.counts;
                fold["report"] = report_dict(result.folds[f].report);
                folds.append(fold);
            }
            py::dict out;
            out["folds"] = folds;
            py::dict average;
            average["macro_avg"] = metrics_dict(result.macro_avg);
            average["weighted_avg"] = metrics_dict(result.weighted_avg);
            out["average"] = average;
            return out;
        },
        "windows"_a, "labels"_a, "d"_a = 6, "l"_a = 5, "beta"_a = 3.0, "C"_a = 10.0,
        "k"_a = 10, "seed"_a = 42, "tol"_a = 1e-3, "threads"_a = 1,
        "Stratified k-fold cross-validation; returns per-fold and averaged metrics.");
}
