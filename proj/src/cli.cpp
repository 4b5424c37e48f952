#include "grassfault/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "grassfault/config.hpp"
#include "grassfault/dataset_io.hpp"
#include "grassfault/errors.hpp"
#include "grassfault/eval.hpp"
#include "grassfault/model_io.hpp"
#include "grassfault/parallel.hpp"
#include "grassfault/pipeline.hpp"
#include "grassfault/report_io.hpp"
#include "grassfault/signalgen.hpp"

namespace grassfault::cli {

namespace {

struct CommonOpts {
    std::string config_path;
    int threads = 1;
    std::optional<int> d, l, k;
    std::optional<double> beta, C;
    std::optional<std::uint64_t> seed;
};

// Config file first, then explicit flags on top.
PipelineConfig resolve_config(const CommonOpts& opts) {
    PipelineConfig cfg;
    if (!opts.config_path.empty())
        apply_pipeline_keys(read_config_file(opts.config_path), cfg);
    if (opts.d) cfg.d = *opts.d;
    if (opts.l) cfg.l = *opts.l;
    if (opts.beta) cfg.beta = *opts.beta;
    if (opts.C) cfg.C = *opts.C;
    if (opts.k) cfg.k = *opts.k;
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key = value config file");
    cmd->add_option("--threads", opts.threads, "worker thread cap")->check(CLI::PositiveNumber);
    cmd->add_option("--d", opts.d, "hidden dimension");
    cmd->add_option("--l", opts.l, "observability truncation length");
    cmd->add_option("--beta", opts.beta, "kernel width");
    cmd->add_option("--c", opts.C, "SVM penalty");
    cmd->add_option("--k", opts.k, "fold count");
    cmd->add_option("--seed", opts.seed, "random seed");
}

int do_generate(const CommonOpts& opts, const std::string& out_path, std::ostream& out) {
    std::string grid_name = "desk";
    double snr_db = 40.0;
    int tau = kDefaultTau;
    int per_case = 1;
    std::uint64_t seed = 42;
    if (!opts.config_path.empty()) {
        const auto kv = read_config_file(opts.config_path);
        if (auto it = kv.find("grid"); it != kv.end()) grid_name = it->second;
        if (auto it = kv.find("snr_db"); it != kv.end()) snr_db = std::stod(it->second);
        if (auto it = kv.find("tau"); it != kv.end()) tau = std::stoi(it->second);
        if (auto it = kv.find("per_case"); it != kv.end()) per_case = std::stoi(it->second);
        if (auto it = kv.find("seed"); it != kv.end()) seed = std::stoull(it->second);
    }
    if (opts.seed) seed = *opts.seed;

    std::vector<CaseParams> grid;
    if (grid_name == "desk")
        grid = desk_grid(seed, snr_db);
    else if (grid_name == "paper")
        grid = paper_grid(seed, snr_db);
    else
        throw ParameterError("generate: grid must be 'desk' or 'paper'");

    const LabeledDataset dataset = generate_dataset(grid, per_case, tau);
    save_csv(dataset, out_path);

    std::map<std::string, int> counts;
    for (FaultClass c : dataset.labels) ++counts[to_string(c)];
    out << "wrote " << dataset.size() << " windows to " << out_path << '\n';
    for (FaultClass c : all_fault_classes()) {
        const auto it = counts.find(to_string(c));
        if (it != counts.end()) out << "  " << it->first << ": " << it->second << '\n';
    }
    return kExitOk;
}

int do_crossval(const CommonOpts& opts, const std::string& dataset_path,
                const std::string& out_dir, std::ostream& out) {
    const PipelineConfig cfg = resolve_config(opts);
    const LabeledDataset dataset = load_csv(dataset_path);
    const CrossValResult result = cross_validate(dataset, cfg, opts.threads);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_report_json(dir / "report.json", result, cfg);
    write_report_csv(dir / "report.csv", result);
    for (std::size_t f = 0; f < result.folds.size(); ++f)
        write_confusion_csv(dir / ("confusion_fold_" + std::to_string(f + 1) + ".csv"),
                            result.folds[f].cm);

    out << "fold,accuracy,precision,recall,f1,mcc\n";
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
        const ClassMetrics& m = result.folds[f].report.weighted_avg;
        char line[160];
        std::snprintf(line, sizeof line, "%zu,%.5f,%.5f,%.5f,%.5f,%.5f", f + 1, m.accuracy,
                      m.precision, m.recall, m.f1, m.mcc);
        out << line << '\n';
    }
    const ClassMetrics& avg = result.weighted_avg;
    char line[160];
    std::snprintf(line, sizeof line, "average,%.5f,%.5f,%.5f,%.5f,%.5f", avg.accuracy,
                  avg.precision, avg.recall, avg.f1, avg.mcc);
    out << line << '\n';
    out << "reports written to " << dir.string() << '\n';
    return kExitOk;
}

int do_train(const CommonOpts& opts, const std::string& dataset_path,
             const std::string& model_out, std::ostream& out) {
    const PipelineConfig cfg = resolve_config(opts);
    const LabeledDataset dataset = load_csv(dataset_path);
    const TrainedClassifier clf = fit_pipeline(dataset, cfg, opts.threads);
    save_model(model_out, clf);
    out << "trained on " << dataset.size() << " windows, " << clf.classes.size()
        << " classes, " << clf.models.size() << " pair models -> " << model_out << '\n';
    return kExitOk;
}

int do_predict(const CommonOpts& opts, const std::string& model_path,
               const std::string& dataset_path, const std::string& out_path, bool verbose,
               std::ostream& out) {
    const TrainedClassifier clf = load_model(model_path);
    const LabeledDataset dataset = load_csv(dataset_path);
    if (!dataset.windows.empty() &&
        clf.d > static_cast<int>(dataset.windows.front().features()))
        throw ParameterError("predict: model d exceeds the dataset feature count");

    std::vector<FaultClass> predictions(dataset.size());
    std::vector<std::vector<double>> decisions(dataset.size());
    parallel_for(dataset.size(), opts.threads, [&](std::size_t i) {
        predictions[i] =
            predict_window(clf, dataset.windows[i], verbose ? &decisions[i] : nullptr);
    });

    std::ofstream file(out_path);
    if (!file) throw DataError("cannot open for writing: " + out_path);
    file << "index,actual,predicted";
    if (verbose)
        for (const BinaryModel& m : clf.models)
            file << ',' << to_string(clf.classes[m.class_pair.first]) << '|'
                 << to_string(clf.classes[m.class_pair.second]);
    file << '\n';
    char buf[32];
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        file << i << ',' << to_string(dataset.labels[i]) << ',' << to_string(predictions[i]);
        if (verbose)
            for (double v : decisions[i]) {
                std::snprintf(buf, sizeof buf, "%.9g", v);
                file << ',' << buf;
            }
        file << '\n';
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (predictions[i] == dataset.labels[i]) ++correct;
    out << "predicted " << dataset.size() << " windows, " << correct
        << " match the file labels -> " << out_path << '\n';
    return kExitOk;
}

int do_report(const std::string& report_path, const std::string& out_dir, std::ostream& out) {
    const ReportDocument doc = read_report_json(report_path);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    render_report(doc, out, dir);
    out << "plot series written to " << dir.string() << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grassmann-kernel fault waveform classifier"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string out_path = ".";
    std::string dataset_path, model_path, report_path;
    bool verbose = false;

    auto* generate = app.add_subcommand("generate", "synthesize a labeled dataset CSV");
    add_common_flags(generate, opts);
    generate->add_option("--out", out_path, "output CSV path")->required();

    auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation with reports");
    add_common_flags(crossval, opts);
    crossval->add_option("dataset", dataset_path, "dataset CSV")->required();
    crossval->add_option("--out", out_path, "output directory");

    auto* train = app.add_subcommand("train", "train on a full dataset and save the model");
    add_common_flags(train, opts);
    train->add_option("dataset", dataset_path, "dataset CSV")->required();
    train->add_option("--out", out_path, "model JSON path")->required();

    auto* predictcmd = app.add_subcommand("predict", "label a dataset with a saved model");
    add_common_flags(predictcmd, opts);
    predictcmd->add_option("model", model_path, "model JSON")->required();
    predictcmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    predictcmd->add_option("--out", out_path, "predictions CSV path")->required();
    predictcmd->add_flag("--verbose", verbose, "include per-pair decision values");

    auto* report = app.add_subcommand("report", "render a report JSON and emit plot series");
    report->add_option("report", report_path, "report JSON")->required();
    report->add_option("--out", out_path, "directory for plot series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: usage: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return do_generate(opts, out_path, out);
        if (crossval->parsed()) return do_crossval(opts, dataset_path, out_path, out);
        if (train->parsed()) return do_train(opts, dataset_path, out_path, out);
        if (predictcmd->parsed())
            return do_predict(opts, model_path, dataset_path, out_path, verbose, out);
        if (report->parsed()) return do_report(report_path, out_path, out);
        err << "error: usage: no subcommand\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "error: parameter: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericError& e) {
        err << "error: numeric: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const DataError& e) {
        err << "error: data: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace grassfault::cli
