#include "grassfault/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "grassfault/errors.hpp"

namespace grassfault {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) values.push_back(m(i, c));
    j["values"] = std::move(values);
    return j;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(values.size()) != rows * cols)
        throw DataError("model: matrix dimensions disagree with the value count");
    Eigen::MatrixXd m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = values[k++];
    return m;
}

}  // namespace

void save_model(const std::filesystem::path& path, const TrainedClassifier& clf) {
    ordered_json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["config"] = {{"d", clf.d}, {"l", clf.l}, {"beta", clf.beta}, {"c", clf.C}};

    ordered_json classes = ordered_json::array();
    for (FaultClass c : clf.classes) classes.push_back(to_string(c));
    doc["classes"] = std::move(classes);

    ordered_json models = ordered_json::array();
    for (const BinaryModel& m : clf.models) {
        ordered_json jm;
        jm["class_pair"] = {m.class_pair.first, m.class_pair.second};
        jm["support_indices"] = m.support_indices;
        jm["dual_coefs"] = m.dual_coefs;
        jm["bias"] = m.bias;
        jm["c"] = m.C;
        jm["converged"] = m.converged;
        models.push_back(std::move(jm));
    }
    doc["models"] = std::move(models);

    ordered_json points = ordered_json::array();
    for (const GrassmannPoint& p : clf.train_points) points.push_back(matrix_to_json(p.X));
    doc["train_points"] = std::move(points);

    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

TrainedClassifier load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model: " + path.string());

    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model: malformed JSON: " + std::string(e.what()));
    }

    try {
        if (doc.at("format_version").get<int>() != kModelFormatVersion)
            throw DataError("model: unsupported format_version");

        TrainedClassifier clf;
        clf.d = doc.at("config").at("d").get<int>();
        clf.l = doc.at("config").at("l").get<int>();
        clf.beta = doc.at("config").at("beta").get<double>();
        clf.C = doc.at("config").at("c").get<double>();

        for (const auto& name : doc.at("classes")) {
            const auto cls = fault_class_from_string(name.get<std::string>());
            if (!cls) throw DataError("model: unknown class label");
            clf.classes.push_back(*cls);
        }

        for (const auto& jm : doc.at("models")) {
            BinaryModel m;
            m.class_pair = {jm.at("class_pair").at(0).get<int>(),
                            jm.at("class_pair").at(1).get<int>()};
            m.support_indices = jm.at("support_indices").get<std::vector<int>>();
            m.dual_coefs = jm.at("dual_coefs").get<std::vector<double>>();
            m.bias = jm.at("bias").get<double>();
            m.C = jm.at("c").get<double>();
            m.converged = jm.at("converged").get<bool>();
            if (m.support_indices.size() != m.dual_coefs.size())
                throw DataError("model: support indices and coefficients disagree");
            clf.models.push_back(std::move(m));
        }

        for (const auto& jp : doc.at("train_points"))
            clf.train_points.push_back(GrassmannPoint{matrix_from_json(jp)});

        const int n = static_cast<int>(clf.train_points.size());
        for (const BinaryModel& m : clf.models) {
            for (int idx : m.support_indices)
                if (idx < 0 || idx >= n) throw DataError("model: support index out of range");
            if (m.class_pair.first < 0 || m.class_pair.second < 0 ||
                m.class_pair.first >= static_cast<int>(clf.classes.size()) ||
                m.class_pair.second >= static_cast<int>(clf.classes.size()))
                throw DataError("model: class pair out of range");
        }
        return clf;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model: missing or mistyped field: " + std::string(e.what()));
    }
}

}  // namespace grassfault
