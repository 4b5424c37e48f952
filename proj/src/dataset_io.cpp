#include "grassfault/dataset_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grassfault/errors.hpp"

namespace grassfault {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& text, int lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw DataError("dataset line " + std::to_string(lineno) + ": bad number '" + text + "'");
    }
}

bool blank(const std::string& line) {
    for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    return true;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path) {
    if (dataset.windows.size() != dataset.labels.size())
        throw ParameterError("save_csv: windows and labels differ in length");
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());

    char buf[64];
    for (std::size_t w = 0; w < dataset.windows.size(); ++w) {
        const MultichannelWindow& window = dataset.windows[w];
        std::snprintf(buf, sizeof buf, "%.9g", window.sample_rate_hz);
        out << to_string(dataset.labels[w]) << ',' << buf << ',' << window.tau() << ','
            << window.features() << '\n';
        for (Eigen::Index i = 0; i < window.tau(); ++i) {
            for (Eigen::Index j = 0; j < window.features(); ++j) {
                std::snprintf(buf, sizeof buf, "%.9g", window.data(i, j));
                if (j) out << ',';
                out << buf;
            }
            out << '\n';
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

LabeledDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset: " + path.string());

    LabeledDataset dataset;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (blank(line)) continue;

        // Window header: label,sample_rate_hz,tau,r
        const auto header = split_csv(line);
        if (header.size() != 4)
            throw DataError("dataset line " + std::to_string(lineno) +
                            ": expected header 'label,sample_rate_hz,tau,r'");
        const auto label = fault_class_from_string(header[0]);
        if (!label)
            throw DataError("dataset line " + std::to_string(lineno) + ": unknown label '" +
                            header[0] + "'");
        const double rate = parse_number(header[1], lineno);
        const long tau = std::lround(parse_number(header[2], lineno));
        const long r = std::lround(parse_number(header[3], lineno));
        if (rate <= 0.0 || tau < 1 || r < 1)
            throw DataError("dataset line " + std::to_string(lineno) + ": bad window header");

        MultichannelWindow window;
        window.sample_rate_hz = rate;
        window.data.resize(tau, r);
        for (long i = 0; i < tau; ++i) {
            if (!std::getline(in, line))
                throw DataError("dataset: truncated window starting near line " +
                                std::to_string(lineno));
            ++lineno;
            strip_cr(line);
            const auto fields = split_csv(line);
            if (static_cast<long>(fields.size()) != r)
                throw DataError("dataset line " + std::to_string(lineno) + ": expected " +
                                std::to_string(r) + " columns, got " +
                                std::to_string(fields.size()));
            for (long j = 0; j < r; ++j) {
                const double v = parse_number(fields[j], lineno);
                if (!std::isfinite(v))
                    throw DataError("dataset line " + std::to_string(lineno) +
                                    ": non-finite value");
                window.data(i, j) = v;
            }
        }
        dataset.windows.push_back(std::move(window));
        dataset.labels.push_back(*label);
    }

    if (dataset.windows.empty()) throw DataError("dataset is empty: " + path.string());
    return dataset;
}

}  // namespace grassfault
