#include "grassfault/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "grassfault/errors.hpp"

namespace grassfault {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("config key '" + key + "': not a number: '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("config key '" + key + "': not an integer: '" + value + "'");
    }
}

// Keys any subcommand may place in a shared config file.
const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "d",   "l",    "beta",   "c",        "k",       "seed",
        "tol", "grid", "tau",    "snr_db",   "per_case"};
    return keys;
}

}  // namespace

void PipelineConfig::validate(int feature_count) const {
    if (d < 1) throw ParameterError("d must be >= 1");
    if (feature_count > 0 && d > feature_count)
        throw ParameterError("d must not exceed the feature count (" +
                             std::to_string(feature_count) + ")");
    if (l < 1) throw ParameterError("l must be >= 1");
    if (!(beta > 0.0)) throw ParameterError("beta must be positive");
    if (!(C > 0.0)) throw ParameterError("C must be positive");
    if (k < 2) throw ParameterError("k must be >= 2");
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(lineno) +
                                 ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!known_keys().count(key))
            throw ParameterError("config line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

void apply_pipeline_keys(const std::map<std::string, std::string>& kv, PipelineConfig& cfg) {
    if (auto it = kv.find("d"); it != kv.end()) cfg.d = static_cast<int>(parse_int("d", it->second));
    if (auto it = kv.find("l"); it != kv.end()) cfg.l = static_cast<int>(parse_int("l", it->second));
    if (auto it = kv.find("beta"); it != kv.end()) cfg.beta = parse_double("beta", it->second);
    if (auto it = kv.find("c"); it != kv.end()) cfg.C = parse_double("c", it->second);
    if (auto it = kv.find("k"); it != kv.end()) cfg.k = static_cast<int>(parse_int("k", it->second));
    if (auto it = kv.find("seed"); it != kv.end())
        cfg.seed = static_cast<std::uint64_t>(parse_int("seed", it->second));
    if (auto it = kv.find("tol"); it != kv.end()) cfg.tol = parse_double("tol", it->second);
}

}  // namespace grassfault
