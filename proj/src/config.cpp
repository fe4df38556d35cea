#include "bayescv/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bayescv {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(std::string(what) + " file not found: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(what) + " file " + path + ": " + e.what());
    }
    return doc;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ConfigError(where + ": missing or non-numeric field '" + key + "'");
    }
    return obj[key].get<double>();
}

std::vector<double> require_number_array(const json& obj, const char* key,
                                         const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_array()) {
        throw ConfigError(where + ": missing or non-array field '" + key + "'");
    }
    std::vector<double> out;
    for (const json& v : obj[key]) {
        if (!v.is_number()) {
            throw ConfigError(where + ": field '" + key + "' must hold numbers only");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

ModelParams parse_params(const std::string& kind, const json& params, const std::string& where) {
    if (kind == "simple_categorical") {
        return SimpleCategorical{require_number_array(params, "probs", where)};
    }
    if (kind == "simple_gaussian") {
        return SimpleGaussian{require_number(params, "mean", where),
                              require_number(params, "stddev", where)};
    }
    if (kind == "beta_bernoulli") {
        return BetaBernoulli{require_number(params, "alpha", where),
                             require_number(params, "beta", where)};
    }
    if (kind == "dirichlet_categorical") {
        return DirichletCategorical{require_number_array(params, "alpha", where)};
    }
    if (kind == "normal_known_variance") {
        return NormalKnownVariance{require_number(params, "data_variance", where),
                                   require_number(params, "prior_mean", where),
                                   require_number(params, "prior_variance", where)};
    }
    throw ConfigError(where + ": unknown hypothesis kind '" + kind +
                      "' (expected simple_categorical, simple_gaussian, beta_bernoulli, "
                      "dirichlet_categorical or normal_known_variance)");
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    const json doc = parse_json_file(path, "config");
    if (!doc.is_object() || !doc.contains("hypotheses") || !doc["hypotheses"].is_array()) {
        throw ConfigError("config file " + path + ": expected an object with a 'hypotheses' array");
    }
    ExperimentConfig config;
    int index = 0;
    for (const json& entry : doc["hypotheses"]) {
        const std::string where = "hypothesis #" + std::to_string(index + 1);
        if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string()) {
            throw ConfigError(where + ": needs a string field 'kind'");
        }
        const std::string kind = entry["kind"].get<std::string>();
        const json params = entry.contains("params") ? entry["params"] : json::object();
        Hypothesis h;
        h.params = parse_params(kind, params, where);
        h.name = entry.contains("name") && entry["name"].is_string()
                     ? entry["name"].get<std::string>()
                     : kind + "_" + std::to_string(index + 1);
        validate_params(h.params);
        config.hypotheses.push_back(std::move(h));
        if (entry.contains("prior")) {
            if (!entry["prior"].is_number()) {
                throw ConfigError(where + ": 'prior' must be a number");
            }
            config.priors.push_back(entry["prior"].get<double>());
        } else {
            config.priors.push_back(std::nullopt);
        }
        ++index;
    }
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number()) {
            throw ConfigError("config file: 'tolerance' must be a number");
        }
        config.tolerance = doc["tolerance"].get<double>();
    }
    if (doc.contains("d_max")) {
        if (!doc["d_max"].is_number_integer()) {
            throw ConfigError("config file: 'd_max' must be an integer");
        }
        config.d_max = doc["d_max"].get<int>();
    }
    return config;
}

namespace {

std::vector<double> read_csv_values(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("data file not found: " + path);
    }
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (header && line_no == 1) {
            continue;
        }
        // tolerate CR line endings and surrounding whitespace
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) {
            continue;  // blank line
        }
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);
        char* parsed_end = nullptr;
        const double v = std::strtod(token.c_str(), &parsed_end);
        if (parsed_end != token.c_str() + token.size()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": not a number: '" +
                              token + "'");
        }
        if (!std::isfinite(v)) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": datum must be a finite number");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_json_values(const std::string& path) {
    const json doc = parse_json_file(path, "data");
    if (!doc.is_array()) {
        throw ConfigError("data file " + path + ": expected a flat array of numbers");
    }
    std::vector<double> values;
    int index = 0;
    for (const json& v : doc) {
        ++index;
        if (!v.is_number()) {
            throw ConfigError("data file " + path + ": element #" + std::to_string(index) +
                              " is not a number");
        }
        values.push_back(v.get<double>());
    }
    return values;
}

bool has_json_extension(const std::string& path) {
    if (path.size() < 5) {
        return false;
    }
    std::string tail = path.substr(path.size() - 5);
    for (char& c : tail) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return tail == ".json";
}

}  // namespace

Dataset load_dataset(const std::string& path, DataFormat format, bool csv_header,
                     int max_data) {
    const bool json_format =
        format == DataFormat::Json || (format == DataFormat::Auto && has_json_extension(path));
    std::vector<double> values =
        json_format ? read_json_values(path) : read_csv_values(path, csv_header);
    return make_dataset(std::move(values), max_data);
}

ResolvedRun resolve_run(const RunConfig& run) {
    if (run.config_path.empty()) {
        throw ConfigError("--config is required");
    }
    if (run.data_path.empty()) {
        throw ConfigError("--data is required");
    }
    ExperimentConfig experiment = load_experiment_config(run.config_path);

    ResolvedRun resolved;
    resolved.tolerance = run.tolerance.value_or(experiment.tolerance.value_or(1e-9));
    resolved.d_max = run.d_max.value_or(experiment.d_max.value_or(kDefaultMaxData));
    resolved.threads = run.threads;
    if (!(resolved.tolerance > 0.0)) {
        throw ConfigError("tolerance must be > 0");
    }
    if (resolved.d_max < 1 || resolved.d_max > kHardMaxData) {
        throw ConfigError("d-max must be in [1, " + std::to_string(kHardMaxData) + "]");
    }
    if (resolved.threads < 0) {
        throw ConfigError("threads must be >= 1");
    }
    resolved.hypotheses = std::move(experiment.hypotheses);
    resolved.priors = std::move(experiment.priors);
    resolved.data = load_dataset(run.data_path, run.data_format, run.csv_header, resolved.d_max);
    return resolved;
}

}  // namespace bayescv
