#include "config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "cshrink/errors.hpp"

namespace cshrink::cli {

ExchangeableFitOptions RunConfig::betabin_options() const {
    ExchangeableFitOptions o;
    o.log_K_cap = log_K_cap;
    o.f_tolerance = f_tolerance;
    o.max_evaluations = max_evaluations;
    o.seed = seed;
    return o;
}

NormalFitOptions RunConfig::normal_options() const {
    NormalFitOptions o;
    o.max_evaluations = max_evaluations;
    o.seed = seed;
    return o;
}

void RunConfig::validate() const {
    if (min_ab < 1) throw ConfigurationError("min-ab must be at least 1");
    if (min_bfp < 1) throw ConfigurationError("min-bfp must be at least 1");
    if (!(f_tolerance > 0.0)) throw ConfigurationError("f-tolerance must be positive");
    if (!(log_K_cap > 0.0)) throw ConfigurationError("log-k-cap must be positive");
    if (max_evaluations < 1) throw ConfigurationError("max-evaluations must be positive");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigurationError("unknown output format \"" + s + "\"");
}

const char* extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError("config file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigurationError("config file " + path.string() + " is not an object");

    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "batting") c.batting_path = value.get<std::string>();
            else if (key == "pitching") c.pitching_path = value.get<std::string>();
            else if (key == "min-ab") c.min_ab = value.get<Count>();
            else if (key == "min-bfp") c.min_bfp = value.get<Count>();
            else if (key == "log-k-cap") c.log_K_cap = value.get<double>();
            else if (key == "f-tolerance") c.f_tolerance = value.get<double>();
            else if (key == "max-evaluations") c.max_evaluations = value.get<int>();
            else if (key == "out") c.out_dir = value.get<std::string>();
            else if (key == "format") c.format = parse_format(value.get<std::string>());
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else throw ConfigurationError("config file " + path.string() + ": unknown key \"" + key + "\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError("config file " + path.string() + ": " + e.what());
    }
    return c;
}

RunConfig config_from_environment() {
    const char* path = std::getenv(kConfigEnvVar);
    if (path == nullptr || *path == '\0') return {};
    return load_config_file(path);
}

}  // namespace cshrink::cli
