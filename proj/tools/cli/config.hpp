#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cshrink/betabin.hpp"
#include "cshrink/normalmodel.hpp"
#include "cshrink/pipeline.hpp"

namespace cshrink::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string batting_path;
    std::string pitching_path;
    Count min_ab = 100;
    Count min_bfp = 300;
    double log_K_cap = 15.0;
    double f_tolerance = 1e-8;
    int max_evaluations = 5000;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 0;

    Eligibility eligibility() const { return {min_ab, min_bfp}; }
    ExchangeableFitOptions betabin_options() const;
    NormalFitOptions normal_options() const;

    // Throws ConfigurationError unless thresholds >= 1 and tolerances > 0.
    void validate() const;
};

inline constexpr const char* kConfigEnvVar = "COMPONENT_SHRINK_CONFIG";

// JSON object whose keys mirror the long flag names: batting, pitching,
// min-ab, min-bfp, log-k-cap, f-tolerance, max-evaluations, out, format, seed.
// Unknown keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path);

// Defaults, overlaid with the file named by COMPONENT_SHRINK_CONFIG if set.
RunConfig config_from_environment();

OutputFormat parse_format(const std::string& s);
const char* extension(OutputFormat f);

}  // namespace cshrink::cli
