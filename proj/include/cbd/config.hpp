#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cbd {

/// Flat `section.key = value` experiment configuration. Unknown keys are
/// rejected; every field has a documented default so a minimal file is
/// enough to run.
struct ExperimentConfig {
    // source
    std::string source_type = "markov";  // markov | iid
    double source_p_s = 0.1;             // switching probability, (0, 1/2)

    // channel
    std::string channel_type = "bsc";  // bsc | bec
    double channel_p = 0.1;            // crossover, [0,1] / erasure prob, [0,1)

    // loss
    std::string loss_type = "hamming";  // hamming | mse

    // run
    int n = 4096;
    int k = 1;
    double rate_slack_bits = 0.1;
    int trials = 100;
    uint64_t seed = 1;
    int threads = 1;

    // output
    std::string output_path;

    // check thresholds
    double check_rd_tol_bits_k1 = 1e-4;
    double check_rd_tol_bits_k2 = 1e-3;
    double check_achiever_tv = 1e-4;
    int check_mixing_kmax = 8;
    double check_mixing_r2 = 0.9;
};

/// Parses a config file; throws ConfigError with a line number on
/// malformed input, unknown keys, or out-of-range values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Canonical form: every key, section-sorted, one per line. Parsing the
/// output reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& cfg);

void validate_config(const ExperimentConfig& cfg);

}  // namespace cbd
