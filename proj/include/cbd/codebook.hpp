#pragma once

#include <cstdint>
#include <vector>

#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

struct Codebook {
    std::vector<std::vector<int>> words;  // reproduction sequences, length n
    int n = 0;
    double rate_nats = 0.0;  // ln(|words|) / n
    uint64_t generator_seed = 0;
};

struct EncodingResult {
    int index = -1;
    std::vector<int> y;
    double distortion = 0.0;  // (1/n) sum rho(z_i, y_i), nats
};

/// Random codebook: ceil(exp(n * rate)) codewords drawn i.i.d. as sample
/// paths of the source law (the rate-distortion achieving output
/// marginal at the matched level). Budget: at most 2^22 words.
Codebook random_codebook(const Source& src, int n, double rate_nats, uint64_t seed);

/// Minimum-distortion encoding; ties broken to the lowest codeword index.
/// Errors if every codeword has infinite distortion against z.
EncodingResult encode(const Codebook& cb, const DistortionMatrix& dist,
                      const std::vector<int>& z);

/// Encodes a long observation sequence block by block (length cb.n each;
/// the tail block, if shorter, is encoded against word prefixes).
std::vector<int> encode_blocks(const Codebook& cb, const DistortionMatrix& dist,
                               const std::vector<int>& z);

struct SmallCode {
    Codebook cb;
    std::vector<int> encoder;      // index over all |Z|^n observation sequences
    double expected_distortion = 0.0;  // under the exact law of Z^n
};

/// Deterministic small code fitted by alternating minimization under the
/// exact law of Z^n (assign to nearest word, refit words coordinate-wise),
/// best of `restarts` random restarts. Budget: |Z|^n <= 2^16.
SmallCode optimal_small_code(const Source& src, const Channel& ch, int n, int num_words,
                             const DistortionMatrix& dist, uint64_t seed = 1,
                             int restarts = 32);

/// The ideal limit object: an exact posterior sample X^n ~ P(X^n|Z^n).
SamplePath posterior_sampling_denoiser(const Source& src, const Channel& ch,
                                       const std::vector<int>& z, uint64_t seed);

struct GoodnessReport {
    double mean_distortion = 0.0;  // Monte Carlo E[rho_n], nats
    double std_err = 0.0;
    double target_d = 0.0;         // matched level H(Z|X), nats
    double rate_nats = 0.0;
    int trials = 0;
};

/// Monte Carlo check of the good-code definition: mean block distortion
/// against the matched level.
GoodnessReport goodness_report(const Codebook& cb, const DistortionMatrix& dist,
                               const Source& src, const Channel& ch, int trials, uint64_t seed,
                               int threads = 1);

}  // namespace cbd
