#pragma once

#include <cstdint>

#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

struct MixingEstimate {
    int k = 0;
    double delta_k = 0.0;
    int extension_window = 0;
    int tails_sampled = 0;  // 0 in exhaustive mode
    bool exhaustive = false;
};

/// Estimates the double-sided mixing coefficient delta_k: the worst-case
/// deviation of the k-window posterior of X_0 from the posterior given a
/// longer (k+w)-window. Center windows are enumerated exactly; tails are
/// either sampled from the model (m pairs) or enumerated exhaustively.
/// Sampled tails make the estimate a lower bound on the essential sup.
MixingEstimate mixing_coefficient(const Source& src, const Channel& ch, int k, int w, int m,
                                  uint64_t seed, int threads = 1);

/// Exhaustive-tails variant: all |Z|^w tails on each side, all pairs.
MixingEstimate mixing_coefficient_exhaustive(const Source& src, const Channel& ch, int k, int w,
                                             int threads = 1);

}  // namespace cbd
