#pragma once

#include <cstdint>
#include <vector>

#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

/// Per-index smoothed posteriors P(X_i | Z^n = z^n), rows i = 0..n-1.
struct PosteriorMarginals {
    Mat rows;  // rows(i, x)

    Pmf row(int i) const;
    int length() const { return rows.rows; }
};

/// Exact HMM smoothing with per-step normalization and stationary
/// initialization. Rejects observation sequences of zero likelihood.
PosteriorMarginals forward_backward(const Source& src, const Channel& ch,
                                    const std::vector<int>& z);

inline PosteriorMarginals forward_backward(const Source& src, const Channel& ch,
                                           const SamplePath& z) {
    return forward_backward(src, ch, z.symbols);
}

/// Exact draw X^n ~ P(X^n | Z^n = z^n) via forward filtering, backward
/// sampling.
SamplePath posterior_path_sample(const Source& src, const Channel& ch,
                                 const std::vector<int>& z, uint64_t seed);

inline SamplePath posterior_path_sample(const Source& src, const Channel& ch,
                                        const SamplePath& z, uint64_t seed) {
    return posterior_path_sample(src, ch, z.symbols, seed);
}

/// Posterior of the window's center symbol given only z_{-k}^k
/// (window.size() must be odd); stationary boundary initialization.
Pmf windowed_posterior(const Source& src, const Channel& ch, const std::vector<int>& window);

/// P(Z^n = z^n) under the model; 0 is possible for out-of-model sequences.
double observation_likelihood(const Source& src, const Channel& ch, const std::vector<int>& z);

namespace detail {

/// Forward message after consuming observations: f(x) proportional to
/// P(X_last = x, observations), kept normalized; scale tracked separately
/// as log-likelihood. `start` is the prior over the first hidden state.
struct ForwardState {
    std::vector<double> f;
    bool dead = false;  // all observations so far impossible
};

ForwardState forward_init(const Pmf& start, const Channel& ch, int z0);
ForwardState forward_step(const ForwardState& s, const Mat& trans, const Channel& ch, int z);

/// Backward message g(x) proportional to P(future observations | X_cur = x),
/// normalized to max 1.
std::vector<double> backward_init(int nx);
std::vector<double> backward_step(const std::vector<double>& g, const Mat& trans,
                                  const Channel& ch, int z_next);

/// Combines a forward message at index i with a backward message at i.
std::vector<double> combine_posterior(const std::vector<double>& f, const std::vector<double>& g);

}  // namespace detail

}  // namespace cbd
