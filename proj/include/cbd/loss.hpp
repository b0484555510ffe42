#pragma once

#include <cstdint>
#include <vector>

#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

/// Bounded per-symbol loss Lambda(x, y) in [0, lambda_max].
struct LossSpec {
    Mat table;  // table(x, y)
    double lambda_max = 0.0;

    explicit LossSpec(Mat t);
    static LossSpec hamming(int n);
    /// Squared error over a real embedding of the alphabet (default: the
    /// symbol index).
    static LossSpec mse(const std::vector<double>& embedding);
};

/// Average per-symbol loss (1/n) sum Lambda(x_i, y_i).
double block_loss(const std::vector<int>& x, const std::vector<int>& y, const LossSpec& loss);

/// Per-index argmin_y of posterior-expected loss; ties to the lowest index.
std::vector<int> bayes_denoiser(const Source& src, const Channel& ch, const std::vector<int>& z,
                                const LossSpec& loss);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    int trials = 0;
};

/// The three posterior functionals of the theory, estimated in one Monte
/// Carlo pass over observation realizations: the Bayes envelope
/// E[min_y E_post Lambda], the posterior-pair loss E[E_{U,V~post^2}
/// Lambda(U,V)], and the worst-case-coupling upper bound. Posteriors are
/// exact forward-backward smoothing on paths of length `path_len`;
/// indices within `margin` of either end are excluded so that each kept
/// window is effectively two-sided.
struct PosteriorLossReport {
    MonteCarloEstimate bayes;
    MonteCarloEstimate pair;
    MonteCarloEstimate upper;
};
PosteriorLossReport posterior_losses(const Source& src, const Channel& ch, const LossSpec& loss,
                                     int trials, int path_len, int margin, uint64_t seed,
                                     int threads = 1);

/// E over Z of the expected loss of two independent posterior draws
/// (the exact performance of the compression-based denoiser).
MonteCarloEstimate theoretical_pair_loss(const Source& src, const Channel& ch,
                                         const LossSpec& loss, int trials, int path_len,
                                         int margin, uint64_t seed, int threads = 1);

/// E over Z of the worst-case-coupling expected loss (the prior bound);
/// the per-realization sup is an exact small transportation LP.
MonteCarloEstimate coupling_upper_bound(const Source& src, const Channel& ch,
                                        const LossSpec& loss, int trials, int path_len,
                                        int margin, uint64_t seed, int threads = 1);

/// Exact maximum of E[Lambda(U,V)] over couplings of (p, q); solved as a
/// max-cost transportation problem by successive shortest paths.
double max_coupling_loss(const std::vector<double>& p, const std::vector<double>& q,
                         const Mat& lambda);

/// Hamming helpers on posterior weights alpha = P(X_0 = 1 | .).
inline double hamming_pair_loss(double alpha) { return 2.0 * alpha * (1.0 - alpha); }
inline double hamming_bayes_envelope(double alpha) { return alpha < 0.5 ? alpha : 1.0 - alpha; }

}  // namespace cbd
