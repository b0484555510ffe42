#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cbd/pmf.hpp"

namespace cbd {

struct SamplePath {
    std::vector<int> symbols;
    uint64_t seed = 0;

    int length() const { return static_cast<int>(symbols.size()); }
    int operator[](int i) const { return symbols[i]; }
};

/// Stationary finite-state Markov chain. Construction verifies the chain
/// is irreducible and aperiodic and solves for the stationary law.
struct MarkovSource {
    Mat transition;   // transition(x, x')
    Pmf stationary;

    explicit MarkovSource(Mat transition_matrix);

    /// Binary symmetric source with switching probability p_s.
    static MarkovSource binary_symmetric(double p_s);

    int alphabet_size() const { return transition.rows; }
};

struct IidSource {
    Pmf law;

    explicit IidSource(Pmf l) : law(std::move(l)) {}
    int alphabet_size() const { return law.size(); }
};

/// Either source kind; operations below accept this.
using Source = std::variant<MarkovSource, IidSource>;

int source_alphabet_size(const Source& src);
const Pmf& source_marginal(const Source& src);
/// Transition matrix: the chain's M, or rows all equal to the law for iid.
Mat source_transition(const Source& src);

/// Unique pi with pi M = pi, by linear solve; rejects non-ergodic chains.
Pmf stationary_distribution(const Mat& transition);

/// Stationary-start sample: X_1 ~ pi, X_{i+1} ~ M(X_i, .). Deterministic
/// given the seed.
SamplePath sample_path(const Source& src, int n, uint64_t seed);

/// Exact block law pi(x_1) prod M(x_i, x_{i+1}) over X^k, coordinates
/// ordered slow-to-fast in time. Budget: |X|^k <= 2^22.
JointPmf block_pmf(const Source& src, int k);

/// M^gap, the conditional law P(X_{s+gap} | X_s).
Mat two_point_marginal(const Mat& transition, int gap);

/// Entropy rate sum_x pi(x) H(M(x, .)), in nats.
double entropy_rate(const Source& src);

}  // namespace cbd
