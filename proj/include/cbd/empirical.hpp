#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

/// Order-k windowed joint histogram of (x_0, z-window, y-window). The
/// window indices pack 2k+1 symbols slow-to-fast, leftmost first. Counts
/// sum to n - 2k for a single path; expectation variants hold
/// probabilities summing to 1.
struct EmpiricalJoint {
    int k = 0;
    int nx = 0, nz = 0, ny = 0;
    std::vector<double> counts;  // ((x0 * nzw + zw) * nyw + yw)
    double total = 0.0;

    EmpiricalJoint(int k, int nx, int nz, int ny);

    int window_len() const { return 2 * k + 1; }
    size_t zw_count() const;
    size_t yw_count() const;
    double& at(int x0, size_t zw, size_t yw);
    double at(int x0, size_t zw, size_t yw) const;
};

/// Packs a symbol window into a single index, leftmost most significant.
size_t pack_window(const std::vector<int>& s, size_t begin, int len, int base);
std::vector<int> unpack_window(size_t idx, int len, int base);

EmpiricalJoint empirical_joint(const std::vector<int>& x, const std::vector<int>& z,
                               const std::vector<int>& y, int k, int nx, int nz, int ny);

/// Deterministic block code mapping z^n to y^n.
using BlockCode = std::function<std::vector<int>(const std::vector<int>&)>;

/// Q^(n): expectation of the windowed histogram under the model and a
/// deterministic code. Exact mode enumerates all (x^n, z^n) pairs with
/// their probabilities; budget |X|^n * |Z|^n <= 2^24.
EmpiricalJoint expected_empirical_exact(const Source& src, const Channel& ch,
                                        const BlockCode& code, int n, int k);

/// Monte Carlo mode; the code may be randomized per trial via the seed
/// argument it receives through `code` capture.
EmpiricalJoint expected_empirical_mc(const Source& src, const Channel& ch, const BlockCode& code,
                                     int n, int k, int trials, uint64_t seed);

/// Deviation of Q_{X_0 | z-window, y-window} from the code-free posterior
/// P_{X_0 | z-window}, over all (z, y) windows with positive mass.
struct MarkovViolationReport {
    double max_tv = 0.0;
    double mass_weighted_tv = 0.0;
    double bound = 0.0;  // |X| * delta_k
};
MarkovViolationReport markov_violation(const EmpiricalJoint& q, const Source& src,
                                       const Channel& ch, double delta_k);

/// TV between the (z-window, y-window) marginal of Q^(n) and the exact
/// stationary joint P(z-window, x-window). Requires ny == nx.
double convergence_gap(const EmpiricalJoint& q, const Source& src, const Channel& ch);

}  // namespace cbd
