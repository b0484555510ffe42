#pragma once

#include <optional>

#include "cbd/pmf.hpp"

namespace cbd {

enum class RankClass { invertible, full_row_rank, deficient };

/// Row-stochastic |X| x |Z| matrix of conditional probabilities P(z|x).
struct Channel {
    Mat m;  // m(x, z)

    Channel() = default;
    explicit Channel(Mat matrix);

    int input_size() const { return m.rows; }
    int output_size() const { return m.cols; }
    double prob(int x, int z) const { return m(x, z); }
    Pmf row(int x) const;

    static Channel bsc(double p);
    /// Binary erasure channel: outputs {0, 1, erasure=2}.
    static Channel bec(double p_e);
    static Channel identity(int n);
};

/// |Z| x |Y| extended-real distortion table in nats; +infinity exactly at
/// zero-probability transitions.
struct DistortionMatrix {
    Mat values;  // values(z, y)
    std::optional<double> level;  // matched level D = H(Z|X), when known
};

/// H(Z|X) = sum_x prior(x) H(P(.|x)), in nats.
double conditional_entropy(const Channel& ch, const Pmf& prior);

/// Matched distortion rho(z,y) = -ln P(z|y) with the reproduction alphabet
/// identified with the channel input alphabet. When a prior is given the
/// matched level H(Z|X) is recorded as well.
DistortionMatrix matched_distortion(const Channel& ch);
DistortionMatrix matched_distortion(const Channel& ch, const Pmf& prior);

/// Joint law of (Z, X) = P(z,x) table under prior on X; coordinate order (z, x).
JointPmf channel_joint_zx(const Channel& ch, const Pmf& prior);

/// Output marginal P_Z under a prior on X.
Pmf channel_output(const Channel& ch, const Pmf& prior);

/// Rank classification with tolerance 1e-10 relative to the largest
/// singular value.
RankClass channel_rank_class(const Channel& ch);

/// Passes a symbol sequence through the memoryless channel; deterministic
/// given the seed.
std::vector<int> apply_channel(const Channel& ch, const std::vector<int>& x, uint64_t seed);

const char* to_string(RankClass rc);

}  // namespace cbd
