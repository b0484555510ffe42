#pragma once

#include "cbd/blahut_arimoto.hpp"
#include "cbd/channel.hpp"
#include "cbd/source.hpp"

namespace cbd {

/// Law of Z^k (observations of a k-block through the memoryless channel);
/// index is z-slow-to-fast.
Pmf super_observation_law(const Source& src, const Channel& ch, int k);

/// Per-letter averaged block distortion over super-symbols:
/// rho_k(z^k, y^k) = (1/k) sum_i rho(z_i, y_i).
Mat super_distortion(const Mat& single, int k);

/// Exact joint of (Z^k, X^k) as a (z-index, x-index) pair joint.
JointPmf exact_joint_zx_block(const Source& src, const Channel& ch, int k);

struct MatchedIdentityReport {
    int k = 0;
    double matched_level = 0.0;  // D = H(Z|X), nats
    double lhs_rate = 0.0;       // BA rate at D, nats/symbol
    double rhs_rate = 0.0;       // (1/k) H(Z^k) - H(Z|X), nats/symbol
    double gap = 0.0;            // |lhs - rhs|, nats
    RdPoint point;
};

/// Checks R(Z^k, H(Z|X)) = (1/k) H(Z^k) - H(Z|X) numerically: left side
/// via Blahut-Arimoto on the super-alphabet, right side via exact block
/// entropies.
MatchedIdentityReport matched_level_identity_check(const Source& src, const Channel& ch, int k,
                                                   const BaOptions& opts = {});

struct AchieverReport {
    int k = 0;
    RankClass rank = RankClass::deficient;
    bool checked = false;   // false when the rank hypothesis fails
    double tv_gap = 0.0;    // TV(BA joint, exact P_{Z^k, X^k})
};

/// Checks that the Blahut-Arimoto optimum at the matched level coincides
/// with the exact joint P_{Z^k, X^k}; skipped for rank-deficient channels.
AchieverReport achiever_is_posterior_check(const Source& src, const Channel& ch, int k,
                                           const BaOptions& opts = {});

}  // namespace cbd
