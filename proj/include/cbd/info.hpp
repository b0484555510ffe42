#pragma once

#include "cbd/pmf.hpp"

namespace cbd {

constexpr double kLn2 = 0.6931471805599453;

inline double nats_to_bits(double x) { return x / kLn2; }
inline double bits_to_nats(double x) { return x * kLn2; }

/// Shannon entropy in nats, with 0 ln 0 = 0.
double entropy(const Pmf& p);
double entropy(const std::vector<double>& p);

/// Entropy of a two-coordinate joint, in nats.
double joint_entropy(const JointPmf& j);

/// I(A;B) = H(A) + H(B) - H(A,B) for a two-coordinate joint, in nats.
double mutual_information(const JointPmf& j);

/// Total variation distance, in [0,1].
double tv_distance(const Pmf& p, const Pmf& q);
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

/// KL divergence D(p||q) in nats; +infinity on support violation.
double kl_divergence(const Pmf& p, const Pmf& q);

}  // namespace cbd
