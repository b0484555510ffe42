#pragma once

#include "cbd/channel.hpp"
#include "cbd/pmf.hpp"

namespace cbd {

struct RdPoint {
    double rate = 0.0;        // nats per (super-)symbol
    double distortion = 0.0;  // same units as the distortion matrix
    Mat conditional;          // conditional(z, y), rows are pmfs
    double beta = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct BaOptions {
    double rate_tol = 1e-12;   // stop when successive rates differ less
    int max_iterations = 100000;
};

/// Blahut-Arimoto alternating minimization at fixed Lagrange multiplier
/// beta. +infinity distortion cells receive exactly zero conditional
/// mass; every source symbol must have at least one finite-distortion
/// reproduction.
RdPoint blahut_arimoto(const Pmf& source_law, const Mat& dist, double beta,
                       const BaOptions& opts = {});

/// Rate at a target expected distortion, via bisection on beta.
RdPoint solve_at_distortion(const Pmf& source_law, const Mat& dist, double target,
                            const BaOptions& opts = {});

/// Joint law p(z) * conditional(z, y) as a (z, y) pair joint.
JointPmf rd_joint(const Pmf& source_law, const RdPoint& pt);

/// Largest useful distortion: min over y of E_z rho(z, y).
double max_useful_distortion(const Pmf& source_law, const Mat& dist);

}  // namespace cbd
