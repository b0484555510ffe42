#pragma once

#include <vector>

#include "cbd/blahut_arimoto.hpp"
#include "cbd/channel.hpp"

namespace cbd {

struct IndirectDistortion {
    Mat d;  // d(z, y) = E[Lambda(X, y) | Z = z]
    std::vector<bool> z_defined;  // false for zero-probability observations
};

/// Witsenhausen reduction of indirect rate distortion to direct rate
/// distortion: d(z,y) = sum_x P(x|z) Lambda(x,y).
IndirectDistortion witsenhausen_reduce(const Channel& ch, const Pmf& prior, const Mat& loss);

/// Indirect rate-distortion curve R_I(L) over a grid of target losses.
/// Targets below the minimum achievable loss are reported infeasible.
struct IndirectCurvePoint {
    double target_loss = 0.0;
    bool feasible = false;
    RdPoint point;
};
std::vector<IndirectCurvePoint> indirect_rd_curve(const IndirectDistortion& reduced,
                                                  const Pmf& observation_law,
                                                  const std::vector<double>& loss_grid,
                                                  const BaOptions& opts = {});

struct AffinityReport {
    bool affine = false;
    bool identifiable = true;  // false when d has constant rows
    double c1 = 0.0;
    std::vector<double> c2;  // per-z offsets, valid when affine
    double residual = 0.0;
};

/// Tests whether rho(z,y) = c1 d(z,y) + c2(z) holds exactly (within 1e-9)
/// over cells where rho is finite. Infinite rho cells must pair with the
/// corresponding maximal d behavior and are excluded from the fit.
AffinityReport rho_affinity_test(const Mat& rho, const IndirectDistortion& reduced);

struct RdpFormReport {
    bool satisfied = false;
    double beta = 0.0;
    double residual = 0.0;
    bool perception_ok = false;  // candidate pushes observation law to output law
};

/// Tests whether a candidate conditional P(y|z) has the exponential form
/// candidate(y|z)/output_law(y) = exp(-beta d(z,y) + A(y) + B(z)) for some
/// beta > 0, via a least-squares separability fit over supported cells.
/// Candidates that only fit with beta <= 0 count as satisfied exactly when
/// d is itself separable (any positive beta then works).
RdpFormReport rdp_exponential_form_test(const Mat& candidate, const IndirectDistortion& reduced,
                                        const Pmf& observation_law, const Pmf& output_law,
                                        double residual_tol = 1e-9);

}  // namespace cbd
