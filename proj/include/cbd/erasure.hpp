#pragma once

#include <vector>

#include "cbd/pmf.hpp"

namespace cbd {

/// Symbol index used for the erasure output of Channel::bec.
constexpr int kErasureSymbol = 2;

/// Closed-form posterior P(X_center | z) for a binary symmetric source
/// with switching probability p_s observed through an erasure channel.
/// Only the nearest unerased symbol on each side matters; a side with no
/// unerased symbol contributes no factor.
Pmf erasure_posterior_closed_form(double p_s, const std::vector<int>& z, int center);

struct ErasureClosedForms {
    double bayes_loss = 0.0;
    double denoiser_loss = 0.0;
    int terms_used = 0;
};

/// Closed-form Bayes-optimal Hamming loss and the truncated double-sum
/// posterior-pair loss for the binary symmetric source + erasure channel.
ErasureClosedForms erasure_closed_forms(double p_s, double p_e, double truncation_tol = 1e-12);

}  // namespace cbd
