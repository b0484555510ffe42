#pragma once

namespace cbd {

/// Closed forms for the scalar Gaussian source observed through an AWGN
/// channel at SNR gamma: Z = sqrt(gamma) X + N with X, N standard normal,
/// MSE loss. No simulation; all values are analytic.
struct GaussianExampleReport {
    double gamma = 0.0;
    double compress_rate_bits = 0.0;     // (1/2) log2(1 + gamma)
    double compress_loss = 0.0;          // 2 / (1 + gamma)
    double indirect_rate_at_l_bits = 0.0;  // rate at L = compress_loss: ((1/2) log2 gamma)_+
    double indirect_loss_at_r = 0.0;     // loss at R = compress rate: (1+2 gamma)/(1+gamma)^2
    double rdp_rate_bits = 0.0;          // perfect-perception point = compress point
    double rdp_loss = 0.0;
};

GaussianExampleReport gaussian_example(double gamma);

}  // namespace cbd
