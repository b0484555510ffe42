#include "cbd/erasure.hpp"

#include <cmath>
#include <stdexcept>

namespace cbd {

Pmf erasure_posterior_closed_form(double p_s, const std::vector<int>& z, int center) {
    if (center < 0 || center >= static_cast<int>(z.size()))
        throw std::invalid_argument("erasure posterior: center out of range");
    const double q = 1.0 - 2.0 * p_s;

    int t_minus = 1;  // sentinel: none found
    for (int t = center; t >= 0; --t)
        if (z[t] != kErasureSymbol) {
            t_minus = t - center;
            break;
        }
    int t_plus = 0;
    for (int t = center + 1; t < static_cast<int>(z.size()); ++t)
        if (z[t] != kErasureSymbol) {
            t_plus = t - center;
            break;
        }

    std::vector<double> w(2, 1.0);
    for (int x0 = 0; x0 < 2; ++x0) {
        if (t_minus <= 0) {
            int zm = z[center + t_minus];
            double sign = ((x0 + zm) % 2 == 0) ? 1.0 : -1.0;
            w[x0] *= sign * std::pow(q, -t_minus) + 1.0;
        }
        if (t_plus > 0) {
            int zp = z[center + t_plus];
            double sign = ((x0 + zp) % 2 == 0) ? 1.0 : -1.0;
            w[x0] *= sign * std::pow(q, t_plus) + 1.0;
        }
    }
    return Pmf::normalized_from(std::move(w));
}

ErasureClosedForms erasure_closed_forms(double p_s, double p_e, double truncation_tol) {
    if (!(p_s > 0.0 && p_s < 0.5)) throw std::invalid_argument("erasure: p_s out of (0, 1/2)");
    if (!(p_e >= 0.0 && p_e < 1.0)) throw std::invalid_argument("erasure: p_e out of [0, 1)");
    const double q = 1.0 - 2.0 * p_s;

    ErasureClosedForms out;
    out.bayes_loss = p_e * p_s / (1.0 - p_e * p_e * q);

    if (p_e == 0.0) {
        out.denoiser_loss = 0.0;
        return out;
    }

    const double prefactor = 0.5 * (1.0 - p_e) * (1.0 - p_e);
    double sum = 0.0;
    int terms = 0;
    // Sum over diagonals m = s + t; each term is bounded by p_e^m, so the
    // remaining tail after diagonal M is at most sum_{m>M} (m+1) p_e^m.
    for (int m = 0;; ++m) {
        double pem = std::pow(p_e, m);
        for (int s = 0; s <= m; ++s) {
            int t = m - s;
            double num = (1.0 - std::pow(q, 2.0 * (t + 1))) * (1.0 - std::pow(q, 2.0 * s));
            double den = 1.0 - std::pow(q, 2.0 * (t + 1) + 2.0 * s);
            sum += pem * num / den;
            ++terms;
        }
        // Exact geometric tail: sum_{m>M} (m+1) p_e^m.
        double tail = pem * p_e * ((m + 2.0) - (m + 1.0) * p_e) / ((1.0 - p_e) * (1.0 - p_e));
        if (prefactor * tail < truncation_tol) break;
        if (m > 100000) throw std::runtime_error("erasure sum failed to truncate");
    }
    out.denoiser_loss = prefactor * sum;
    out.terms_used = terms;
    return out;
}

}  // namespace cbd
