#include "cbd/blahut_arimoto.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_feasible(const Pmf& p, const Mat& dist) {
    if (p.size() != dist.rows)
        throw std::invalid_argument("blahut_arimoto: source law / distortion size mismatch");
    for (int z = 0; z < dist.rows; ++z) {
        if (p[z] == 0.0) continue;
        bool finite = false;
        for (int y = 0; y < dist.cols; ++y)
            if (std::isfinite(dist(z, y))) {
                finite = true;
                break;
            }
        if (!finite)
            throw std::invalid_argument(
                "blahut_arimoto: source symbol with no finite-distortion reproduction");
    }
}

}  // namespace

double max_useful_distortion(const Pmf& source_law, const Mat& dist) {
    double best = kInf;
    for (int y = 0; y < dist.cols; ++y) {
        double d = 0.0;
        for (int z = 0; z < dist.rows; ++z) {
            if (source_law[z] == 0.0) continue;
            if (!std::isfinite(dist(z, y))) {
                d = kInf;
                break;
            }
            d += source_law[z] * dist(z, y);
        }
        best = std::min(best, d);
    }
    return best;
}

RdPoint blahut_arimoto(const Pmf& source_law, const Mat& dist, double beta,
                       const BaOptions& opts) {
    if (beta < 0.0) throw std::invalid_argument("blahut_arimoto: beta must be >= 0");
    check_feasible(source_law, dist);
    const int nz = dist.rows, ny = dist.cols;
    const Pmf& p = source_law;

    // exp(-beta * rho); exactly 0 at infinite cells.
    Mat e(nz, ny);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            e(z, y) = std::isfinite(dist(z, y)) ? std::exp(-beta * dist(z, y)) : 0.0;

    std::vector<double> q(ny, 1.0 / ny);
    Mat w(nz, ny);
    double prev_rate = kInf;
    RdPoint pt;
    pt.beta = beta;

    for (int it = 0; it < opts.max_iterations; ++it) {
        // w(y|z) proportional to q(y) exp(-beta rho(z,y))
        for (int z = 0; z < nz; ++z) {
            double s = 0.0;
            for (int y = 0; y < ny; ++y) {
                w(z, y) = q[y] * e(z, y);
                s += w(z, y);
            }
            if (s <= 0.0) {
                if (p[z] > 0.0)
                    throw std::runtime_error("blahut_arimoto: normalizer vanished");
                for (int y = 0; y < ny; ++y) w(z, y) = 1.0 / ny;
                continue;
            }
            for (int y = 0; y < ny; ++y) w(z, y) /= s;
        }
        // q(y) = sum_z p(z) w(y|z)
        std::vector<double> nq(ny, 0.0);
        for (int z = 0; z < nz; ++z)
            for (int y = 0; y < ny; ++y) nq[y] += p[z] * w(z, y);
        q = std::move(nq);

        double rate = 0.0;
        for (int z = 0; z < nz; ++z) {
            if (p[z] == 0.0) continue;
            for (int y = 0; y < ny; ++y)
                if (w(z, y) > 0.0 && q[y] > 0.0)
                    rate += p[z] * w(z, y) * std::log(w(z, y) / q[y]);
        }
        pt.iterations = it + 1;
        if (std::abs(rate - prev_rate) < opts.rate_tol) {
            pt.converged = true;
            pt.rate = rate;
            break;
        }
        prev_rate = rate;
        pt.rate = rate;
    }

    pt.conditional = w;
    double d = 0.0;
    for (int z = 0; z < nz; ++z) {
        if (p[z] == 0.0) continue;
        for (int y = 0; y < ny; ++y)
            if (w(z, y) > 0.0) d += p[z] * w(z, y) * dist(z, y);
    }
    pt.distortion = d;
    if (pt.rate < 0.0) pt.rate = 0.0;
    return pt;
}

RdPoint solve_at_distortion(const Pmf& source_law, const Mat& dist, double target,
                            const BaOptions& opts) {
    check_feasible(source_law, dist);
    double d_max = max_useful_distortion(source_law, dist);
    if (target >= d_max) {
        // Zero-rate endpoint: constant output at the best single reproduction.
        RdPoint pt = blahut_arimoto(source_law, dist, 0.0, opts);
        pt.rate = 0.0;
        int best_y = 0;
        double best = kInf;
        for (int y = 0; y < dist.cols; ++y) {
            double d = 0.0;
            for (int z = 0; z < dist.rows; ++z) {
                if (source_law[z] == 0.0) continue;
                if (!std::isfinite(dist(z, y))) { d = kInf; break; }
                d += source_law[z] * dist(z, y);
            }
            if (d < best) { best = d; best_y = y; }
        }
        Mat w(dist.rows, dist.cols, 0.0);
        for (int z = 0; z < dist.rows; ++z) w(z, best_y) = 1.0;
        pt.conditional = w;
        pt.distortion = best;
        pt.beta = 0.0;
        pt.converged = true;
        return pt;
    }

    double lo = 0.0, hi = 1.0;
    RdPoint at_hi = blahut_arimoto(source_law, dist, hi, opts);
    int guard = 0;
    while (at_hi.distortion > target) {
        double prev_d = at_hi.distortion;
        hi *= 2.0;
        if (++guard > 60) throw std::runtime_error("solve_at_distortion: target unreachable");
        at_hi = blahut_arimoto(source_law, dist, hi, opts);
        // Distortion has hit its floor (up to round-off): the curve cannot
        // be driven below this, so the floor point is the answer.
        if (std::abs(at_hi.distortion - prev_d) <= 1e-12 * std::max(1.0, std::abs(target)))
            return at_hi;
    }
    RdPoint best = at_hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        RdPoint pt = blahut_arimoto(source_law, dist, mid, opts);
        if (std::abs(pt.distortion - target) < std::abs(best.distortion - target)) best = pt;
        if (pt.distortion > target)
            lo = mid;
        else
            hi = mid;
        if (std::abs(pt.distortion - target) < 1e-12 * std::max(1.0, std::abs(target))) break;
    }
    return best;
}

JointPmf rd_joint(const Pmf& source_law, const RdPoint& pt) {
    const Mat& w = pt.conditional;
    std::vector<double> j(static_cast<size_t>(w.rows) * w.cols);
    for (int z = 0; z < w.rows; ++z)
        for (int y = 0; y < w.cols; ++y)
            j[static_cast<size_t>(z) * w.cols + y] = source_law[z] * w(z, y);
    return JointPmf({w.rows, w.cols}, std::move(j));
}

}  // namespace cbd
