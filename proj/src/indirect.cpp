#include "cbd/indirect.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbd/info.hpp"

namespace cbd {

IndirectDistortion witsenhausen_reduce(const Channel& ch, const Pmf& prior, const Mat& loss) {
    if (loss.rows != ch.input_size())
        throw std::invalid_argument("witsenhausen_reduce: loss rows must match |X|");
    const int nz = ch.output_size(), nx = ch.input_size(), ny = loss.cols;
    Pmf pz = channel_output(ch, prior);
    IndirectDistortion out;
    out.d = Mat(nz, ny);
    out.z_defined.assign(nz, true);
    for (int z = 0; z < nz; ++z) {
        if (pz[z] == 0.0) {
            out.z_defined[z] = false;
            continue;
        }
        for (int y = 0; y < ny; ++y) {
            double acc = 0.0;
            for (int x = 0; x < nx; ++x)
                acc += prior[x] * ch.prob(x, z) / pz[z] * loss(x, y);
            out.d(z, y) = acc;
        }
    }
    return out;
}

std::vector<IndirectCurvePoint> indirect_rd_curve(const IndirectDistortion& reduced,
                                                  const Pmf& observation_law,
                                                  const std::vector<double>& loss_grid,
                                                  const BaOptions& opts) {
    // Minimum achievable loss: per observation, best reproduction.
    double l_min = 0.0;
    for (int z = 0; z < reduced.d.rows; ++z) {
        if (observation_law[z] == 0.0) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int y = 0; y < reduced.d.cols; ++y) best = std::min(best, reduced.d(z, y));
        l_min += observation_law[z] * best;
    }
    std::vector<IndirectCurvePoint> curve;
    curve.reserve(loss_grid.size());
    for (double L : loss_grid) {
        IndirectCurvePoint cp;
        cp.target_loss = L;
        if (L < l_min - 1e-12) {
            cp.feasible = false;
        } else {
            cp.feasible = true;
            cp.point = solve_at_distortion(observation_law, reduced.d, L, opts);
        }
        curve.push_back(std::move(cp));
    }
    return curve;
}

AffinityReport rho_affinity_test(const Mat& rho, const IndirectDistortion& reduced) {
    if (rho.rows != reduced.d.rows || rho.cols != reduced.d.cols)
        throw std::invalid_argument("rho_affinity_test: shape mismatch");
    const int nz = rho.rows, ny = rho.cols;
    const double tol = 1e-9;
    AffinityReport rep;

    // c1 from column differences: rho(z,y)-rho(z,y') = c1 (d(z,y)-d(z,y')).
    bool have_c1 = false;
    double c1 = 0.0;
    for (int z = 0; z < nz && !have_c1; ++z) {
        if (!reduced.z_defined[z]) continue;
        for (int y = 0; y < ny && !have_c1; ++y)
            for (int yp = y + 1; yp < ny; ++yp) {
                if (!std::isfinite(rho(z, y)) || !std::isfinite(rho(z, yp))) continue;
                double dd = reduced.d(z, y) - reduced.d(z, yp);
                double dr = rho(z, y) - rho(z, yp);
                if (std::abs(dd) > tol) {
                    c1 = dr / dd;
                    have_c1 = true;
                    break;
                }
                if (std::abs(dr) > tol) {
                    // rho differs where d does not: no affine relation.
                    rep.affine = false;
                    rep.residual = std::abs(dr);
                    return rep;
                }
            }
    }
    if (!have_c1) {
        rep.identifiable = false;
        rep.affine = false;
        return rep;
    }
    rep.c1 = c1;

    // Consistency over every defined row, and c2(z) extraction.
    rep.c2.assign(nz, 0.0);
    double worst = 0.0;
    for (int z = 0; z < nz; ++z) {
        if (!reduced.z_defined[z]) continue;
        bool have_offset = false;
        double off = 0.0;
        for (int y = 0; y < ny; ++y) {
            if (!std::isfinite(rho(z, y))) continue;
            double o = rho(z, y) - c1 * reduced.d(z, y);
            if (!have_offset) {
                off = o;
                have_offset = true;
            } else {
                worst = std::max(worst, std::abs(o - off));
            }
        }
        rep.c2[z] = off;
    }
    rep.residual = worst;
    rep.affine = worst <= tol;
    return rep;
}

RdpFormReport rdp_exponential_form_test(const Mat& candidate, const IndirectDistortion& reduced,
                                        const Pmf& observation_law, const Pmf& output_law,
                                        double residual_tol) {
    const int nz = candidate.rows, ny = candidate.cols;
    if (reduced.d.rows != nz || reduced.d.cols != ny)
        throw std::invalid_argument("rdp test: shape mismatch");
    if (observation_law.size() != nz || output_law.size() != ny)
        throw std::invalid_argument("rdp test: law size mismatch");
    RdpFormReport rep;

    // Perception constraint: candidate composed with P_Z equals output law.
    std::vector<double> pushed(ny, 0.0);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y) pushed[y] += observation_law[z] * candidate(z, y);
    double perr = 0.0;
    for (int y = 0; y < ny; ++y) perr = std::max(perr, std::abs(pushed[y] - output_law[y]));
    rep.perception_ok = perr <= 1e-9;
    if (!rep.perception_ok)
        throw std::invalid_argument("rdp test: candidate violates the perception marginal");

    // Supported cells and separability failures.
    struct Cell { int z, y; double m0, d; };
    std::vector<Cell> cells;
    for (int z = 0; z < nz; ++z) {
        if (observation_law[z] == 0.0) continue;
        for (int y = 0; y < ny; ++y) {
            if (output_law[y] == 0.0) continue;
            if (candidate(z, y) <= 0.0) {
                if (std::isinf(reduced.d(z, y))) continue;  // matched by infinite distortion
                rep.satisfied = false;
                rep.residual = std::numeric_limits<double>::infinity();
                return rep;
            }
            cells.push_back({z, y, std::log(candidate(z, y) / output_law[y]), reduced.d(z, y)});
        }
    }

    // Least-squares fit of m0 = -beta d + A(y) + B(z) over supported cells;
    // gauge fixed by A(first y) = 0.
    const int unknowns = 1 + (ny - 1) + nz;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<int>(cells.size()), unknowns);
    Eigen::VectorXd b(static_cast<int>(cells.size()));
    for (size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        a(static_cast<int>(i), 0) = -c.d;
        if (c.y > 0) a(static_cast<int>(i), c.y) = 1.0;  // A(y), y = 1..ny-1
        a(static_cast<int>(i), ny + c.z) = 1.0;          // B(z)
        b(static_cast<int>(i)) = c.m0;
    }
    Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
    Eigen::VectorXd res = a * sol - b;
    rep.beta = sol(0);
    rep.residual = res.cwiseAbs().maxCoeff();
    rep.satisfied = rep.residual <= residual_tol;

    // The form requires a strictly positive multiplier. A fit with beta <= 0
    // still admits some beta > 0 exactly when d itself is separable (the
    // beta d term is then absorbable into A + B).
    if (rep.satisfied && rep.beta <= residual_tol) {
        Eigen::MatrixXd as = Eigen::MatrixXd::Zero(static_cast<int>(cells.size()), unknowns - 1);
        Eigen::VectorXd bs(static_cast<int>(cells.size()));
        for (size_t i = 0; i < cells.size(); ++i) {
            const auto& c = cells[i];
            if (c.y > 0) as(static_cast<int>(i), c.y - 1) = 1.0;
            as(static_cast<int>(i), ny - 1 + c.z) = 1.0;
            bs(static_cast<int>(i)) = c.d;
        }
        Eigen::VectorXd ssol = as.colPivHouseholderQr().solve(bs);
        double sres = (as * ssol - bs).cwiseAbs().maxCoeff();
        rep.satisfied = sres <= residual_tol;
    }
    return rep;
}

}  // namespace cbd
