#include "cbd/identities.hpp"

#include <cmath>
#include <stdexcept>

#include "cbd/info.hpp"

namespace cbd {

namespace {

std::vector<int> unrank(size_t idx, int len, int base) {
    std::vector<int> sym(len);
    for (int i = len - 1; i >= 0; --i) {
        sym[i] = static_cast<int>(idx % base);
        idx /= base;
    }
    return sym;
}

void check_ba_budget(size_t nz_super) {
    if (nz_super > 4096)
        throw std::invalid_argument("super-alphabet exceeds Blahut-Arimoto budget (4096)");
}

}  // namespace

Pmf super_observation_law(const Source& src, const Channel& ch, int k) {
    const int nx = source_alphabet_size(src);
    const int nz = ch.output_size();
    size_t nzs = 1, nxs = 1;
    for (int i = 0; i < k; ++i) {
        nzs *= nz;
        nxs *= nx;
    }
    check_ba_budget(nzs);
    JointPmf xblock = block_pmf(src, k);
    std::vector<double> pz(nzs, 0.0);
    for (size_t xi = 0; xi < nxs; ++xi) {
        double px = xblock.p[xi];
        if (px == 0.0) continue;
        auto xs = unrank(xi, k, nx);
        // Distribute this x-block over all z-blocks it can emit.
        std::vector<double> acc(1, px);
        std::vector<double> nxt;
        for (int i = 0; i < k; ++i) {
            nxt.assign(acc.size() * nz, 0.0);
            for (size_t a = 0; a < acc.size(); ++a) {
                if (acc[a] == 0.0) continue;
                for (int z = 0; z < nz; ++z) nxt[a * nz + z] = acc[a] * ch.prob(xs[i], z);
            }
            acc = nxt;
        }
        for (size_t zi = 0; zi < nzs; ++zi) pz[zi] += acc[zi];
    }
    return Pmf(std::move(pz));
}

Mat super_distortion(const Mat& single, int k) {
    size_t nzs = 1, nys = 1;
    for (int i = 0; i < k; ++i) {
        nzs *= single.rows;
        nys *= single.cols;
    }
    Mat out(static_cast<int>(nzs), static_cast<int>(nys));
    for (size_t zi = 0; zi < nzs; ++zi) {
        auto zs = unrank(zi, k, single.rows);
        for (size_t yi = 0; yi < nys; ++yi) {
            auto ys = unrank(yi, k, single.cols);
            double d = 0.0;
            for (int i = 0; i < k; ++i) d += single(zs[i], ys[i]);
            out(static_cast<int>(zi), static_cast<int>(yi)) = d / k;
        }
    }
    return out;
}

JointPmf exact_joint_zx_block(const Source& src, const Channel& ch, int k) {
    const int nx = source_alphabet_size(src);
    const int nz = ch.output_size();
    size_t nzs = 1, nxs = 1;
    for (int i = 0; i < k; ++i) {
        nzs *= nz;
        nxs *= nx;
    }
    JointPmf xblock = block_pmf(src, k);
    std::vector<double> j(nzs * nxs, 0.0);
    for (size_t xi = 0; xi < nxs; ++xi) {
        double px = xblock.p[xi];
        if (px == 0.0) continue;
        auto xs = unrank(xi, k, nx);
        for (size_t zi = 0; zi < nzs; ++zi) {
            auto zs = unrank(zi, k, nz);
            double pr = px;
            for (int i = 0; i < k && pr > 0.0; ++i) pr *= ch.prob(xs[i], zs[i]);
            j[zi * nxs + xi] = pr;
        }
    }
    return JointPmf({static_cast<int>(nzs), static_cast<int>(nxs)}, std::move(j));
}

MatchedIdentityReport matched_level_identity_check(const Source& src, const Channel& ch, int k,
                                                   const BaOptions& opts) {
    MatchedIdentityReport rep;
    rep.k = k;
    const Pmf& prior = source_marginal(src);
    rep.matched_level = conditional_entropy(ch, prior);

    Pmf pz = super_observation_law(src, ch, k);
    Mat rho = matched_distortion(ch).values;
    Mat rho_k = k == 1 ? rho : super_distortion(rho, k);

    rep.point = solve_at_distortion(pz, rho_k, rep.matched_level, opts);
    rep.lhs_rate = rep.point.rate / k;
    rep.rhs_rate = entropy(pz.p) / k - rep.matched_level;
    rep.gap = std::abs(rep.lhs_rate - rep.rhs_rate);
    return rep;
}

AchieverReport achiever_is_posterior_check(const Source& src, const Channel& ch, int k,
                                           const BaOptions& opts) {
    AchieverReport rep;
    rep.k = k;
    rep.rank = channel_rank_class(ch);
    if (rep.rank == RankClass::deficient) {
        rep.checked = false;
        return rep;
    }
    auto ident = matched_level_identity_check(src, ch, k, opts);
    Pmf pz = super_observation_law(src, ch, k);
    JointPmf ba = rd_joint(pz, ident.point);
    JointPmf exact = exact_joint_zx_block(src, ch, k);
    if (ba.p.size() != exact.p.size())
        throw std::logic_error("achiever check: joint size mismatch");
    rep.tv_gap = tv_distance(ba.p, exact.p);
    rep.checked = true;
    return rep;
}

}  // namespace cbd
