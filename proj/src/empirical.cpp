#include "cbd/empirical.hpp"

#include <cmath>
#include <stdexcept>

#include "cbd/hmm.hpp"
#include "cbd/info.hpp"
#include "cbd/rng.hpp"

namespace cbd {

namespace {

size_t ipow(int base, int exp) {
    size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
    return r;
}

}  // namespace

EmpiricalJoint::EmpiricalJoint(int k_, int nx_, int nz_, int ny_)
    : k(k_), nx(nx_), nz(nz_), ny(ny_) {
    if (k < 0 || nx < 1 || nz < 1 || ny < 1)
        throw std::invalid_argument("EmpiricalJoint: bad dimensions");
    size_t cells = static_cast<size_t>(nx) * zw_count() * yw_count();
    if (cells > (static_cast<size_t>(1) << 24))
        throw std::invalid_argument("EmpiricalJoint: table exceeds 2^24 cells");
    counts.assign(cells, 0.0);
}

size_t EmpiricalJoint::zw_count() const { return ipow(nz, window_len()); }
size_t EmpiricalJoint::yw_count() const { return ipow(ny, window_len()); }

double& EmpiricalJoint::at(int x0, size_t zw, size_t yw) {
    return counts[(static_cast<size_t>(x0) * zw_count() + zw) * yw_count() + yw];
}

double EmpiricalJoint::at(int x0, size_t zw, size_t yw) const {
    return counts[(static_cast<size_t>(x0) * zw_count() + zw) * yw_count() + yw];
}

size_t pack_window(const std::vector<int>& s, size_t begin, int len, int base) {
    size_t idx = 0;
    for (int i = 0; i < len; ++i) idx = idx * base + static_cast<size_t>(s[begin + i]);
    return idx;
}

std::vector<int> unpack_window(size_t idx, int len, int base) {
    std::vector<int> s(len);
    for (int i = len - 1; i >= 0; --i) {
        s[i] = static_cast<int>(idx % base);
        idx /= base;
    }
    return s;
}

EmpiricalJoint empirical_joint(const std::vector<int>& x, const std::vector<int>& z,
                               const std::vector<int>& y, int k, int nx, int nz, int ny) {
    const int n = static_cast<int>(x.size());
    if (z.size() != x.size() || y.size() != x.size())
        throw std::invalid_argument("empirical_joint: length mismatch");
    if (n <= 2 * k) throw std::invalid_argument("empirical_joint: need n > 2k");
    EmpiricalJoint ej(k, nx, nz, ny);
    const int w = ej.window_len();
    for (int i = k; i < n - k; ++i) {
        size_t zw = pack_window(z, i - k, w, nz);
        size_t yw = pack_window(y, i - k, w, ny);
        ej.at(x[i], zw, yw) += 1.0;
        ej.total += 1.0;
    }
    return ej;
}

EmpiricalJoint expected_empirical_exact(const Source& src, const Channel& ch,
                                        const BlockCode& code, int n, int k) {
    const int nx = source_alphabet_size(src);
    const int nz = ch.output_size();
    double pairs = std::pow(static_cast<double>(nx), n) * std::pow(static_cast<double>(nz), n);
    if (pairs > static_cast<double>(1 << 24))
        throw std::invalid_argument("expected_empirical_exact: |X|^n * |Z|^n exceeds 2^24");

    const Mat trans = source_transition(src);
    const Pmf& pi = source_marginal(src);
    const size_t nxn = ipow(nx, n);
    const size_t nzn = ipow(nz, n);

    int ny = nx;
    EmpiricalJoint ej(k, nx, nz, ny);
    const int w = ej.window_len();

    for (size_t zi = 0; zi < nzn; ++zi) {
        auto z = unpack_window(zi, n, nz);
        auto y = code(z);
        if (static_cast<int>(y.size()) != n)
            throw std::invalid_argument("expected_empirical_exact: code changed length");
        std::vector<size_t> yw(n - 2 * k), zw(n - 2 * k);
        for (int i = k; i < n - k; ++i) {
            zw[i - k] = pack_window(z, i - k, w, nz);
            yw[i - k] = pack_window(y, i - k, w, ny);
        }
        for (size_t xi = 0; xi < nxn; ++xi) {
            auto x = unpack_window(xi, n, nx);
            double p = pi[x[0]];
            for (int i = 0; i + 1 < n; ++i) p *= trans(x[i], x[i + 1]);
            for (int i = 0; i < n && p > 0.0; ++i) p *= ch.prob(x[i], z[i]);
            if (p == 0.0) continue;
            for (int i = k; i < n - k; ++i) ej.at(x[i], zw[i - k], yw[i - k]) += p;
        }
    }
    // Per-index average over the n - 2k kept positions.
    double norm = static_cast<double>(n - 2 * k);
    for (double& c : ej.counts) c /= norm;
    ej.total = 1.0;
    return ej;
}

EmpiricalJoint expected_empirical_mc(const Source& src, const Channel& ch, const BlockCode& code,
                                     int n, int k, int trials, uint64_t seed) {
    const int nx = source_alphabet_size(src);
    const int nz = ch.output_size();
    EmpiricalJoint acc(k, nx, nz, nx);
    for (int t = 0; t < trials; ++t) {
        uint64_t s = derive_seed(seed, t);
        auto x = sample_path(src, n, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        auto y = code(z);
        auto ej = empirical_joint(x.symbols, z, y, k, nx, nz, nx);
        for (size_t i = 0; i < acc.counts.size(); ++i)
            acc.counts[i] += ej.counts[i] / ej.total;
    }
    for (double& c : acc.counts) c /= trials;
    acc.total = 1.0;
    return acc;
}

MarkovViolationReport markov_violation(const EmpiricalJoint& q, const Source& src,
                                       const Channel& ch, double delta_k) {
    MarkovViolationReport rep;
    rep.bound = source_alphabet_size(src) * delta_k;
    const size_t nzw = q.zw_count();
    const size_t nyw = q.yw_count();
    const int w = q.window_len();

    std::vector<std::vector<double>> post(nzw);  // P(X_0 | z-window), lazily filled
    std::vector<bool> have(nzw, false);

    double wsum = 0.0;
    for (size_t zw = 0; zw < nzw; ++zw) {
        for (size_t yw = 0; yw < nyw; ++yw) {
            double mass = 0.0;
            for (int x0 = 0; x0 < q.nx; ++x0) mass += q.at(x0, zw, yw);
            if (mass <= 0.0) continue;
            if (!have[zw]) {
                auto window = unpack_window(zw, w, q.nz);
                Pmf p = windowed_posterior(src, ch, window);
                post[zw].assign(p.p.begin(), p.p.end());
                have[zw] = true;
            }
            double tv = 0.0;
            for (int x0 = 0; x0 < q.nx; ++x0)
                tv += std::abs(q.at(x0, zw, yw) / mass - post[zw][x0]);
            tv *= 0.5;
            rep.max_tv = std::max(rep.max_tv, tv);
            rep.mass_weighted_tv += mass * tv;
            wsum += mass;
        }
    }
    if (wsum > 0.0) rep.mass_weighted_tv /= wsum;
    return rep;
}

double convergence_gap(const EmpiricalJoint& q, const Source& src, const Channel& ch) {
    if (q.ny != q.nx) throw std::invalid_argument("convergence_gap: needs Y alphabet = X alphabet");
    const int w = q.window_len();
    const size_t nzw = q.zw_count();
    const size_t nxw = ipow(q.nx, w);

    // Exact stationary joint P(z-window, x-window).
    JointPmf xblock = block_pmf(src, w);
    std::vector<double> exact(nzw * nxw, 0.0);
    for (size_t xi = 0; xi < nxw; ++xi) {
        double px = xblock.p[xi];
        if (px == 0.0) continue;
        auto x = unpack_window(xi, w, q.nx);
        for (size_t zi = 0; zi < nzw; ++zi) {
            auto z = unpack_window(zi, w, q.nz);
            double p = px;
            for (int i = 0; i < w && p > 0.0; ++i) p *= ch.prob(x[i], z[i]);
            exact[zi * nxw + xi] = p;
        }
    }

    double norm = q.total > 0.0 ? q.total : 1.0;
    double tv = 0.0;
    for (size_t zw = 0; zw < nzw; ++zw)
        for (size_t yw = 0; yw < nxw; ++yw) {
            double m = 0.0;
            for (int x0 = 0; x0 < q.nx; ++x0) m += q.at(x0, zw, yw);
            tv += std::abs(m / norm - exact[zw * nxw + yw]);
        }
    return 0.5 * tv;
}

}  // namespace cbd
