#include "cbd/hmm.hpp"

#include <cmath>
#include <stdexcept>

#include "cbd/rng.hpp"

namespace cbd {

namespace detail {

namespace {
double normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    if (s > 0.0)
        for (double& x : v) x /= s;
    return s;
}
}  // namespace

ForwardState forward_init(const Pmf& start, const Channel& ch, int z0) {
    ForwardState s;
    s.f.resize(start.size());
    for (int x = 0; x < start.size(); ++x) s.f[x] = start[x] * ch.prob(x, z0);
    if (normalize(s.f) == 0.0) s.dead = true;
    return s;
}

ForwardState forward_step(const ForwardState& st, const Mat& trans, const Channel& ch, int z) {
    ForwardState s;
    const int nx = static_cast<int>(st.f.size());
    s.f.assign(nx, 0.0);
    if (st.dead) {
        s.dead = true;
        return s;
    }
    for (int xp = 0; xp < nx; ++xp) {
        if (st.f[xp] == 0.0) continue;
        for (int x = 0; x < nx; ++x) s.f[x] += st.f[xp] * trans(xp, x);
    }
    for (int x = 0; x < nx; ++x) s.f[x] *= ch.prob(x, z);
    if (normalize(s.f) == 0.0) s.dead = true;
    return s;
}

std::vector<double> backward_init(int nx) {
    return std::vector<double>(nx, 1.0);
}

std::vector<double> backward_step(const std::vector<double>& g, const Mat& trans,
                                  const Channel& ch, int z_next) {
    const int nx = static_cast<int>(g.size());
    std::vector<double> out(nx, 0.0);
    for (int x = 0; x < nx; ++x) {
        double acc = 0.0;
        for (int xn = 0; xn < nx; ++xn) acc += trans(x, xn) * ch.prob(xn, z_next) * g[xn];
        out[x] = acc;
    }
    double mx = 0.0;
    for (double v : out) mx = std::max(mx, v);
    if (mx > 0.0)
        for (double& v : out) v /= mx;
    return out;
}

std::vector<double> combine_posterior(const std::vector<double>& f, const std::vector<double>& g) {
    std::vector<double> post(f.size());
    double s = 0.0;
    for (size_t x = 0; x < f.size(); ++x) {
        post[x] = f[x] * g[x];
        s += post[x];
    }
    if (s <= 0.0) throw std::runtime_error("posterior: observation has zero likelihood");
    for (double& v : post) v /= s;
    return post;
}

}  // namespace detail

Pmf PosteriorMarginals::row(int i) const {
    std::vector<double> r(rows.cols);
    for (int x = 0; x < rows.cols; ++x) r[x] = rows(i, x);
    return Pmf(std::move(r));
}

namespace {

using detail::ForwardState;

std::vector<ForwardState> run_forward(const Source& src, const Channel& ch,
                                      const std::vector<int>& z) {
    if (z.empty()) throw std::invalid_argument("forward_backward: empty observation");
    const Pmf& init = source_marginal(src);
    Mat trans = source_transition(src);
    std::vector<ForwardState> fs(z.size());
    fs[0] = detail::forward_init(init, ch, z[0]);
    for (size_t i = 1; i < z.size(); ++i) fs[i] = detail::forward_step(fs[i - 1], trans, ch, z[i]);
    if (fs.back().dead)
        throw std::runtime_error("observation sequence has zero likelihood under the model");
    return fs;
}

}  // namespace

PosteriorMarginals forward_backward(const Source& src, const Channel& ch,
                                    const std::vector<int>& z) {
    const int n = static_cast<int>(z.size());
    const int nx = source_alphabet_size(src);
    Mat trans = source_transition(src);
    auto fs = run_forward(src, ch, z);

    PosteriorMarginals pm;
    pm.rows = Mat(n, nx);
    std::vector<double> g = detail::backward_init(nx);
    for (int i = n - 1; i >= 0; --i) {
        auto post = detail::combine_posterior(fs[i].f, g);
        for (int x = 0; x < nx; ++x) pm.rows(i, x) = post[x];
        if (i > 0) g = detail::backward_step(g, trans, ch, z[i]);
    }
    return pm;
}

SamplePath posterior_path_sample(const Source& src, const Channel& ch,
                                 const std::vector<int>& z, uint64_t seed) {
    const int n = static_cast<int>(z.size());
    const int nx = source_alphabet_size(src);
    Mat trans = source_transition(src);
    auto fs = run_forward(src, ch, z);

    Rng rng(seed);
    SamplePath out;
    out.seed = seed;
    out.symbols.resize(n);
    // Last index: P(x_n | z^n) is the final filtered marginal.
    out.symbols[n - 1] = rng.sample_pmf(fs[n - 1].f);
    for (int i = n - 2; i >= 0; --i) {
        int nxt = out.symbols[i + 1];
        std::vector<double> w(nx);
        double s = 0.0;
        for (int x = 0; x < nx; ++x) {
            w[x] = fs[i].f[x] * trans(x, nxt);
            s += w[x];
        }
        if (s <= 0.0) throw std::runtime_error("posterior_path_sample: zero-mass transition");
        for (double& v : w) v /= s;
        out.symbols[i] = rng.sample_pmf(w);
    }
    return out;
}

Pmf windowed_posterior(const Source& src, const Channel& ch, const std::vector<int>& window) {
    if (window.size() % 2 == 0)
        throw std::invalid_argument("windowed_posterior: window length must be odd");
    auto pm = forward_backward(src, ch, window);
    return pm.row(static_cast<int>(window.size()) / 2);
}

double observation_likelihood(const Source& src, const Channel& ch, const std::vector<int>& z) {
    if (z.empty()) return 1.0;
    const Pmf& init = source_marginal(src);
    Mat trans = source_transition(src);
    const int nx = source_alphabet_size(src);
    std::vector<double> f(nx);
    double loglik = 0.0;
    for (int x = 0; x < nx; ++x) f[x] = init[x] * ch.prob(x, z[0]);
    for (size_t i = 0;; ++i) {
        double s = 0.0;
        for (double v : f) s += v;
        if (s == 0.0) return 0.0;
        loglik += std::log(s);
        for (double& v : f) v /= s;
        if (i + 1 >= z.size()) break;
        std::vector<double> nf(nx, 0.0);
        for (int xp = 0; xp < nx; ++xp)
            for (int x = 0; x < nx; ++x) nf[x] += f[xp] * trans(xp, x);
        for (int x = 0; x < nx; ++x) nf[x] *= ch.prob(x, z[i + 1]);
        f = std::move(nf);
    }
    return std::exp(loglik);
}

}  // namespace cbd
