#include "cbd/mixing.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cbd/hmm.hpp"
#include "cbd/parallel.hpp"
#include "cbd/rng.hpp"

namespace cbd {

namespace {

using Msg = std::vector<double>;

bool dead(const Msg& m) {
    for (double v : m)
        if (v > 0.0) return false;
    return true;
}

void normalize_max(Msg& m) {
    double mx = 0.0;
    for (double v : m) mx = std::max(mx, v);
    if (mx > 0.0)
        for (double& v : m) v /= mx;
}

// Forward over observations obs starting from a prior over the first
// hidden state: emission, then (transition, emission) per later symbol.
// Returns f(x) proportional to P(X_last = x, obs | prior).
Msg forward_over(const Msg& prior, const Mat& trans, const Channel& ch,
                 const std::vector<int>& obs) {
    const int nx = static_cast<int>(prior.size());
    Msg f(nx);
    for (int x = 0; x < nx; ++x) f[x] = prior[x] * ch.prob(x, obs[0]);
    normalize_max(f);
    for (size_t i = 1; i < obs.size(); ++i) {
        Msg nf(nx, 0.0);
        for (int xp = 0; xp < nx; ++xp) {
            if (f[xp] == 0.0) continue;
            for (int x = 0; x < nx; ++x) nf[x] += f[xp] * trans(xp, x);
        }
        for (int x = 0; x < nx; ++x) nf[x] *= ch.prob(x, obs[i]);
        normalize_max(nf);
        f = std::move(nf);
    }
    return f;
}

// Backward fold of observations (given right-to-left) onto a terminal
// message; returns g(x) proportional to P(obs | X_cur = x).
Msg backward_over(Msg g, const Mat& trans, const Channel& ch,
                  const std::vector<int>& obs_right_to_left) {
    for (int z : obs_right_to_left) g = detail::backward_step(g, trans, ch, z);
    return g;
}

std::vector<int> unrank(size_t idx, int len, int base) {
    std::vector<int> sym(len);
    for (int i = len - 1; i >= 0; --i) {
        sym[i] = static_cast<int>(idx % base);
        idx /= base;
    }
    return sym;
}

struct MixingWork {
    const Source& src;
    const Channel& ch;
    int k, w;
    int threads;

    double run(const std::vector<std::vector<int>>& left_tails,
               const std::vector<std::vector<int>>& right_tails, bool paired) const {
        const int nx = source_alphabet_size(src);
        const int nz = ch.output_size();
        const Mat trans = source_transition(src);
        const Pmf& pi = source_marginal(src);
        Msg stationary(pi.p.begin(), pi.p.end());
        Msg ones(nx, 1.0);

        const int n_tails = static_cast<int>(left_tails.size());

        // Prior over X_{-k} after consuming a left tail: filter the tail,
        // then one transition step.
        auto left_prior = [&](const std::vector<int>& tail) -> Msg {
            if (tail.empty()) return stationary;
            Msg f = forward_over(stationary, trans, src_channel(), tail);
            Msg prior(nx, 0.0);
            for (int xp = 0; xp < nx; ++xp)
                for (int x = 0; x < nx; ++x) prior[x] += f[xp] * trans(xp, x);
            return prior;
        };
        // Terminal message over X_k after consuming a right tail.
        auto right_terminal = [&](const std::vector<int>& tail) -> Msg {
            Msg g = ones;
            for (auto it = tail.rbegin(); it != tail.rend(); ++it)
                g = detail::backward_step(g, trans, src_channel(), *it);
            return g;
        };

        std::vector<Msg> lt_priors(n_tails), rt_terminals(n_tails);
        for (int j = 0; j < n_tails; ++j) {
            lt_priors[j] = left_prior(left_tails[j]);
            rt_terminals[j] = right_terminal(right_tails[j]);
        }

        // Left halves z_{-k}^0 (length k+1): forward messages over X_0 per
        // starting prior (windowed plus each tail).
        size_t n_left = 1, n_right = 1;
        for (int i = 0; i < k + 1; ++i) n_left *= nz;
        for (int i = 0; i < k; ++i) n_right *= nz;

        std::vector<Msg> f_win(n_left);
        std::vector<std::vector<Msg>> f_ext(n_tails, std::vector<Msg>(n_left));
        for (size_t li = 0; li < n_left; ++li) {
            auto obs = unrank(li, k + 1, nz);
            f_win[li] = forward_over(stationary, trans, src_channel(), obs);
            for (int j = 0; j < n_tails; ++j)
                f_ext[j][li] = forward_over(lt_priors[j], trans, src_channel(), obs);
        }

        std::vector<Msg> g_win(n_right);
        std::vector<std::vector<Msg>> g_ext(n_tails, std::vector<Msg>(n_right));
        for (size_t ri = 0; ri < n_right; ++ri) {
            auto obs = unrank(ri, k, nz);  // z_1 .. z_k
            std::vector<int> rtl(obs.rbegin(), obs.rend());
            g_win[ri] = backward_over(ones, trans, src_channel(), rtl);
            for (int j = 0; j < n_tails; ++j)
                g_ext[j][ri] = backward_over(rt_terminals[j], trans, src_channel(), rtl);
        }

        auto posterior = [&](const Msg& f, const Msg& g, Msg& out) -> bool {
            double s = 0.0;
            for (int x = 0; x < static_cast<int>(f.size()); ++x) {
                out[x] = f[x] * g[x];
                s += out[x];
            }
            if (s <= 0.0) return false;
            for (double& v : out) v /= s;
            return true;
        };

        std::vector<double> per_left(n_left, 0.0);
        parallel_for(static_cast<int>(n_left), threads, [&](int li_int) {
            size_t li = static_cast<size_t>(li_int);
            double best = 0.0;
            Msg pw(nx), pe(nx);
            for (size_t ri = 0; ri < n_right; ++ri) {
                if (!posterior(f_win[li], g_win[ri], pw)) continue;
                if (paired) {
                    for (int j = 0; j < n_tails; ++j) {
                        if (!posterior(f_ext[j][li], g_ext[j][ri], pe)) continue;
                        for (int x = 0; x < nx; ++x)
                            best = std::max(best, std::abs(pw[x] - pe[x]));
                    }
                } else {
                    for (int jl = 0; jl < n_tails; ++jl) {
                        if (dead(f_ext[jl][li])) continue;
                        for (int jr = 0; jr < n_tails; ++jr) {
                            if (!posterior(f_ext[jl][li], g_ext[jr][ri], pe)) continue;
                            for (int x = 0; x < nx; ++x)
                                best = std::max(best, std::abs(pw[x] - pe[x]));
                        }
                    }
                }
            }
            per_left[li] = best;
        });
        double delta = 0.0;
        for (double v : per_left) delta = std::max(delta, v);
        return delta;
    }

    const Channel& src_channel() const { return ch; }
};

void check_budget(const Channel& ch, int k) {
    double centers = std::pow(static_cast<double>(ch.output_size()), 2 * k + 1);
    if (centers > static_cast<double>(1 << 20))
        throw std::invalid_argument("mixing_coefficient: |Z|^{2k+1} exceeds budget");
}

}  // namespace

MixingEstimate mixing_coefficient(const Source& src, const Channel& ch, int k, int w, int m,
                                  uint64_t seed, int threads) {
    check_budget(ch, k);
    if (m < 1 || w < 0) throw std::invalid_argument("mixing_coefficient: bad w or m");

    std::vector<std::vector<int>> lt(m), rt(m);
    for (int j = 0; j < m; ++j) {
        if (w == 0) continue;
        // Tails drawn from the model: a source path pushed through the channel.
        auto xl = sample_path(src, w, derive_seed(seed, 2 * j));
        auto xr = sample_path(src, w, derive_seed(seed, 2 * j + 1));
        lt[j].resize(w);
        rt[j].resize(w);
        Rng rl(derive_seed(seed ^ 0xabcdef12345ULL, 2 * j));
        Rng rr(derive_seed(seed ^ 0xabcdef12345ULL, 2 * j + 1));
        for (int i = 0; i < w; ++i) {
            lt[j][i] = rl.sample_pmf(ch.row(xl[i]).p);
            rt[j][i] = rr.sample_pmf(ch.row(xr[i]).p);
        }
    }
    MixingWork work{src, ch, k, w, threads};
    MixingEstimate est;
    est.k = k;
    est.extension_window = w;
    est.tails_sampled = m;
    est.exhaustive = false;
    est.delta_k = work.run(lt, rt, /*paired=*/true);
    return est;
}

MixingEstimate mixing_coefficient_exhaustive(const Source& src, const Channel& ch, int k, int w,
                                             int threads) {
    check_budget(ch, k);
    const int nz = ch.output_size();
    size_t n_tails = 1;
    for (int i = 0; i < w; ++i) n_tails *= nz;
    if (n_tails > (1u << 16))
        throw std::invalid_argument("mixing_coefficient_exhaustive: |Z|^w too large");
    std::vector<std::vector<int>> tails(n_tails);
    for (size_t t = 0; t < n_tails; ++t) tails[t] = unrank(t, w, nz);

    MixingWork work{src, ch, k, w, threads};
    MixingEstimate est;
    est.k = k;
    est.extension_window = w;
    est.tails_sampled = 0;
    est.exhaustive = true;
    est.delta_k = work.run(tails, tails, /*paired=*/false);
    return est;
}

}  // namespace cbd
