#include "cbd/loss.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbd/hmm.hpp"
#include "cbd/parallel.hpp"
#include "cbd/rng.hpp"

namespace cbd {

LossSpec::LossSpec(Mat t) : table(std::move(t)) {
    for (double v : table.a) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("loss table entries must be finite and >= 0");
        lambda_max = std::max(lambda_max, v);
    }
}

LossSpec LossSpec::hamming(int n) {
    Mat t(n, n, 1.0);
    for (int i = 0; i < n; ++i) t(i, i) = 0.0;
    return LossSpec(std::move(t));
}

LossSpec LossSpec::mse(const std::vector<double>& embedding) {
    const int n = static_cast<int>(embedding.size());
    Mat t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d = embedding[i] - embedding[j];
            t(i, j) = d * d;
        }
    return LossSpec(std::move(t));
}

double block_loss(const std::vector<int>& x, const std::vector<int>& y, const LossSpec& loss) {
    if (x.size() != y.size()) throw std::invalid_argument("block_loss: length mismatch");
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += loss.table(x[i], y[i]);
    return s / static_cast<double>(x.size());
}

std::vector<int> bayes_denoiser(const Source& src, const Channel& ch, const std::vector<int>& z,
                                const LossSpec& loss) {
    auto pm = forward_backward(src, ch, z);
    const int nx = pm.rows.cols;
    const int ny = loss.table.cols;
    std::vector<int> out(z.size());
    for (int i = 0; i < pm.length(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int by = 0;
        for (int y = 0; y < ny; ++y) {
            double e = 0.0;
            for (int x = 0; x < nx; ++x) e += pm.rows(i, x) * loss.table(x, y);
            if (e < best) {
                best = e;
                by = y;
            }
        }
        out[i] = by;
    }
    return out;
}

double max_coupling_loss(const std::vector<double>& p, const std::vector<double>& q,
                         const Mat& lambda) {
    const int m = static_cast<int>(p.size());
    const int n = static_cast<int>(q.size());
    if (lambda.rows != m || lambda.cols != n)
        throw std::invalid_argument("max_coupling_loss: shape mismatch");
    constexpr double tol = 1e-14;

    // Max-cost transportation by successive shortest paths on negated
    // costs. Nodes: sources 0..m-1, sinks m..m+n-1.
    std::vector<double> supply(p), demand(q);
    Mat flow(m, n, 0.0);
    const double inf = std::numeric_limits<double>::infinity();

    for (int guard = 0; guard < 4 * (m + n) * (m + n); ++guard) {
        double rem = 0.0;
        for (double s : supply) rem += s;
        if (rem <= tol) break;

        const int nodes = m + n;
        std::vector<double> dist(nodes, inf);
        std::vector<int> par(nodes, -1);
        for (int u = 0; u < m; ++u)
            if (supply[u] > tol) dist[u] = 0.0;
        // Bellman-Ford; graph is tiny.
        for (int it = 0; it < nodes; ++it) {
            bool changed = false;
            for (int u = 0; u < m; ++u) {
                if (dist[u] == inf) continue;
                for (int v = 0; v < n; ++v) {
                    double c = -lambda(u, v);
                    if (dist[u] + c < dist[m + v] - 1e-15) {
                        dist[m + v] = dist[u] + c;
                        par[m + v] = u;
                        changed = true;
                    }
                }
            }
            for (int v = 0; v < n; ++v) {
                if (dist[m + v] == inf) continue;
                for (int u = 0; u < m; ++u) {
                    if (flow(u, v) <= tol) continue;
                    double c = lambda(u, v);
                    if (dist[m + v] + c < dist[u] - 1e-15) {
                        dist[u] = dist[m + v] + c;
                        par[u] = m + v;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        int best_sink = -1;
        for (int v = 0; v < n; ++v)
            if (demand[v] > tol && dist[m + v] < inf &&
                (best_sink < 0 || dist[m + v] < dist[m + best_sink]))
                best_sink = v;
        if (best_sink < 0) break;

        // Trace path back to a source with remaining supply.
        std::vector<int> path;  // alternating sink/source node ids
        int cur = m + best_sink;
        double amount = demand[best_sink];
        while (par[cur] >= 0) {
            path.push_back(cur);
            int prev = par[cur];
            if (cur >= m) {
                // forward edge prev(source) -> cur(sink): unbounded
            } else {
                // backward edge prev(sink) -> cur(source): bounded by flow
                amount = std::min(amount, flow(cur, prev - m));
            }
            cur = prev;
        }
        path.push_back(cur);
        amount = std::min(amount, supply[cur]);
        if (amount <= tol) break;

        // Apply augmentation along the traced path (stored sink-first).
        for (size_t i = path.size() - 1; i > 0; --i) {
            int a = path[i], b = path[i - 1];
            if (a < m)
                flow(a, b - m) += amount;  // source -> sink
            else
                flow(b, a - m) -= amount;  // sink -> source (reduce flow)
        }
        supply[cur] -= amount;
        demand[best_sink] -= amount;
    }

    double val = 0.0;
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < n; ++v) val += flow(u, v) * lambda(u, v);
    return val;
}

namespace {

struct TriAcc {
    double bayes = 0.0, pair = 0.0, upper = 0.0;
};

MonteCarloEstimate summarize(const std::vector<double>& xs) {
    MonteCarloEstimate e;
    e.trials = static_cast<int>(xs.size());
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= xs.size();
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    e.mean = mean;
    e.std_err = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1.0) / xs.size()) : 0.0;
    return e;
}

}  // namespace

PosteriorLossReport posterior_losses(const Source& src, const Channel& ch, const LossSpec& loss,
                                     int trials, int path_len, int margin, uint64_t seed,
                                     int threads) {
    if (path_len <= 2 * margin)
        throw std::invalid_argument("posterior_losses: path_len must exceed 2*margin");
    const int nx = source_alphabet_size(src);
    std::vector<TriAcc> per(trials);
    parallel_for(trials, threads, [&](int t) {
        uint64_t s = derive_seed(seed, t);
        auto x = sample_path(src, path_len, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        auto pm = forward_backward(src, ch, z);
        TriAcc acc;
        int count = 0;
        std::vector<double> post(nx);
        for (int i = margin; i < path_len - margin; ++i) {
            for (int xx = 0; xx < nx; ++xx) post[xx] = pm.rows(i, xx);
            double bayes = std::numeric_limits<double>::infinity();
            for (int y = 0; y < loss.table.cols; ++y) {
                double e = 0.0;
                for (int xx = 0; xx < nx; ++xx) e += post[xx] * loss.table(xx, y);
                bayes = std::min(bayes, e);
            }
            double pair = 0.0;
            for (int u = 0; u < nx; ++u)
                for (int v = 0; v < nx; ++v) pair += post[u] * post[v] * loss.table(u, v);
            acc.bayes += bayes;
            acc.pair += pair;
            acc.upper += max_coupling_loss(post, post, loss.table);
            ++count;
        }
        per[t] = {acc.bayes / count, acc.pair / count, acc.upper / count};
    });
    std::vector<double> b(trials), pr(trials), up(trials);
    for (int t = 0; t < trials; ++t) {
        b[t] = per[t].bayes;
        pr[t] = per[t].pair;
        up[t] = per[t].upper;
    }
    PosteriorLossReport rep;
    rep.bayes = summarize(b);
    rep.pair = summarize(pr);
    rep.upper = summarize(up);
    return rep;
}

MonteCarloEstimate theoretical_pair_loss(const Source& src, const Channel& ch,
                                         const LossSpec& loss, int trials, int path_len,
                                         int margin, uint64_t seed, int threads) {
    return posterior_losses(src, ch, loss, trials, path_len, margin, seed, threads).pair;
}

MonteCarloEstimate coupling_upper_bound(const Source& src, const Channel& ch,
                                        const LossSpec& loss, int trials, int path_len,
                                        int margin, uint64_t seed, int threads) {
    return posterior_losses(src, ch, loss, trials, path_len, margin, seed, threads).upper;
}

}  // namespace cbd
