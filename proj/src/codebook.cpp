#include "cbd/codebook.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbd/hmm.hpp"
#include "cbd/parallel.hpp"
#include "cbd/rng.hpp"

namespace cbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> unrank(size_t idx, int len, int base) {
    std::vector<int> sym(len);
    for (int i = len - 1; i >= 0; --i) {
        sym[i] = static_cast<int>(idx % base);
        idx /= base;
    }
    return sym;
}

double block_distortion(const Mat& rho, const std::vector<int>& z, const std::vector<int>& y,
                        size_t len) {
    double d = 0.0;
    for (size_t i = 0; i < len; ++i) {
        double v = rho(z[i], y[i]);
        if (!std::isfinite(v)) return kInf;
        d += v;
    }
    return d / static_cast<double>(len);
}

}  // namespace

Codebook random_codebook(const Source& src, int n, double rate_nats, uint64_t seed) {
    if (n < 1 || rate_nats < 0.0) throw std::invalid_argument("random_codebook: bad n or rate");
    double count = std::ceil(std::exp(n * rate_nats));
    if (count > static_cast<double>(1 << 22))
        throw std::invalid_argument("random_codebook: codebook size exceeds 2^22 budget");
    int m = std::max(1, static_cast<int>(count));
    Codebook cb;
    cb.n = n;
    cb.generator_seed = seed;
    cb.words.reserve(m);
    for (int j = 0; j < m; ++j)
        cb.words.push_back(sample_path(src, n, derive_seed(seed, j)).symbols);
    cb.rate_nats = std::log(static_cast<double>(m)) / n;
    return cb;
}

EncodingResult encode(const Codebook& cb, const DistortionMatrix& dist,
                      const std::vector<int>& z) {
    if (static_cast<int>(z.size()) != cb.n)
        throw std::invalid_argument("encode: observation length does not match codebook");
    EncodingResult best;
    best.distortion = kInf;
    for (size_t j = 0; j < cb.words.size(); ++j) {
        double d = block_distortion(dist.values, z, cb.words[j], z.size());
        if (d < best.distortion) {
            best.distortion = d;
            best.index = static_cast<int>(j);
        }
    }
    if (best.index < 0) throw std::runtime_error("encode: no finite-distortion codeword");
    best.y = cb.words[best.index];
    return best;
}

std::vector<int> encode_blocks(const Codebook& cb, const DistortionMatrix& dist,
                               const std::vector<int>& z) {
    std::vector<int> y;
    y.reserve(z.size());
    for (size_t off = 0; off < z.size(); off += cb.n) {
        size_t len = std::min<size_t>(cb.n, z.size() - off);
        std::vector<int> blk(z.begin() + off, z.begin() + off + len);
        if (len == static_cast<size_t>(cb.n)) {
            auto r = encode(cb, dist, blk);
            y.insert(y.end(), r.y.begin(), r.y.end());
        } else {
            // Tail: match against word prefixes.
            double bd = kInf;
            int bi = -1;
            for (size_t j = 0; j < cb.words.size(); ++j) {
                double d = block_distortion(dist.values, blk, cb.words[j], len);
                if (d < bd) {
                    bd = d;
                    bi = static_cast<int>(j);
                }
            }
            if (bi < 0) throw std::runtime_error("encode_blocks: no finite-distortion word");
            y.insert(y.end(), cb.words[bi].begin(), cb.words[bi].begin() + len);
        }
    }
    return y;
}

SmallCode optimal_small_code(const Source& src, const Channel& ch, int n, int num_words,
                             const DistortionMatrix& dist, uint64_t seed, int restarts) {
    const int nz = ch.output_size();
    const int ny = dist.values.cols;
    double seqs = std::pow(static_cast<double>(nz), n);
    if (seqs > static_cast<double>(1 << 16))
        throw std::invalid_argument("optimal_small_code: |Z|^n exceeds 2^16 budget");
    const size_t ns = static_cast<size_t>(seqs);

    // Exact law of Z^n.
    std::vector<std::vector<int>> zseq(ns);
    std::vector<double> pz(ns);
    for (size_t i = 0; i < ns; ++i) {
        zseq[i] = unrank(i, n, nz);
        pz[i] = observation_likelihood(src, ch, zseq[i]);
    }

    const Mat& rho = dist.values;
    SmallCode best;
    best.expected_distortion = kInf;

    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng(derive_seed(seed, rs));
        std::vector<std::vector<int>> words(num_words);
        for (auto& w : words)
            w = sample_path(src, n, rng.next_u64()).symbols;

        std::vector<int> assign(ns, 0);
        std::vector<double> bds(ns, 0.0);
        double prev_obj = kInf;
        for (int sweep = 0; sweep < 200; ++sweep) {
            // Assignment step.
            double obj = 0.0;
            for (size_t i = 0; i < ns; ++i) {
                double bd = kInf;
                int bw = 0;
                for (int w = 0; w < num_words; ++w) {
                    double d = block_distortion(rho, zseq[i], words[w], n);
                    if (d < bd) {
                        bd = d;
                        bw = w;
                    }
                }
                assign[i] = bw;
                bds[i] = bd;
                if (pz[i] > 0.0) obj += pz[i] * bd;
            }
            // Repair: a positive-mass sequence at infinite distortion from
            // every word (possible when rho has infinite cells and the
            // random initialization duplicated words) takes over the word
            // carrying the least assigned mass.
            if (!std::isfinite(obj)) {
                size_t stranded = ns;
                for (size_t i = 0; i < ns; ++i)
                    if (pz[i] > 0.0 && !std::isfinite(bds[i]) &&
                        (stranded == ns || pz[i] > pz[stranded]))
                        stranded = i;
                std::vector<double> mass(num_words, 0.0);
                for (size_t i = 0; i < ns; ++i)
                    if (std::isfinite(bds[i])) mass[assign[i]] += pz[i];
                int lightest = 0;
                for (int w = 1; w < num_words; ++w)
                    if (mass[w] < mass[lightest]) lightest = w;
                words[lightest] = zseq[stranded];
                prev_obj = kInf;
                continue;
            }
            // Refit step: per word, per coordinate, the symbol minimizing
            // expected single-letter distortion over assigned mass.
            for (int w = 0; w < num_words; ++w) {
                for (int pos = 0; pos < n; ++pos) {
                    double bestd = kInf;
                    int besty = words[w][pos];
                    for (int y = 0; y < ny; ++y) {
                        double acc = 0.0;
                        bool any = false;
                        for (size_t i = 0; i < ns; ++i) {
                            if (assign[i] != w || pz[i] == 0.0) continue;
                            any = true;
                            double v = rho(zseq[i][pos], y);
                            if (!std::isfinite(v)) {
                                acc = kInf;
                                break;
                            }
                            acc += pz[i] * v;
                        }
                        if (any && acc < bestd) {
                            bestd = acc;
                            besty = y;
                        }
                    }
                    words[w][pos] = besty;
                }
            }
            if (obj >= prev_obj - 1e-15) break;
            prev_obj = obj;
        }
        // Final assignment and objective.
        double obj = 0.0;
        for (size_t i = 0; i < ns; ++i) {
            double bd = kInf;
            int bw = 0;
            for (int w = 0; w < num_words; ++w) {
                double d = block_distortion(rho, zseq[i], words[w], n);
                if (d < bd) {
                    bd = d;
                    bw = w;
                }
            }
            assign[i] = bw;
            if (pz[i] > 0.0) obj += pz[i] * bd;
        }
        if (obj < best.expected_distortion) {
            best.cb.words = words;
            best.cb.n = n;
            best.cb.rate_nats = std::log(static_cast<double>(num_words)) / n;
            best.cb.generator_seed = seed;
            best.encoder = assign;
            best.expected_distortion = obj;
        }
    }
    return best;
}

SamplePath posterior_sampling_denoiser(const Source& src, const Channel& ch,
                                       const std::vector<int>& z, uint64_t seed) {
    return posterior_path_sample(src, ch, z, seed);
}

GoodnessReport goodness_report(const Codebook& cb, const DistortionMatrix& dist,
                               const Source& src, const Channel& ch, int trials, uint64_t seed,
                               int threads) {
    GoodnessReport rep;
    rep.trials = trials;
    rep.rate_nats = cb.rate_nats;
    rep.target_d = conditional_entropy(ch, source_marginal(src));
    std::vector<double> per_trial(trials, 0.0);
    parallel_for(trials, threads, [&](int t) {
        uint64_t s = derive_seed(seed, t);
        auto x = sample_path(src, cb.n, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        per_trial[t] = encode(cb, dist, z).distortion;
    });
    double mean = 0.0;
    for (double v : per_trial) mean += v;
    mean /= trials;
    double var = 0.0;
    for (double v : per_trial) var += (v - mean) * (v - mean);
    rep.mean_distortion = mean;
    rep.std_err = trials > 1 ? std::sqrt(var / (trials - 1.0) / trials) : 0.0;
    return rep;
}

}  // namespace cbd
