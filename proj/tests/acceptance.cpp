// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails. argv[1] must point at the `denoise` CLI binary
// (used by the determinism criterion).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cbd/channel.hpp"
#include "cbd/codebook.hpp"
#include "cbd/empirical.hpp"
#include "cbd/erasure.hpp"
#include "cbd/figures.hpp"
#include "cbd/gaussian.hpp"
#include "cbd/hmm.hpp"
#include "cbd/identities.hpp"
#include "cbd/indirect.hpp"
#include "cbd/info.hpp"
#include "cbd/loss.hpp"
#include "cbd/mixing.hpp"
#include "cbd/parallel.hpp"
#include "cbd/rng.hpp"
#include "cbd/source.hpp"

using namespace cbd;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::pair<Source, Channel>> family() {
    std::vector<Source> sources = {IidSource(Pmf::uniform(2)),
                                   MarkovSource::binary_symmetric(0.1),
                                   MarkovSource::binary_symmetric(0.2),
                                   MarkovSource::binary_symmetric(0.3)};
    std::vector<Channel> channels = {Channel::bsc(0.1), Channel::bsc(0.3), Channel::bec(0.5)};
    std::vector<std::pair<Source, Channel>> out;
    for (const auto& s : sources)
        for (const auto& c : channels) out.push_back({s, c});
    return out;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    double worst1 = 0.0, worst2 = 0.0;
    for (const auto& [src, ch] : family()) {
        worst1 = std::max(worst1, nats_to_bits(matched_level_identity_check(src, ch, 1).gap));
        worst2 = std::max(worst2, nats_to_bits(matched_level_identity_check(src, ch, 2).gap));
    }
    double dt = seconds_since(t0);
    bool ok = worst1 < 1e-4 && worst2 < 1e-3 && dt < 60.0;
    std::ostringstream d;
    d << "matched-level rate identity, max gap k=1 " << worst1 << " bits (tol 1e-4), k=2 "
      << worst2 << " bits (tol 1e-3), " << dt << " s";
    report(1, ok, d.str());
}

void criterion2() {
    double worst = 0.0;
    bool flagged_ok = true;
    for (const auto& [src, ch] : family()) {
        auto rep = achiever_is_posterior_check(src, ch, 1);
        if (!rep.checked) flagged_ok = false;  // the family is full rank throughout
        worst = std::max(worst, rep.tv_gap);
    }
    auto deficient = achiever_is_posterior_check(MarkovSource::binary_symmetric(0.2),
                                                 Channel::bsc(0.5), 1);
    bool ok = worst < 1e-4 && flagged_ok && !deficient.checked &&
              deficient.rank == RankClass::deficient;
    std::ostringstream d;
    d << "optimal conditional equals the exact joint, max TV " << worst
      << " (tol 1e-4); BSC(0.5) flagged " << (deficient.checked ? "no" : "yes");
    report(2, ok, d.str());
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    Source src = MarkovSource::binary_symmetric(0.2);
    Channel ch = Channel::bsc(0.1);
    auto dist = matched_distortion(ch, source_marginal(src));
    auto code = optimal_small_code(src, ch, 8, 16, dist, 1);
    BlockCode enc = [&](const std::vector<int>& z) {
        return code.cb.words[code.encoder[pack_window(z, 0, 8, 2)]];
    };
    auto q = expected_empirical_exact(src, ch, enc, 8, 1);
    auto delta = mixing_coefficient_exhaustive(src, ch, 1, 6);
    auto rep = markov_violation(q, src, ch, delta.delta_k);
    double dt = seconds_since(t0);
    bool ok = rep.max_tv <= 2.0 * delta.delta_k && dt < 120.0;
    std::ostringstream d;
    d << "posterior deviation bound, max TV " << rep.max_tv << " <= 2 delta_1 = "
      << 2.0 * delta.delta_k << ", " << dt << " s";
    report(3, ok, d.str());
}

void criterion4() {
    Source src = MarkovSource::binary_symmetric(0.1);
    Channel ch = Channel::bsc(0.2);
    LossSpec ham = LossSpec::hamming(2);
    const int n = 4096, margin = 64, trials = 100;

    std::vector<double> per(trials);
    parallel_for(trials, 4, [&](int t) {
        uint64_t s = derive_seed(11, t);
        auto x = sample_path(src, n, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        auto y = posterior_path_sample(src, ch, z, derive_seed(s, 2));
        double acc = 0.0;
        for (int i = margin; i < n - margin; ++i) acc += x.symbols[i] != y.symbols[i];
        per[t] = acc / (n - 2 * margin);
    });
    double mean = 0.0;
    for (double v : per) mean += v;
    mean /= trials;
    double var = 0.0;
    for (double v : per) var += (v - mean) * (v - mean);
    double se = std::sqrt(var / (trials - 1.0) / trials);

    auto ref = posterior_losses(src, ch, ham, trials, n, margin, 12, 4);
    double comb = std::sqrt(se * se + ref.pair.std_err * ref.pair.std_err);
    bool ok = std::abs(mean - ref.pair.mean) <= 3 * comb && ref.bayes.mean < mean &&
              mean < ref.upper.mean;
    std::ostringstream d;
    d << "exact loss characterization, measured " << mean << " vs theoretical " << ref.pair.mean
      << " (3 sigma " << 3 * comb << "), bayes " << ref.bayes.mean << " < measured < upper "
      << ref.upper.mean;
    report(4, ok, d.str());
}

void criterion5() {
    Source src = IidSource(Pmf::uniform(2));
    Channel ch = Channel::bsc(0.2);
    auto dist = matched_distortion(ch, source_marginal(src));
    const double matched = *dist.level;  // h(0.2) nats
    double rate = (kLn2 - matched) + bits_to_nats(0.1);  // I(X;Z) + 0.1 bits

    // Long sequences are encoded in segments; the segment length sets the
    // codebook size (exp(b * rate) words).
    const int n = 1024, block = 32, trials = 200;
    Codebook cb = random_codebook(src, block, rate, 21);

    std::vector<double> dist_t(trials), loss_t(trials);
    parallel_for(trials, 4, [&](int t) {
        uint64_t s = derive_seed(31, t);
        auto x = sample_path(src, n, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        auto y = encode_blocks(cb, dist, z);
        double dd = 0.0, ll = 0.0;
        for (int i = 0; i < n; ++i) {
            dd += dist.values(z[i], y[i]);
            ll += x[i] != y[i];
        }
        dist_t[t] = dd / n;
        loss_t[t] = ll / n;
    });
    double md = 0.0, ml = 0.0;
    for (int t = 0; t < trials; ++t) {
        md += dist_t[t];
        ml += loss_t[t];
    }
    md /= trials;
    ml /= trials;

    const double pair = 2.0 * 0.2 * 0.8;  // E[F(alpha)] for the memoryless posterior
    bool ok = std::abs(md - matched) < 0.05 * matched && std::abs(ml - pair) < 0.15 * pair;
    std::ostringstream d;
    d << "random codebook at I+0.1 bits, distortion " << md << " vs " << matched
      << " (5%), hamming loss " << ml << " vs " << pair << " (15%)";
    report(5, ok, d.str());
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    auto forms = erasure_closed_forms(0.1, 0.5);
    bool exact = forms.bayes_loss == 0.0625;

    // Monte Carlo bayes_denoiser at the same point.
    Source src = MarkovSource::binary_symmetric(0.1);
    Channel ch = Channel::bec(0.5);
    LossSpec ham = LossSpec::hamming(2);
    const int n = 2048, margin = 64, trials = 64;
    auto mc_loss = [&](uint64_t seed, bool sample) {
        std::vector<double> per(trials);
        parallel_for(trials, 4, [&](int t) {
            uint64_t s = derive_seed(seed, t);
            auto x = sample_path(src, n, s);
            auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
            std::vector<int> y = sample ? posterior_path_sample(src, ch, z, derive_seed(s, 2)).symbols
                                        : bayes_denoiser(src, ch, z, ham);
            double acc = 0.0;
            for (int i = margin; i < n - margin; ++i) acc += x.symbols[i] != y[i];
            per[t] = acc / (n - 2 * margin);
        });
        double mean = 0.0;
        for (double v : per) mean += v;
        mean /= trials;
        double var = 0.0;
        for (double v : per) var += (v - mean) * (v - mean);
        return std::pair<double, double>{mean, std::sqrt(var / (trials - 1.0) / trials)};
    };
    auto [bm, bse] = mc_loss(41, false);
    bool bayes_mc = std::abs(bm - forms.bayes_loss) < 3 * bse;

    bool limit = true;
    for (double pe : {0.2, 0.5, 0.8})
        limit = limit &&
                std::abs(erasure_closed_forms(0.5 - 1e-13, pe).denoiser_loss - pe / 2) < 1e-10;

    bool grid_ok = true;
    for (double ps : {0.1, 0.2, 0.3})
        for (double pe : {0.25, 0.5, 0.75}) {
            src = MarkovSource::binary_symmetric(ps);
            ch = Channel::bec(pe);
            auto f = erasure_closed_forms(ps, pe);
            auto [m, se] = mc_loss(static_cast<uint64_t>(1000 * ps + 100 * pe), true);
            if (std::abs(m - f.denoiser_loss) >= 3 * se) grid_ok = false;
        }
    double dt = seconds_since(t0);
    bool ok = exact && bayes_mc && limit && grid_ok && dt < 300.0;
    std::ostringstream d;
    d << "erasure closed forms: bayes(0.1, 0.5) = 0.0625 " << (exact ? "exact" : "WRONG")
      << ", bayes MC " << bm << ", q->0 limit " << (limit ? "ok" : "off") << ", 3x3 grid "
      << (grid_ok ? "within 3 sigma" : "off") << ", " << dt << " s";
    report(6, ok, d.str());
}

void criterion7() {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i / 40.0);
    auto fig1 = figure_bsc_hamming(grid);
    bool fig1_ok = true;
    for (const auto& r : fig1) {
        if (!(r.bayes <= r.theoretical && r.theoretical <= r.upper)) fig1_ok = false;
        // Envelope and pair loss touch at alpha in {0, 1/2, 1}; the
        // coupling bound only at the endpoints.
        if (r.parameter == 0.0 || r.parameter == 1.0) {
            if (!(r.bayes == r.theoretical && r.theoretical == r.upper)) fig1_ok = false;
        } else if (r.parameter == 0.5) {
            if (!(std::abs(r.bayes - r.theoretical) < 1e-15 && r.theoretical < r.upper))
                fig1_ok = false;
        } else {
            if (!(r.bayes < r.theoretical && r.theoretical < r.upper)) fig1_ok = false;
        }
    }

    FigureOptions opt;
    opt.trials = 48;
    opt.path_len = 2048;
    opt.threads = 4;
    auto ordered = [](const std::vector<FigureRow>& rows) {
        for (const auto& r : rows) {
            double slack = 3 * r.empirical_std_err + 1e-12;
            if (!(r.bayes <= r.theoretical + 1e-12 && r.theoretical <= r.upper + 1e-12))
                return false;
            if (!(r.bayes - slack <= r.empirical && r.empirical <= r.upper + slack)) return false;
        }
        return true;
    };
    bool fig2_ok = ordered(figure_erasure_vs_pe({0.1, 0.3, 0.5, 0.7, 0.9}, 0.1, opt));
    bool fig3_ok = ordered(figure_erasure_vs_ps({0.05, 0.15, 0.25, 0.35, 0.45}, 0.5, opt));
    bool ok = fig1_ok && fig2_ok && fig3_ok;
    std::ostringstream d;
    d << "figure data: envelope ordering with boundary equalities "
      << (fig1_ok ? "ok" : "off") << ", erasure sweeps ordered " << (fig2_ok && fig3_ok ? "ok" : "off");
    report(7, ok, d.str());
}

void criterion8() {
    Source src = MarkovSource::binary_symmetric(0.2);
    Channel ch = Channel::bsc(0.1);
    std::vector<double> ks, lnd;
    for (int k = 0; k <= 8; ++k) {
        auto est = mixing_coefficient(src, ch, k, k + 16, 512, derive_seed(8, k), 4);
        if (est.delta_k > 0) {
            ks.push_back(k);
            lnd.push_back(std::log(est.delta_k));
        }
    }
    double mk = 0, ml = 0;
    for (size_t i = 0; i < ks.size(); ++i) {
        mk += ks[i];
        ml += lnd[i];
    }
    mk /= ks.size();
    ml /= ks.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < ks.size(); ++i) {
        sxx += (ks[i] - mk) * (ks[i] - mk);
        sxy += (ks[i] - mk) * (lnd[i] - ml);
        syy += (lnd[i] - ml) * (lnd[i] - ml);
    }
    double slope = sxy / sxx;
    double r2 = (sxy * sxy) / (sxx * syy);
    bool ok = ks.size() == 9 && slope < 0.0 && r2 >= 0.9;
    std::ostringstream d;
    d << "mixing decay, ln delta_k slope " << slope << ", R^2 " << r2 << " (need >= 0.9)";
    report(8, ok, d.str());
}

void criterion9() {
    auto rep = gaussian_example(3.0);
    bool values = std::abs(rep.compress_rate_bits - 1.0) < 1e-12 &&
                  std::abs(rep.compress_loss - 0.5) < 1e-12 &&
                  std::abs(rep.indirect_loss_at_r - 0.4375) < 1e-12 &&
                  rep.indirect_loss_at_r < rep.compress_loss;

    Pmf prior = Pmf::uniform(2);
    Channel ch = Channel::bsc(0.2);
    auto reduced = witsenhausen_reduce(ch, prior, LossSpec::hamming(2).table);
    Pmf obs = channel_output(ch, prior);
    Mat cand(2, 2);
    for (int z = 0; z < 2; ++z)
        for (int x = 0; x < 2; ++x) cand(z, x) = prior[x] * ch.prob(x, z) / obs[z];
    auto good = rdp_exponential_form_test(cand, reduced, obs, prior);

    Mat pert = cand;
    pert(0, 0) = 1.0;
    pert(0, 1) = 0.0;
    Pmf pert_out = Pmf::normalized_from(
        {obs[0] * pert(0, 0) + obs[1] * pert(1, 0), obs[0] * pert(0, 1) + obs[1] * pert(1, 1)});
    auto bad = rdp_exponential_form_test(pert, reduced, obs, pert_out);

    bool ok = values && good.satisfied && !bad.satisfied;
    std::ostringstream d;
    d << "gaussian closed forms (1 bit, 0.5, 0.4375) " << (values ? "ok" : "off")
      << "; exponential form satisfied=" << good.satisfied << " perturbed=" << bad.satisfied;
    report(9, ok, d.str());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion10(const std::string& cli) {
    if (cli.empty()) {
        report(10, false, "determinism: CLI path not supplied");
        return;
    }
    bool ok = true;
    std::string detail;
    struct Run {
        std::string args;
        std::string out;
    };
    std::vector<std::vector<Run>> groups = {
        {{"figure erasure-vs-pe --threads 1", "/tmp/cbd_acc_f1.csv"},
         {"figure erasure-vs-pe --threads 4", "/tmp/cbd_acc_f2.csv"}},
        {{"run denoise --threads 1", "/tmp/cbd_acc_d1.csv"},
         {"run denoise --threads 3", "/tmp/cbd_acc_d2.csv"}},
    };
    for (auto& g : groups) {
        std::vector<std::string> contents;
        for (auto& r : g) {
            std::string cmd = cli + " " + r.args + " --output " + r.out + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail = "CLI invocation failed: " + r.args;
                break;
            }
            contents.push_back(slurp(r.out));
        }
        if (contents.size() == 2 && contents[0] != contents[1]) {
            ok = false;
            detail = "outputs differ across thread counts: " + g[0].args;
        }
        if (!ok) break;
    }
    if (ok) detail = "byte-identical CSVs across thread counts";
    report(10, ok, "determinism: " + detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(cli);
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
