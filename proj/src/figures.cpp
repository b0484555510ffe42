#include "cbd/figures.hpp"

#include <cmath>

#include "cbd/erasure.hpp"
#include "cbd/hmm.hpp"
#include "cbd/loss.hpp"
#include "cbd/parallel.hpp"
#include "cbd/rng.hpp"

namespace cbd {

std::vector<FigureRow> figure_bsc_hamming(const std::vector<double>& alpha_grid) {
    std::vector<FigureRow> rows;
    rows.reserve(alpha_grid.size());
    for (double a : alpha_grid) {
        FigureRow r;
        r.parameter = a;
        r.bayes = hamming_bayes_envelope(a);
        r.theoretical = hamming_pair_loss(a);
        r.empirical = r.theoretical;
        r.upper = 2.0 * hamming_bayes_envelope(a);
        rows.push_back(r);
    }
    return rows;
}

namespace {

/// Measured Hamming loss of the posterior-sampling denoiser on the binary
/// symmetric source + erasure channel.
void fill_erasure_row(FigureRow& r, double p_s, double p_e, const FigureOptions& opt,
                      uint64_t row_seed) {
    auto forms = erasure_closed_forms(p_s, p_e);
    r.bayes = forms.bayes_loss;
    r.theoretical = forms.denoiser_loss;
    r.upper = 2.0 * forms.bayes_loss;

    Source src = MarkovSource::binary_symmetric(p_s);
    Channel ch = Channel::bec(p_e);
    const int n = opt.path_len;
    std::vector<double> per(opt.trials);
    parallel_for(opt.trials, opt.threads, [&](int t) {
        uint64_t s = derive_seed(row_seed, t);
        auto x = sample_path(src, n, s);
        auto z = apply_channel(ch, x.symbols, derive_seed(s, 1));
        auto y = posterior_path_sample(src, ch, z, derive_seed(s, 2));
        double mism = 0.0;
        int count = 0;
        for (int i = opt.margin; i < n - opt.margin; ++i) {
            mism += x.symbols[i] != y.symbols[i] ? 1.0 : 0.0;
            ++count;
        }
        per[t] = mism / count;
    });
    double mean = 0.0;
    for (double v : per) mean += v;
    mean /= opt.trials;
    double var = 0.0;
    for (double v : per) var += (v - mean) * (v - mean);
    r.empirical = mean;
    r.empirical_std_err =
        opt.trials > 1 ? std::sqrt(var / (opt.trials - 1.0) / opt.trials) : 0.0;
}

}  // namespace

std::vector<FigureRow> figure_erasure_vs_pe(const std::vector<double>& pe_grid, double p_s,
                                            const FigureOptions& opt) {
    std::vector<FigureRow> rows(pe_grid.size());
    for (size_t i = 0; i < pe_grid.size(); ++i) {
        rows[i].parameter = pe_grid[i];
        if (pe_grid[i] == 0.0) continue;  // all curves are exactly 0
        fill_erasure_row(rows[i], p_s, pe_grid[i], opt, derive_seed(opt.seed, i));
    }
    return rows;
}

std::vector<FigureRow> figure_erasure_vs_ps(const std::vector<double>& ps_grid, double p_e,
                                            const FigureOptions& opt) {
    std::vector<FigureRow> rows(ps_grid.size());
    for (size_t i = 0; i < ps_grid.size(); ++i) {
        rows[i].parameter = ps_grid[i];
        fill_erasure_row(rows[i], ps_grid[i], p_e, opt, derive_seed(opt.seed, i));
    }
    return rows;
}

CsvTable figure_csv(const std::vector<FigureRow>& rows, const std::string& parameter_name) {
    CsvTable t;
    t.header = {parameter_name, "bayes", "theoretical", "empirical", "empirical_std_err",
                "upper_bound"};
    for (const auto& r : rows)
        t.rows.push_back(
            {r.parameter, r.bayes, r.theoretical, r.empirical, r.empirical_std_err, r.upper});
    return t;
}

}  // namespace cbd
