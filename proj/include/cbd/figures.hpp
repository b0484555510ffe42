#pragma once

#include <cstdint>
#include <vector>

#include "cbd/csv.hpp"

namespace cbd {

struct FigureRow {
    double parameter = 0.0;
    double bayes = 0.0;
    double theoretical = 0.0;
    double empirical = 0.0;
    double empirical_std_err = 0.0;
    double upper = 0.0;
};

struct FigureOptions {
    int trials = 64;
    int path_len = 4096;
    int margin = 64;
    uint64_t seed = 1;
    int threads = 1;
};

/// Bayes envelope phi(alpha), pair loss F(alpha) = 2 alpha (1-alpha), and
/// the coupling bound 2 phi(alpha) on a grid of posterior weights. All
/// three are closed forms; the empirical column repeats the pair loss.
std::vector<FigureRow> figure_bsc_hamming(const std::vector<double>& alpha_grid);

/// Binary symmetric source through an erasure channel, Hamming loss,
/// swept over the erasure probability at fixed switching probability.
/// Closed forms for bayes/theoretical/upper; the empirical column is the
/// posterior-sampling denoiser's measured loss.
std::vector<FigureRow> figure_erasure_vs_pe(const std::vector<double>& pe_grid, double p_s,
                                            const FigureOptions& opt);

/// Same family swept over the switching probability at fixed erasure
/// probability.
std::vector<FigureRow> figure_erasure_vs_ps(const std::vector<double>& ps_grid, double p_e,
                                            const FigureOptions& opt);

CsvTable figure_csv(const std::vector<FigureRow>& rows, const std::string& parameter_name);

}  // namespace cbd
