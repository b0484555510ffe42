#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbd {

constexpr double kMassTol = 1e-12;

/// Dense row-major matrix of doubles. Entries may be +infinity where a
/// table holds extended-real distortions.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

struct Alphabet {
    int size = 0;
    std::vector<std::string> labels;  // empty or exactly `size` entries

    Alphabet() = default;
    explicit Alphabet(int n) : size(n) {
        if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
    }
    Alphabet(int n, std::vector<std::string> lab) : size(n), labels(std::move(lab)) {
        if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
        if (!labels.empty() && static_cast<int>(labels.size()) != n)
            throw std::invalid_argument("label count does not match alphabet size");
    }
};

/// Probability vector over a finite alphabet. Construction validates
/// non-negativity and unit mass; use normalized_from() to build from
/// unnormalized weights.
struct Pmf {
    std::vector<double> p;

    Pmf() = default;
    explicit Pmf(std::vector<double> probs);

    static Pmf normalized_from(std::vector<double> weights);
    static Pmf uniform(int n);
    static Pmf point_mass(int n, int at);

    int size() const { return static_cast<int>(p.size()); }
    double operator[](int i) const { return p[i]; }
};

/// Joint pmf over a product of finite alphabets, stored as a flat
/// row-major table with the first coordinate slowest.
struct JointPmf {
    std::vector<int> dims;
    std::vector<double> p;

    JointPmf() = default;
    JointPmf(std::vector<int> dimensions, std::vector<double> probs);

    size_t total_cells() const;
    size_t flat_index(const std::vector<int>& idx) const;

    Pmf marginal(int coord) const;
    /// Sums out the given coordinate, returning the joint over the rest.
    JointPmf marginalize_out(int coord) const;
    /// Collapses to a two-coordinate joint (coord_a slow, coord_b fast).
    JointPmf pair_marginal(int coord_a, int coord_b) const;

    static JointPmf from_matrix(const Mat& m);
    Mat as_matrix() const;  // requires exactly two coordinates
};

}  // namespace cbd
