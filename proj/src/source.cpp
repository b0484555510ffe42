#include "cbd/source.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "cbd/info.hpp"
#include "cbd/rng.hpp"

namespace cbd {

namespace {

Eigen::MatrixXd to_eigen(const Mat& m) {
    Eigen::MatrixXd e(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) e(r, c) = m(r, c);
    return e;
}

void check_stochastic(const Mat& m) {
    if (m.rows != m.cols || m.rows < 1)
        throw std::invalid_argument("transition matrix must be square");
    for (int r = 0; r < m.rows; ++r) {
        double mass = 0.0;
        for (int c = 0; c < m.cols; ++c) {
            if (!(m(r, c) >= 0.0)) throw std::invalid_argument("transition: negative entry");
            mass += m(r, c);
        }
        if (std::abs(mass - 1.0) > kMassTol)
            throw std::invalid_argument("transition: row is not a pmf");
    }
}

// A finite chain is irreducible and aperiodic iff some power of M is
// strictly positive; n^2 - 2n + 2 steps suffice (Wielandt).
bool is_primitive(const Mat& m) {
    const int n = m.rows;
    Eigen::MatrixXd p = to_eigen(m);
    int needed = n * n - 2 * n + 2;
    Eigen::MatrixXd acc = p;
    int steps = 1;
    while (steps < needed) {
        acc = acc * p;
        ++steps;
    }
    return (acc.array() > 0.0).all();
}

}  // namespace

Pmf stationary_distribution(const Mat& transition) {
    check_stochastic(transition);
    if (!is_primitive(transition))
        throw std::invalid_argument("chain is not irreducible and aperiodic");
    const int n = transition.rows;
    // Solve pi (M - I) = 0 with sum pi = 1 as an overdetermined system.
    Eigen::MatrixXd a = to_eigen(transition).transpose() - Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sys(n + 1, n);
    sys.topRows(n) = a;
    sys.row(n).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    Eigen::VectorXd pi = sys.colPivHouseholderQr().solve(rhs);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = pi(i) < 0.0 ? 0.0 : pi(i);
    return Pmf::normalized_from(std::move(v));
}

MarkovSource::MarkovSource(Mat transition_matrix)
    : transition(std::move(transition_matrix)), stationary(stationary_distribution(transition)) {}

MarkovSource MarkovSource::binary_symmetric(double p_s) {
    if (!(p_s > 0.0 && p_s < 1.0))
        throw std::invalid_argument("binary_symmetric: p_s must be in (0,1)");
    Mat m(2, 2);
    m(0, 0) = 1.0 - p_s; m(0, 1) = p_s;
    m(1, 0) = p_s;       m(1, 1) = 1.0 - p_s;
    return MarkovSource(std::move(m));
}

int source_alphabet_size(const Source& src) {
    return std::visit([](const auto& s) { return s.alphabet_size(); }, src);
}

const Pmf& source_marginal(const Source& src) {
    if (const auto* m = std::get_if<MarkovSource>(&src)) return m->stationary;
    return std::get<IidSource>(src).law;
}

Mat source_transition(const Source& src) {
    if (const auto* m = std::get_if<MarkovSource>(&src)) return m->transition;
    const auto& law = std::get<IidSource>(src).law;
    Mat t(law.size(), law.size());
    for (int r = 0; r < law.size(); ++r)
        for (int c = 0; c < law.size(); ++c) t(r, c) = law[c];
    return t;
}

SamplePath sample_path(const Source& src, int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_path: n must be >= 1");
    Rng rng(seed);
    SamplePath path;
    path.seed = seed;
    path.symbols.resize(n);
    const Pmf& init = source_marginal(src);
    path.symbols[0] = rng.sample_pmf(init.p);
    if (const auto* m = std::get_if<MarkovSource>(&src)) {
        std::vector<double> row(m->alphabet_size());
        for (int i = 1; i < n; ++i) {
            int prev = path.symbols[i - 1];
            for (int c = 0; c < m->alphabet_size(); ++c) row[c] = m->transition(prev, c);
            path.symbols[i] = rng.sample_pmf(row);
        }
    } else {
        const auto& law = std::get<IidSource>(src).law;
        for (int i = 1; i < n; ++i) path.symbols[i] = rng.sample_pmf(law.p);
    }
    return path;
}

JointPmf block_pmf(const Source& src, int k) {
    if (k < 1) throw std::invalid_argument("block_pmf: k must be >= 1");
    const int ax = source_alphabet_size(src);
    double cells = std::pow(static_cast<double>(ax), k);
    if (cells > static_cast<double>(1 << 22))
        throw std::invalid_argument("block_pmf: |X|^k exceeds enumeration budget");
    const Pmf& init = source_marginal(src);
    Mat trans = source_transition(src);
    size_t total = static_cast<size_t>(cells);
    std::vector<double> p(total);
    for (size_t idx = 0; idx < total; ++idx) {
        size_t rem = idx;
        std::vector<int> sym(k);
        for (int i = k - 1; i >= 0; --i) {
            sym[i] = static_cast<int>(rem % ax);
            rem /= ax;
        }
        double prob = init[sym[0]];
        for (int i = 1; i < k && prob > 0.0; ++i) prob *= trans(sym[i - 1], sym[i]);
        p[idx] = prob;
    }
    return JointPmf(std::vector<int>(k, ax), std::move(p));
}

Mat two_point_marginal(const Mat& transition, int gap) {
    if (gap < 0) throw std::invalid_argument("two_point_marginal: gap must be >= 0");
    const int n = transition.rows;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd m = to_eigen(transition);
    for (int i = 0; i < gap; ++i) acc = acc * m;
    Mat out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = acc(r, c);
    return out;
}

double entropy_rate(const Source& src) {
    if (const auto* iid = std::get_if<IidSource>(&src)) return entropy(iid->law);
    const auto& m = std::get<MarkovSource>(src);
    double h = 0.0;
    for (int x = 0; x < m.alphabet_size(); ++x) {
        std::vector<double> row(m.alphabet_size());
        for (int c = 0; c < m.alphabet_size(); ++c) row[c] = m.transition(x, c);
        h += m.stationary[x] * entropy(row);
    }
    return h;
}

}  // namespace cbd
