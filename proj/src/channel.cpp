#include "cbd/channel.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbd/info.hpp"
#include "cbd/rng.hpp"

namespace cbd {

Channel::Channel(Mat matrix) : m(std::move(matrix)) {
    if (m.rows < 1 || m.cols < 1) throw std::invalid_argument("channel: empty matrix");
    for (int x = 0; x < m.rows; ++x) {
        double mass = 0.0;
        for (int z = 0; z < m.cols; ++z) {
            double v = m(x, z);
            if (!(v >= 0.0) || std::isnan(v))
                throw std::invalid_argument("channel: negative or NaN entry");
            mass += v;
        }
        if (std::abs(mass - 1.0) > kMassTol)
            throw std::invalid_argument("channel: row " + std::to_string(x) + " is not a pmf");
    }
}

Pmf Channel::row(int x) const {
    std::vector<double> r(m.cols);
    for (int z = 0; z < m.cols; ++z) r[z] = m(x, z);
    return Pmf(std::move(r));
}

Channel Channel::bsc(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bsc: p out of range");
    Mat m(2, 2);
    m(0, 0) = 1.0 - p; m(0, 1) = p;
    m(1, 0) = p;       m(1, 1) = 1.0 - p;
    return Channel(std::move(m));
}

Channel Channel::bec(double p_e) {
    if (p_e < 0.0 || p_e >= 1.0) throw std::invalid_argument("bec: p_e out of [0,1)");
    Mat m(2, 3);
    m(0, 0) = 1.0 - p_e; m(0, 1) = 0.0;        m(0, 2) = p_e;
    m(1, 0) = 0.0;       m(1, 1) = 1.0 - p_e;  m(1, 2) = p_e;
    return Channel(std::move(m));
}

Channel Channel::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return Channel(std::move(m));
}

double conditional_entropy(const Channel& ch, const Pmf& prior) {
    if (prior.size() != ch.input_size())
        throw std::invalid_argument("conditional_entropy: prior dimension mismatch");
    double h = 0.0;
    for (int x = 0; x < ch.input_size(); ++x) {
        if (prior[x] == 0.0) continue;
        for (int z = 0; z < ch.output_size(); ++z) {
            double v = ch.prob(x, z);
            if (v > 0.0) h -= prior[x] * v * std::log(v);
        }
    }
    return h;
}

DistortionMatrix matched_distortion(const Channel& ch) {
    DistortionMatrix d;
    d.values = Mat(ch.output_size(), ch.input_size());
    for (int z = 0; z < ch.output_size(); ++z)
        for (int y = 0; y < ch.input_size(); ++y) {
            double v = ch.prob(y, z);
            d.values(z, y) = v > 0.0 ? -std::log(v) : std::numeric_limits<double>::infinity();
        }
    return d;
}

DistortionMatrix matched_distortion(const Channel& ch, const Pmf& prior) {
    DistortionMatrix d = matched_distortion(ch);
    d.level = conditional_entropy(ch, prior);
    return d;
}

JointPmf channel_joint_zx(const Channel& ch, const Pmf& prior) {
    if (prior.size() != ch.input_size())
        throw std::invalid_argument("channel_joint_zx: prior dimension mismatch");
    std::vector<double> p(static_cast<size_t>(ch.output_size()) * ch.input_size());
    for (int z = 0; z < ch.output_size(); ++z)
        for (int x = 0; x < ch.input_size(); ++x)
            p[static_cast<size_t>(z) * ch.input_size() + x] = prior[x] * ch.prob(x, z);
    return JointPmf({ch.output_size(), ch.input_size()}, std::move(p));
}

Pmf channel_output(const Channel& ch, const Pmf& prior) {
    std::vector<double> pz(ch.output_size(), 0.0);
    for (int x = 0; x < ch.input_size(); ++x)
        for (int z = 0; z < ch.output_size(); ++z) pz[z] += prior[x] * ch.prob(x, z);
    return Pmf(std::move(pz));
}

RankClass channel_rank_class(const Channel& ch) {
    Eigen::MatrixXd em(ch.m.rows, ch.m.cols);
    for (int r = 0; r < ch.m.rows; ++r)
        for (int c = 0; c < ch.m.cols; ++c) em(r, c) = ch.m(r, c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
    const auto& sv = svd.singularValues();
    double tol = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    if (rank < ch.m.rows) return RankClass::deficient;
    return ch.m.rows == ch.m.cols ? RankClass::invertible : RankClass::full_row_rank;
}

std::vector<int> apply_channel(const Channel& ch, const std::vector<int>& x, uint64_t seed) {
    Rng rng(seed);
    std::vector<int> z(x.size());
    std::vector<double> row(ch.output_size());
    for (size_t i = 0; i < x.size(); ++i) {
        for (int c = 0; c < ch.output_size(); ++c) row[c] = ch.prob(x[i], c);
        z[i] = rng.sample_pmf(row);
    }
    return z;
}

const char* to_string(RankClass rc) {
    switch (rc) {
        case RankClass::invertible: return "invertible";
        case RankClass::full_row_rank: return "full_row_rank";
        default: return "deficient";
    }
}

}  // namespace cbd
