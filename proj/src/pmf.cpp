#include "cbd/pmf.hpp"

#include <cmath>
#include <numeric>

namespace cbd {

namespace {

void check_mass(const std::vector<double>& v, const char* what) {
    double mass = 0.0;
    for (double x : v) {
        if (!(x >= -1e-15) || std::isnan(x))
            throw std::invalid_argument(std::string(what) + ": negative or NaN entry");
        mass += x;
    }
    if (std::abs(mass - 1.0) > kMassTol)
        throw std::invalid_argument(std::string(what) + ": mass " + std::to_string(mass) +
                                    " is not 1 within tolerance");
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : p(std::move(probs)) {
    if (p.empty()) throw std::invalid_argument("pmf: empty");
    check_mass(p, "pmf");
    for (double& x : p)
        if (x < 0.0) x = 0.0;
}

Pmf Pmf::normalized_from(std::vector<double> weights) {
    double mass = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(mass > 0.0)) throw std::invalid_argument("normalized_from: total weight not positive");
    for (double& w : weights) w /= mass;
    return Pmf(std::move(weights));
}

Pmf Pmf::uniform(int n) {
    return Pmf(std::vector<double>(n, 1.0 / n));
}

Pmf Pmf::point_mass(int n, int at) {
    std::vector<double> v(n, 0.0);
    v.at(at) = 1.0;
    return Pmf(std::move(v));
}

JointPmf::JointPmf(std::vector<int> dimensions, std::vector<double> probs)
    : dims(std::move(dimensions)), p(std::move(probs)) {
    size_t n = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("joint pmf: dimension < 1");
        n *= static_cast<size_t>(d);
    }
    if (p.size() != n) throw std::invalid_argument("joint pmf: size does not match dims");
    check_mass(p, "joint pmf");
    for (double& x : p)
        if (x < 0.0) x = 0.0;
}

size_t JointPmf::total_cells() const {
    return p.size();
}

size_t JointPmf::flat_index(const std::vector<int>& idx) const {
    size_t f = 0;
    for (size_t c = 0; c < dims.size(); ++c) f = f * dims[c] + idx[c];
    return f;
}

Pmf JointPmf::marginal(int coord) const {
    std::vector<double> m(dims[coord], 0.0);
    size_t after = 1;
    for (size_t c = coord + 1; c < dims.size(); ++c) after *= dims[c];
    const size_t d = dims[coord];
    for (size_t i = 0; i < p.size(); ++i) m[(i / after) % d] += p[i];
    return Pmf(std::move(m));
}

JointPmf JointPmf::marginalize_out(int coord) const {
    std::vector<int> nd;
    for (size_t c = 0; c < dims.size(); ++c)
        if (static_cast<int>(c) != coord) nd.push_back(dims[c]);
    size_t after = 1;
    for (size_t c = coord + 1; c < dims.size(); ++c) after *= dims[c];
    const size_t d = dims[coord];
    std::vector<double> np(p.size() / d, 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
        size_t lo = i % after;
        size_t hi = i / (after * d);
        np[hi * after + lo] += p[i];
    }
    return JointPmf(std::move(nd), std::move(np));
}

JointPmf JointPmf::pair_marginal(int coord_a, int coord_b) const {
    std::vector<size_t> stride(dims.size());
    size_t s = 1;
    for (int c = static_cast<int>(dims.size()) - 1; c >= 0; --c) {
        stride[c] = s;
        s *= dims[c];
    }
    const int da = dims[coord_a], db = dims[coord_b];
    std::vector<double> np(static_cast<size_t>(da) * db, 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
        int ia = static_cast<int>((i / stride[coord_a]) % da);
        int ib = static_cast<int>((i / stride[coord_b]) % db);
        np[static_cast<size_t>(ia) * db + ib] += p[i];
    }
    return JointPmf({da, db}, std::move(np));
}

JointPmf JointPmf::from_matrix(const Mat& m) {
    return JointPmf({m.rows, m.cols}, m.a);
}

Mat JointPmf::as_matrix() const {
    if (dims.size() != 2) throw std::logic_error("as_matrix: joint is not two-coordinate");
    Mat m(dims[0], dims[1]);
    m.a = p;
    return m;
}

}  // namespace cbd
