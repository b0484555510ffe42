#include "cbd/info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbd {

double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

double entropy(const Pmf& p) {
    return entropy(p.p);
}

double joint_entropy(const JointPmf& j) {
    return entropy(j.p);
}

double mutual_information(const JointPmf& j) {
    if (j.dims.size() != 2) throw std::invalid_argument("mutual_information: need a pair joint");
    double mi = entropy(j.marginal(0)) + entropy(j.marginal(1)) - entropy(j.p);
    return mi < 0.0 ? 0.0 : mi;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double tv_distance(const Pmf& p, const Pmf& q) {
    return tv_distance(p.p, q.p);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        s += p[i] * std::log(p[i] / q[i]);
    }
    return s < 0.0 ? 0.0 : s;
}

}  // namespace cbd
