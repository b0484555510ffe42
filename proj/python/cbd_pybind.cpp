#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cbd/blahut_arimoto.hpp"
#include "cbd/channel.hpp"
#include "cbd/codebook.hpp"
#include "cbd/erasure.hpp"
#include "cbd/gaussian.hpp"
#include "cbd/hmm.hpp"
#include "cbd/identities.hpp"
#include "cbd/info.hpp"
#include "cbd/loss.hpp"
#include "cbd/mixing.hpp"
#include "cbd/source.hpp"

namespace py = pybind11;
using namespace cbd;

namespace {

Mat mat_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix: no rows");
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("matrix: ragged rows");
        for (size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
    return m;
}

std::vector<std::vector<double>> mat_to_rows(const Mat& m) {
    std::vector<std::vector<double>> rows(m.rows, std::vector<double>(m.cols));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) rows[r][c] = m(r, c);
    return rows;
}

Source make_source(const std::string& kind, double p_s) {
    if (kind == "iid") return IidSource(Pmf::uniform(2));
    if (kind == "markov") return MarkovSource::binary_symmetric(p_s);
    throw std::invalid_argument("source kind must be 'markov' or 'iid'");
}

Channel make_channel(const std::string& kind, double p) {
    if (kind == "bsc") return Channel::bsc(p);
    if (kind == "bec") return Channel::bec(p);
    throw std::invalid_argument("channel kind must be 'bsc' or 'bec'");
}

}  // namespace

PYBIND11_MODULE(cbdenoise, m) {
    m.doc() = "Finite-alphabet compression-based denoising toolkit";

    m.def("entropy", [](const std::vector<double>& p) { return entropy(p); },
          "Shannon entropy in nats");
    m.def("nats_to_bits", &nats_to_bits);
    m.def(
        "conditional_entropy",
        [](const std::string& ch_kind, double ch_p, const std::vector<double>& prior) {
            return conditional_entropy(make_channel(ch_kind, ch_p), Pmf(prior));
        },
        py::arg("channel"), py::arg("p"), py::arg("prior"), "H(Z|X) in nats");

    m.def(
        "matched_distortion",
        [](const std::string& ch_kind, double ch_p) {
            return mat_to_rows(matched_distortion(make_channel(ch_kind, ch_p)).values);
        },
        py::arg("channel"), py::arg("p"), "rho(z, y) = -ln P(z|y)");

    m.def(
        "sample_path",
        [](const std::string& src_kind, double p_s, int n, uint64_t seed) {
            return sample_path(make_source(src_kind, p_s), n, seed).symbols;
        },
        py::arg("source"), py::arg("p_s"), py::arg("n"), py::arg("seed"));

    m.def(
        "apply_channel",
        [](const std::string& ch_kind, double ch_p, const std::vector<int>& x, uint64_t seed) {
            return apply_channel(make_channel(ch_kind, ch_p), x, seed);
        },
        py::arg("channel"), py::arg("p"), py::arg("x"), py::arg("seed"));

    m.def(
        "forward_backward",
        [](const std::string& src_kind, double p_s, const std::string& ch_kind, double ch_p,
           const std::vector<int>& z) {
            auto pm = forward_backward(make_source(src_kind, p_s), make_channel(ch_kind, ch_p), z);
            return mat_to_rows(pm.rows);
        },
        py::arg("source"), py::arg("p_s"), py::arg("channel"), py::arg("p"), py::arg("z"),
        "Smoothed posteriors P(X_i | z^n), one row per index");

    m.def(
        "posterior_path_sample",
        [](const std::string& src_kind, double p_s, const std::string& ch_kind, double ch_p,
           const std::vector<int>& z, uint64_t seed) {
            return posterior_path_sample(make_source(src_kind, p_s), make_channel(ch_kind, ch_p),
                                         z, seed)
                .symbols;
        },
        py::arg("source"), py::arg("p_s"), py::arg("channel"), py::arg("p"), py::arg("z"),
        py::arg("seed"));

    m.def(
        "mixing_coefficient",
        [](const std::string& src_kind, double p_s, const std::string& ch_kind, double ch_p,
           int k, int w, int tails, uint64_t seed) {
            auto est = mixing_coefficient(make_source(src_kind, p_s), make_channel(ch_kind, ch_p),
                                          k, w, tails, seed);
            return est.delta_k;
        },
        py::arg("source"), py::arg("p_s"), py::arg("channel"), py::arg("p"), py::arg("k"),
        py::arg("w") = 16, py::arg("tails") = 512, py::arg("seed") = 1);

    m.def(
        "solve_at_distortion",
        [](const std::vector<double>& law, const std::vector<std::vector<double>>& dist,
           double target) {
            auto pt = solve_at_distortion(Pmf(law), mat_from_rows(dist), target);
            py::dict d;
            d["rate"] = pt.rate;
            d["distortion"] = pt.distortion;
            d["beta"] = pt.beta;
            d["converged"] = pt.converged;
            d["conditional"] = mat_to_rows(pt.conditional);
            return d;
        },
        py::arg("source_law"), py::arg("distortion"), py::arg("target"),
        "Blahut-Arimoto rate at a target distortion (nats)");

    m.def(
        "matched_identity_gap",
        [](const std::string& src_kind, double p_s, const std::string& ch_kind, double ch_p,
           int k) {
            auto rep =
                matched_level_identity_check(make_source(src_kind, p_s), make_channel(ch_kind, ch_p), k);
            py::dict d;
            d["matched_level"] = rep.matched_level;
            d["lhs_rate"] = rep.lhs_rate;
            d["rhs_rate"] = rep.rhs_rate;
            d["gap"] = rep.gap;
            return d;
        },
        py::arg("source"), py::arg("p_s"), py::arg("channel"), py::arg("p"), py::arg("k") = 1);

    m.def(
        "erasure_closed_forms",
        [](double p_s, double p_e) {
            auto f = erasure_closed_forms(p_s, p_e);
            py::dict d;
            d["bayes_loss"] = f.bayes_loss;
            d["denoiser_loss"] = f.denoiser_loss;
            d["terms_used"] = f.terms_used;
            return d;
        },
        py::arg("p_s"), py::arg("p_e"));

    m.def(
        "gaussian_example",
        [](double gamma) {
            auto r = gaussian_example(gamma);
            py::dict d;
            d["compress_rate_bits"] = r.compress_rate_bits;
            d["compress_loss"] = r.compress_loss;
            d["indirect_rate_at_l_bits"] = r.indirect_rate_at_l_bits;
            d["indirect_loss_at_r"] = r.indirect_loss_at_r;
            return d;
        },
        py::arg("gamma"));

    m.def(
        "posterior_losses",
        [](const std::string& src_kind, double p_s, const std::string& ch_kind, double ch_p,
           int trials, int path_len, int margin, uint64_t seed) {
            Source src = make_source(src_kind, p_s);
            auto rep = posterior_losses(src, make_channel(ch_kind, ch_p),
                                        LossSpec::hamming(source_alphabet_size(src)), trials,
                                        path_len, margin, seed);
            py::dict d;
            d["bayes"] = rep.bayes.mean;
            d["pair"] = rep.pair.mean;
            d["upper"] = rep.upper.mean;
            d["pair_std_err"] = rep.pair.std_err;
            return d;
        },
        py::arg("source"), py::arg("p_s"), py::arg("channel"), py::arg("p"),
        py::arg("trials") = 32, py::arg("path_len") = 1024, py::arg("margin") = 32,
        py::arg("seed") = 1, "Hamming-loss Bayes/pair/coupling functionals");
}
