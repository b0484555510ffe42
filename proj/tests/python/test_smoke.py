import math

import cbdenoise as cbd


def test_entropy():
    assert math.isclose(cbd.entropy([0.5, 0.5]), math.log(2.0), rel_tol=1e-14)
    assert cbd.entropy([1.0, 0.0]) == 0.0
    assert math.isclose(cbd.nats_to_bits(math.log(2.0)), 1.0, rel_tol=1e-14)


def test_matched_distortion_and_level():
    rho = cbd.matched_distortion("bsc", 0.1)
    assert math.isclose(rho[0][0], -math.log(0.9), rel_tol=1e-14)
    assert math.isclose(rho[0][1], -math.log(0.1), rel_tol=1e-14)
    h = cbd.conditional_entropy("bsc", 0.1, [0.5, 0.5])
    assert math.isclose(h, -0.1 * math.log(0.1) - 0.9 * math.log(0.9), rel_tol=1e-14)


def test_matched_identity_gap():
    rep = cbd.matched_identity_gap("markov", 0.2, "bsc", 0.1, k=2)
    assert cbd.nats_to_bits(rep["gap"]) < 1e-3
    assert math.isclose(rep["lhs_rate"], rep["rhs_rate"], abs_tol=1e-6)


def test_blahut_arimoto_binary_hamming():
    pt = cbd.solve_at_distortion([0.5, 0.5], [[0.0, 1.0], [1.0, 0.0]], 0.1)
    h2 = -0.1 * math.log(0.1) - 0.9 * math.log(0.9)
    assert math.isclose(pt["distortion"], 0.1, abs_tol=1e-9)
    assert math.isclose(pt["rate"], math.log(2.0) - h2, abs_tol=1e-7)


def test_erasure_closed_forms():
    f = cbd.erasure_closed_forms(0.1, 0.5)
    assert f["bayes_loss"] == 0.0625
    assert 0.0625 < f["denoiser_loss"] < 0.125


def test_gaussian_example():
    r = cbd.gaussian_example(3.0)
    assert math.isclose(r["compress_rate_bits"], 1.0, abs_tol=1e-12)
    assert math.isclose(r["compress_loss"], 0.5, abs_tol=1e-12)
    assert math.isclose(r["indirect_loss_at_r"], 0.4375, abs_tol=1e-12)


def test_path_sampling_roundtrip():
    x = cbd.sample_path("markov", 0.2, 64, 7)
    z = cbd.apply_channel("bsc", 0.1, x, 8)
    assert len(z) == 64 and set(z) <= {0, 1}
    post = cbd.forward_backward("markov", 0.2, "bsc", 0.1, z)
    assert len(post) == 64
    assert all(math.isclose(sum(row), 1.0, rel_tol=1e-12) for row in post)
    y1 = cbd.posterior_path_sample("markov", 0.2, "bsc", 0.1, z, 3)
    y2 = cbd.posterior_path_sample("markov", 0.2, "bsc", 0.1, z, 3)
    assert y1 == y2


def test_posterior_losses_ordering():
    rep = cbd.posterior_losses("markov", 0.1, "bsc", 0.2, trials=16, path_len=512)
    assert rep["bayes"] <= rep["pair"] <= rep["upper"]
