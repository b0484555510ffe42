#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cbd/channel.hpp"
#include "cbd/codebook.hpp"
#include "cbd/hmm.hpp"
#include "cbd/info.hpp"
#include "cbd/rng.hpp"
#include "cbd/source.hpp"
#include "doctest.h"

using namespace cbd;

TEST_CASE("random codebook size and word statistics") {
    Source src = MarkovSource::binary_symmetric(0.2);
    Codebook cb = random_codebook(src, 16, 0.3, 5);
    CHECK(cb.words.size() == static_cast<size_t>(std::ceil(std::exp(16 * 0.3))));
    CHECK(cb.rate_nats == doctest::Approx(std::log(double(cb.words.size())) / 16));

    // Codeword statistics follow the source law: symbol frequency 1/2,
    // switch frequency p_s.
    double ones = 0, switches = 0, pairs = 0;
    for (const auto& w : cb.words)
        for (size_t i = 0; i < w.size(); ++i) {
            ones += w[i];
            if (i) {
                switches += w[i] != w[i - 1];
                ++pairs;
            }
        }
    double n = cb.words.size() * 16.0;
    CHECK(std::abs(ones / n - 0.5) < 4.0 * std::sqrt(0.25 / n));
    CHECK(std::abs(switches / pairs - 0.2) < 4.0 * std::sqrt(0.16 / pairs));

    CHECK_THROWS(random_codebook(src, 1024, 0.3, 5));  // word count budget
}

TEST_CASE("encoding picks the minimum distortion word with lowest-index ties") {
    Channel ch = Channel::bsc(0.1);
    auto dist = matched_distortion(ch);
    Codebook cb;
    cb.n = 4;
    cb.words = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    cb.rate_nats = std::log(3.0) / 4;
    auto r = encode(cb, dist, {0, 0, 1, 1});
    CHECK(r.index == 0);  // word 2 ties but loses on index
    CHECK(r.distortion == doctest::Approx(-std::log(0.9)));
}

TEST_CASE("encode_blocks stitches block encodings") {
    Channel ch = Channel::bsc(0.1);
    auto dist = matched_distortion(ch);
    Source src = IidSource(Pmf::uniform(2));
    Codebook cb = random_codebook(src, 8, 0.6, 11);
    auto z = sample_path(src, 20, 42).symbols;  // 2 full blocks + tail of 4
    auto y = encode_blocks(cb, dist, z);
    REQUIRE(y.size() == z.size());
    std::vector<int> b0(z.begin(), z.begin() + 8);
    auto r0 = encode(cb, dist, b0);
    for (int i = 0; i < 8; ++i) CHECK(y[i] == r0.y[i]);
}

TEST_CASE("optimal small code recovers the noiseless identity") {
    Source src = MarkovSource::binary_symmetric(0.2);
    Channel ch = Channel::identity(2);
    auto dist = matched_distortion(ch);
    // Enough words to reproduce every sequence of length 2 exactly.
    auto code = optimal_small_code(src, ch, 2, 4, dist, 3, 8);
    CHECK(code.expected_distortion == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("optimal small code improves with more words") {
    Source src = MarkovSource::binary_symmetric(0.2);
    Channel ch = Channel::bsc(0.1);
    auto dist = matched_distortion(ch);
    auto small = optimal_small_code(src, ch, 6, 2, dist, 3, 8);
    auto large = optimal_small_code(src, ch, 6, 8, dist, 3, 8);
    CHECK(large.expected_distortion <= small.expected_distortion + 1e-12);
    CHECK(small.expected_distortion >= 0.0);
}

TEST_CASE("codebook distortion overshoots below the matched level at high rate") {
    Source src = IidSource(Pmf::uniform(2));
    Channel ch = Channel::bsc(0.2);
    auto dist = matched_distortion(ch, source_marginal(src));
    // Rate far above I(X;Z) = ln2 - h2(0.2): distortion dips below H(Z|X).
    Codebook rich = random_codebook(src, 16, 0.62, 7);
    auto rep = goodness_report(rich, dist, src, ch, 200, 13, 2);
    CHECK(rep.mean_distortion < rep.target_d);

    // Rate zero: a single word cannot do better than the matched level.
    Codebook poor = random_codebook(src, 16, 0.0, 7);
    auto rep0 = goodness_report(poor, dist, src, ch, 200, 13, 2);
    CHECK(rep0.mean_distortion > rep.mean_distortion);
}

TEST_CASE("posterior sampling denoiser marginal calibration") {
    Source src = MarkovSource::binary_symmetric(0.1);
    Channel ch = Channel::bsc(0.2);
    auto x = sample_path(src, 10, 77);
    auto z = apply_channel(ch, x.symbols, 78);
    auto pm = forward_backward(src, ch, z);
    const int trials = 30000;
    std::vector<double> freq(10, 0.0);
    for (int t = 0; t < trials; ++t) {
        auto y = posterior_sampling_denoiser(src, ch, z, derive_seed(9, t));
        for (int i = 0; i < 10; ++i) freq[i] += y.symbols[i];
    }
    for (int i = 0; i < 10; ++i) {
        double p = pm.rows(i, 1);
        double se = std::sqrt(std::max(p * (1 - p), 1e-9) / trials);
        CHECK(std::abs(freq[i] / trials - p) < 4 * se);
    }
}
