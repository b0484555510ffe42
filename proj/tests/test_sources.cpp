#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cbd/info.hpp"
#include "cbd/source.hpp"
#include "doctest.h"

using namespace cbd;

TEST_CASE("stationary distribution solves pi M = pi") {
    Mat m(2, 2);
    m(0, 0) = 0.9; m(0, 1) = 0.1;
    m(1, 0) = 0.2; m(1, 1) = 0.8;
    Pmf pi = stationary_distribution(m);
    CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    MarkovSource sym = MarkovSource::binary_symmetric(0.2);
    CHECK(sym.stationary[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("non-ergodic chains rejected") {
    Mat id(2, 2);
    id(0, 0) = 1.0; id(1, 1) = 1.0;  // reducible
    CHECK_THROWS(MarkovSource(id));
    Mat per(2, 2);
    per(0, 1) = 1.0; per(1, 0) = 1.0;  // periodic
    CHECK_THROWS(MarkovSource(per));
}

TEST_CASE("two point marginal") {
    MarkovSource src = MarkovSource::binary_symmetric(0.1);
    Mat m2 = two_point_marginal(src.transition, 2);
    // (1 + (1-2p)^2) / 2 at p = 0.1
    CHECK(m2(0, 0) == doctest::Approx(0.82).epsilon(1e-12));
    Mat m0 = two_point_marginal(src.transition, 0);
    CHECK(m0(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("block pmf closed form for k=2") {
    Source src = MarkovSource::binary_symmetric(0.2);
    JointPmf b = block_pmf(src, 2);
    CHECK(b.p[0] == doctest::Approx(0.4).epsilon(1e-12));  // (0,0)
    CHECK(b.p[1] == doctest::Approx(0.1).epsilon(1e-12));  // (0,1)
    CHECK(b.p[2] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(b.p[3] == doctest::Approx(0.4).epsilon(1e-12));

    double mass = 0.0;
    for (double v : block_pmf(src, 5).p) mass += v;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("iid block pmf is a product") {
    Source src = IidSource(Pmf({0.3, 0.7}));
    JointPmf b = block_pmf(src, 3);
    CHECK(b.p[0] == doctest::Approx(0.027).epsilon(1e-12));
    CHECK(b.p[7] == doctest::Approx(0.343).epsilon(1e-12));
}

TEST_CASE("entropy rate") {
    Source iid = IidSource(Pmf::uniform(2));
    CHECK(entropy_rate(iid) == doctest::Approx(kLn2).epsilon(1e-13));
    Source mk = MarkovSource::binary_symmetric(0.2);
    CHECK(entropy_rate(mk) == doctest::Approx(entropy(Pmf({0.2, 0.8}))).epsilon(1e-13));
}

TEST_CASE("sample path frequencies match the stationary law") {
    Source src = MarkovSource::binary_symmetric(0.3);
    const int n = 1000000;
    auto path = sample_path(src, n, 123);
    int ones = 0, switches = 0;
    for (int i = 0; i < n; ++i) {
        ones += path[i];
        if (i && path[i] != path[i - 1]) ++switches;
    }
    CHECK(std::abs(ones / double(n) - 0.5) < 4.0 / std::sqrt(double(n)));
    double se = std::sqrt(0.3 * 0.7 / n);
    CHECK(std::abs(switches / double(n - 1) - 0.3) < 4 * se);
}

TEST_CASE("sample path is seed deterministic") {
    Source src = MarkovSource::binary_symmetric(0.1);
    auto a = sample_path(src, 64, 5);
    auto b = sample_path(src, 64, 5);
    auto c = sample_path(src, 64, 6);
    CHECK(a.symbols == b.symbols);
    CHECK(a.symbols != c.symbols);
}
