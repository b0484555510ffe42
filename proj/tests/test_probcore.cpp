#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "cbd/channel.hpp"
#include "cbd/csv.hpp"
#include "cbd/info.hpp"
#include "cbd/matrix_io.hpp"
#include "cbd/pmf.hpp"
#include "cbd/rng.hpp"
#include "doctest.h"

using namespace cbd;

namespace {
double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log(p) - (1 - p) * std::log(1 - p); }
}  // namespace

TEST_CASE("pmf validation") {
    CHECK_THROWS(Pmf({0.5, 0.6}));
    CHECK_THROWS(Pmf({-0.1, 1.1}));
    CHECK(Pmf::uniform(4)[2] == doctest::Approx(0.25));
    CHECK(Pmf::point_mass(3, 1)[1] == 1.0);
    Pmf n = Pmf::normalized_from({2.0, 6.0});
    CHECK(n[0] == doctest::Approx(0.25));
}

TEST_CASE("joint pmf marginals") {
    JointPmf j({2, 2}, {0.1, 0.2, 0.3, 0.4});
    Pmf a = j.marginal(0);
    CHECK(a[0] == doctest::Approx(0.3));
    Pmf b = j.marginal(1);
    CHECK(b[1] == doctest::Approx(0.6));
    JointPmf j3({2, 2, 2}, {0.05, 0.05, 0.1, 0.1, 0.15, 0.15, 0.2, 0.2});
    JointPmf pm = j3.pair_marginal(0, 2);
    CHECK(pm.p[0] == doctest::Approx(0.15));
}

TEST_CASE("entropy closed forms") {
    CHECK(entropy(Pmf::uniform(2)) == doctest::Approx(kLn2).epsilon(1e-14));
    CHECK(entropy(Pmf::point_mass(5, 2)) == 0.0);
    // binary entropy at 0.1 computed independently
    CHECK(entropy(Pmf({0.1, 0.9})) == doctest::Approx(0.3250829733914482).epsilon(1e-14));
    CHECK(nats_to_bits(kLn2) == doctest::Approx(1.0));
}

TEST_CASE("mutual information of a bsc with uniform input") {
    Channel ch = Channel::bsc(0.1);
    JointPmf j = channel_joint_zx(ch, Pmf::uniform(2));
    CHECK(mutual_information(j) == doctest::Approx(kLn2 - h2(0.1)).epsilon(1e-13));
    JointPmf ind({2, 2}, {0.25, 0.25, 0.25, 0.25});
    CHECK(mutual_information(ind) == doctest::Approx(0.0));
}

TEST_CASE("tv and kl") {
    CHECK(tv_distance(Pmf({1.0, 0.0}), Pmf({0.0, 1.0})) == doctest::Approx(1.0));
    CHECK(tv_distance(Pmf::uniform(2), Pmf::uniform(2)) == doctest::Approx(0.0));
    CHECK(kl_divergence(Pmf::uniform(2), Pmf::uniform(2)) == doctest::Approx(0.0));
    CHECK(std::isinf(kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}))));
}

TEST_CASE("channel construction and classification") {
    CHECK_THROWS(Channel(Mat(2, 2, 0.3)));
    CHECK(channel_rank_class(Channel::bsc(0.1)) == RankClass::invertible);
    CHECK(channel_rank_class(Channel::bec(0.5)) == RankClass::full_row_rank);
    CHECK(channel_rank_class(Channel::bsc(0.5)) == RankClass::deficient);
    CHECK(channel_rank_class(Channel::identity(3)) == RankClass::invertible);
}

TEST_CASE("matched distortion and level") {
    Channel ch = Channel::bsc(0.2);
    auto d = matched_distortion(ch, Pmf::uniform(2));
    CHECK(d.values(0, 0) == doctest::Approx(-std::log(0.8)));
    CHECK(d.values(0, 1) == doctest::Approx(-std::log(0.2)));
    CHECK(*d.level == doctest::Approx(h2(0.2)).epsilon(1e-14));

    auto e = matched_distortion(Channel::bec(0.5));
    CHECK(std::isinf(e.values(0, 1)));  // z=0 unreachable from y=1
    CHECK(e.values(2, 0) == doctest::Approx(kLn2));
    CHECK(*matched_distortion(Channel::identity(2), Pmf::uniform(2)).level == 0.0);
}

TEST_CASE("matrix io round trip") {
    Mat m(2, 3);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = 0.1 * (3 * r + c) + 1.0 / 3.0;
    std::stringstream ss;
    save_matrix(ss, m);
    Mat back = load_matrix(ss);
    REQUIRE(back.rows == 2);
    REQUIRE(back.cols == 3);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) CHECK(back(r, c) == doctest::Approx(m(r, c)).epsilon(1e-12));
}

TEST_CASE("rng determinism and stream independence") {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    Rng c(9);
    for (int i = 0; i < 1000; ++i) {
        double u = c.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sample_pmf hits frequencies") {
    Rng r(11);
    std::vector<double> p = {0.2, 0.5, 0.3};
    std::vector<int> count(3, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) ++count[r.sample_pmf(p)];
    for (int s = 0; s < 3; ++s) {
        double se = std::sqrt(p[s] * (1 - p[s]) / n);
        CHECK(std::abs(count[s] / double(n) - p[s]) < 4 * se);
    }
}

TEST_CASE("csv formatting") {
    CHECK(format_sig(0.5) == "0.5");
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CsvTable t;
    t.header = {"a", "b"};
    t.rows.push_back({1.0, 0.25});
    CHECK(t.render() == "a,b\n1,0.25\n");
}
