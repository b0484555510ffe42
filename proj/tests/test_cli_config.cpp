#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "cbd/config.hpp"
#include "cbd/csv.hpp"
#include "doctest.h"

using namespace cbd;

TEST_CASE("minimal config gets defaults") {
    auto cfg = parse_config_text("source.p_s = 0.25\nchannel.type = bec\nchannel.p = 0.4\n");
    CHECK(cfg.source_p_s == doctest::Approx(0.25));
    CHECK(cfg.channel_type == "bec");
    CHECK(cfg.n == 4096);
    CHECK(cfg.k == 1);
    CHECK(cfg.trials == 100);
    CHECK(cfg.seed == 1);
    CHECK(cfg.loss_type == "hamming");
}

TEST_CASE("comments and blank lines are ignored") {
    auto cfg = parse_config_text("# a comment\n\n  run.trials = 7  \n");
    CHECK(cfg.trials == 7);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config_text("source.p_s = 0.2\nrun.n: 12\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("no.such.key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("run.n = twelve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("source.p_s = 0.2 extra\n"), ConfigError);
}

TEST_CASE("range validation") {
    CHECK_THROWS_AS(parse_config_text("source.p_s = 0.7\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("source.p_s = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("channel.type = bec\nchannel.p = 1.0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("run.n = 2\nrun.k = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("run.trials = 0\n"), ConfigError);
}

TEST_CASE("serialize / parse round trip is idempotent") {
    auto cfg = parse_config_text(
        "source.type = markov\nsource.p_s = 0.3\nchannel.type = bsc\nchannel.p = 0.15\n"
        "run.n = 512\nrun.k = 2\nrun.trials = 33\nrun.seed = 99\noutput.path = out.csv\n");
    std::string once = serialize_config(cfg);
    std::string twice = serialize_config(parse_config_text(once));
    CHECK(once == twice);
    auto back = parse_config_text(once);
    CHECK(back.source_p_s == cfg.source_p_s);
    CHECK(back.n == cfg.n);
    CHECK(back.seed == cfg.seed);
    CHECK(back.output_path == cfg.output_path);
}

TEST_CASE("csv dialect") {
    CsvTable t;
    t.header = {"x", "y"};
    t.rows.push_back({0.1, 123456789012345.0});
    t.rows.push_back({1.0 / 7.0, -2.5});
    std::string s = t.render();
    CHECK(s == "x,y\n0.1,1.23456789012e+14\n0.142857142857,-2.5\n");
    CHECK(s.find('\r') == std::string::npos);
}
