#include <doctest.h>

#include "osofdma/config_io.hpp"
#include "osofdma/model.hpp"
#include "osofdma/scenarios.hpp"

using namespace osofdma;

TEST_SUITE("model") {
  TEST_CASE("option names round-trip case-insensitively") {
    for (auto opt : all_design_options) CHECK(parse_design_option(to_string(opt)) == opt);
    CHECK(parse_design_option("s1n0b0") == DesignOption::s1n0b0);
    CHECK_FALSE(parse_design_option("S2N0B0").has_value());
  }

  TEST_CASE("validation names the broken invariant") {
    auto cfg = builtin("toy").base;
    cfg.t_f = 0.0;
    CHECK_THROWS_WITH_AS(validate_config(cfg, DesignOption::s0n1b1), doctest::Contains("t_f"), ConfigError);
    cfg = builtin("toy").base;
    cfg.fine.tau = 0.05;
    CHECK_THROWS_AS(validate_config(cfg, DesignOption::s0n1b1), ConfigError);
    cfg = builtin("toy").base;
    cfg[UserClass::npu].l = 3;  // does not divide y = 4
    CHECK_NOTHROW(validate_config(cfg, DesignOption::s0n1b1));
    CHECK_THROWS_AS(validate_config(cfg, DesignOption::s0n0b1), ConfigError);
    cfg = builtin("toy").base;
    cfg.coarse.phi = 1.5;
    CHECK_THROWS_AS(validate_config(cfg, DesignOption::s0n1b1), ConfigError);
  }

  TEST_CASE("blocking forces perfect detection with a warning") {
    const auto vc = validate_config(builtin("toy").base, DesignOption::s0n0b1);
    CHECK(vc.config().coarse.delta == 1.0);
    CHECK(vc.warnings().size() == 1);
    CHECK(validate_config(builtin("toy").base, DesignOption::s0n1b1).warnings().empty());
  }

  TEST_CASE("grids and caps") {
    const auto base = builtin("fig3-npu").base;
    const auto n1 = validate_config(base, DesignOption::s0n1b1);
    CHECK(n1.availability_grid().size() == 41);
    CHECK(validate_config(base, DesignOption::s0n0b1).availability_grid() == std::vector<int>{0, 10, 20, 30, 40});
    CHECK(validate_config(base, DesignOption::s1n0b0).availability_grid() == std::vector<int>{0, 10});
    CHECK(n1.npu_cap(0) == 10);
    CHECK(n1.npu_cap(2) == 10);
    CHECK(n1.wpu_cap() == 2);
    const auto b0 = validate_config(base, DesignOption::s0n0b0);
    CHECK(b0.usable_subchannels(30) == 10);
    CHECK(b0.cbr_cap(30) == 10);
    CHECK(n1.cbr_cap(4) == 4);
  }

  TEST_CASE("enumerations are sorted, unique and indexed") {
    const auto vc = validate_config(builtin("toy").base, DesignOption::s0n1b1);
    const auto& pu = vc.pu_states();
    CHECK(std::is_sorted(pu.begin(), pu.end()));
    CHECK(std::adjacent_find(pu.begin(), pu.end()) == pu.end());
    for (std::size_t i = 0; i < pu.size(); ++i) CHECK(vc.pu_index(pu[i]) == i);
    const auto& su = vc.su_states();
    for (std::size_t i = 0; i < su.size(); ++i) CHECK(vc.su_index(su[i]) == i);
    CHECK_FALSE(vc.su_index({0, 0, 99}).has_value());
    // u_w in {0,1}; with one WPU only 4 subchannels remain, both NPUs still fit.
    CHECK(pu.size() == 6);
    CHECK(state_count(vc, StateSpace::su) == su.size());
  }

  TEST_CASE("JSON round-trip and strict keys") {
    const auto cfg = builtin("fig3-npu").at(4);
    CHECK(parse_config(to_json(cfg)) == cfg);
    CHECK_THROWS_AS(parse_config(R"({"x": 4, "y": 10, "t_f_s": 0.02, "bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/osofdma.json"), ConfigError);
  }
}
