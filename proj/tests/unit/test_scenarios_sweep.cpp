#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "osofdma/scenarios.hpp"
#include "osofdma/sweep.hpp"

using namespace osofdma;

TEST_SUITE("scenarios_sweep") {
  TEST_CASE("every builtin validates for every option at every axis point") {
    for (const auto& name : builtin_names()) {
      const auto s = builtin(name);
      CHECK(std::is_sorted(s.axis.values.begin(), s.axis.values.end()));
      for (double v : s.axis.values)
        for (auto opt : all_design_options) CHECK_NOTHROW(validate_config(s.at(v), opt));
    }
    CHECK_THROWS_AS(builtin("fig7"), UnknownScenario);
  }

  TEST_CASE("fig3 parameterisation") {
    const auto s = builtin("fig3-npu");
    CHECK(s.base.c_bps == 374'400.0);
    CHECK(s.base.fine.tau == doctest::Approx(0.012));
    const auto at4 = s.at(4);
    CHECK(at4[UserClass::npu].u_max == 4);
    CHECK(at4[UserClass::npu].lambda == doctest::Approx(4.0 / 24.0));
    CHECK(at4[UserClass::wpu].lambda == doctest::Approx(2.0 / 144.0));
    CHECK(at4[UserClass::cbr].lambda == doctest::Approx(10.0));
    CHECK(at4[UserClass::vbr].lambda == doctest::Approx(2.0 / 12.0));
    CHECK(1.0 / at4[UserClass::vbr].mu == doctest::Approx(240.0));
    CHECK(s.at(0)[UserClass::npu].lambda == 0.0);
    CHECK(builtin("fig3-wpu").at(3)[UserClass::npu].u_max == 10);
  }

  TEST_CASE("population scenarios") {
    CHECK(1.0 / builtin("event").base[UserClass::npu].mu == doctest::Approx(48.0));
    CHECK(1.0 / builtin("urban").base[UserClass::npu].mu == doctest::Approx(12.0));
    CHECK(builtin("light-urban").base[UserClass::npu].u_max == 3);
    CHECK(builtin("heavy-urban").base[UserClass::wpu].u_max == 0);
    CHECK(fluid_flow_lambda_n(0, 1, 2, 1.5) == 0.0);
    CHECK(fluid_flow_u_nmax(0, 1, 2) == 1);
    CHECK_THROWS_AS(fluid_flow_lambda_n(-1, 1, 2, 1.5), ConfigError);
  }

  TEST_CASE("sensing sweep looks up the false-alarm rate") {
    const auto s = builtin("sensing-sweep");
    CHECK(s.axis.values.size() == 9);
    CHECK(s.at(2.0).coarse.phi == 0.0018);
    CHECK(s.at(2.0).coarse.tau == doctest::Approx(0.002));
    CHECK(s.at(0.0).coarse.phi == 1.0);
    CHECK(s.at(4.0).coarse.delta == 0.99);
    CHECK(s.base[UserClass::npu].u_max == 2);
    CHECK_THROWS_AS(s.at(0.7), ConfigError);
  }

  TEST_CASE("parameter setter") {
    SystemConfig cfg;
    apply_param(cfg, "fine.tau_ms", 3.0);
    CHECK(cfg.fine.tau == doctest::Approx(0.003));
    apply_param(cfg, "vbr.mu_per_s", 0.5);
    CHECK(cfg[UserClass::vbr].mu == 0.5);
    CHECK_THROWS_AS(apply_param(cfg, "npu.u_max", 2.5), ConfigError);
    CHECK_THROWS_AS(apply_param(cfg, "npu.colour", 1), ConfigError);
    CHECK_THROWS_AS(apply_param(cfg, "z", 1), ConfigError);
  }

  TEST_CASE("axis parsing") {
    auto a = parse_axis("npu.u_max=0:10:2");
    CHECK(a.param == "npu.u_max");
    CHECK(a.values == std::vector<double>{0, 2, 4, 6, 8, 10});
    CHECK(parse_axis("coarse.tau_ms=0:1:0.5").values.size() == 3);
    CHECK(parse_axis("x=1,2,4").values == std::vector<double>{1, 2, 4});
    CHECK_THROWS_AS(parse_axis("npu.u_max"), ConfigError);
    CHECK_THROWS_AS(parse_axis("npu.u_max=3:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_axis("npu.u_max=0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_axis("npu.u_max=a:b:c"), ConfigError);
  }

  TEST_CASE("CSV round-trips exactly") {
    SweepResult r;
    r.rows.push_back({DesignOption::s0n0b1, "npu.u_max", 3, 1234.5678901234567, 0.1 + 0.2, 1e-300,
                      Source::simulation, 12.25});
    r.rows.push_back({DesignOption::s1n0b0, "coarse.tau_ms", 1.57e-4, 0, 0, 0, Source::analysis, 0});
    const auto text = to_csv(r);
    CHECK(text.rfind(std::string(sweep_csv_header) + "\n", 0) == 0);
    CHECK(parse_csv(text) == r);
    CHECK_THROWS(parse_csv("wrong,header\n"));
  }

  TEST_CASE("sweep output is ordered and independent of the pool size") {
    SweepRequest req{builtin("toy"), std::nullopt,
                     {DesignOption::s1n0b0, DesignOption::s0n1b1}, true, true, {5, 100, 3, 300}};
    setenv("OSOFDMA_THREADS", "1", 1);
    CHECK(sweep_workers() == 1);
    const auto serial = run_sweep(req);
    setenv("OSOFDMA_THREADS", "4", 1);
    const auto pooled = run_sweep(req);
    unsetenv("OSOFDMA_THREADS");
    CHECK(serial == pooled);
    CHECK(serial.rows.size() == 12);
    CHECK(serial.rows.front().option == DesignOption::s0n1b1);
    CHECK(serial.rows.front().source == Source::analysis);
    CHECK(serial.rows[1].source == Source::simulation);
    CHECK(serial.rows.back().option == DesignOption::s1n0b0);

    req.options.clear();
    CHECK_THROWS_AS(run_sweep(req), ConfigError);
  }
}
