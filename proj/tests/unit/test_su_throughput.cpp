#include <doctest.h>

#include <cmath>

#include "osofdma/scenarios.hpp"
#include "osofdma/su_dynamics.hpp"
#include "osofdma/throughput.hpp"

using namespace osofdma;

TEST_SUITE("su_throughput") {
  TEST_CASE("subchannel split gives CBR priority and VBR the rest") {
    const auto vc = validate_config(builtin("fig3-npu").base, DesignOption::s0n1b1);
    auto split = split_subchannels({3, 2, 25}, vc);
    CHECK(split.m_c == 3);
    CHECK(split.m_v == 22);
    CHECK(split.feasible);
    split = split_subchannels({3, 0, 25}, vc);
    CHECK(split.m_v == 0);
    CHECK(pr2(3, 22, {3, 2, 25}, vc) == 1);
    CHECK(pr2(3, 21, {3, 2, 25}, vc) == 0);
    CHECK(lv(3, 2, 25, vc) == doctest::Approx(11.0));
    CHECK(lv(3, 0, 25, vc) == 0.0);

    const auto b0 = validate_config(builtin("fig3-npu").base, DesignOption::s0n0b0);
    CHECK(split_subchannels({4, 1, 10}, b0).m_v == 6);
  }

  TEST_CASE("SU transition families normalise") {
    const auto vc = validate_config(builtin("fig3-npu").at(4), DesignOption::s0n1b1);
    const auto& grid = vc.availability_grid();
    for (int m_prev : {0, 7, 40})
      for (int m_t : grid)
        for (int u = 0; u <= vc.cbr_cap(m_prev); ++u) {
          double sum = 0.0;
          for (int v = 0; v <= 10; ++v) sum += pr7(v, u, m_t, m_prev, vc);
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    for (int u = 0; u <= 2; ++u)
      for (double l : {0.0, 1.0, 19.5}) {
        double sum = 0.0;
        for (int v = 0; v <= 2; ++v) sum += pr8(v, u, l, vc);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
  }

  TEST_CASE("SU kernel is stochastic and the stationary law solves it") {
    for (auto opt : all_design_options) {
      const auto vc = validate_config(builtin("toy").base, opt);
      const Analysis a(vc);
      CHECK(row_normalize_check(a.su_kernel).max_abs() < 1e-12);
      CHECK(stationarity_residual(a.su_kernel, a.su_pi.p) < 1e-10);
      double total = 0.0;
      for (double v : a.su_pi.p) total += v;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("throughput bookkeeping") {
    for (auto opt : all_design_options) {
      const auto r = throughput(validate_config(builtin("fig3-npu").at(2), opt));
      CHECK(r.h_total == doctest::Approx(r.h_cbr + r.h_vbr).epsilon(1e-12));
      CHECK(r.h_cbr >= 0.0);
      CHECK(r.h_vbr >= 0.0);
      CHECK(r.source == Source::analysis);
      CHECK(r.ci_halfwidth == 0.0);
    }
  }

  TEST_CASE("no secondary traffic carries nothing") {
    auto cfg = builtin("fig3-npu").base;
    cfg[UserClass::cbr].lambda = 0.0;
    cfg[UserClass::vbr].lambda = 0.0;
    for (auto opt : all_design_options) {
      const auto r = throughput(validate_config(cfg, opt));
      CHECK(r.h_total == 0.0);
    }
  }

  TEST_CASE("capacity helpers") {
    CHECK(subchannel_capacity({460'800.0, 0.1875}) == 374'400.0);
    CHECK(collaborative_false_alarm(0.1, 1) == doctest::Approx(0.1));
    CHECK(collaborative_false_alarm(0.1, 12) == doctest::Approx(1 - std::pow(0.9, 12)));
    CHECK(collaborative_false_alarm(0.0, 12) == 0.0);
  }
}
