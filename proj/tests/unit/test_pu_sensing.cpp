#include <doctest.h>

#include <cmath>
#include <map>

#include "osofdma/pu_dynamics.hpp"
#include "osofdma/scenarios.hpp"
#include "osofdma/sensing.hpp"
#include "osofdma/stochastic.hpp"

using namespace osofdma;

namespace {

// P(next | prev) for a count that loses each member w.p. 1-e^{-mu t_f} and
// then gains Poisson arrivals, saturating at cap.
double walk(int next, int prev, int cap, const TrafficParams& tp, double t_f) {
  const double p = -std::expm1(-tp.mu * t_f);
  double total = 0.0;
  for (int j = 0; j <= prev; ++j) {
    const double dep = binomial_real(prev, j) * std::pow(p, j) * std::pow(1 - p, prev - j);
    for (int a = 0; a < 80; ++a)
      if (std::min(cap, prev - j + a) == next) total += dep * poisson_pmf(a, tp.lambda * t_f);
  }
  return total;
}

// Distribution of the number of channels touched when u_n NPUs take distinct
// slots uniformly among `free` channels of r slots each.
std::map<int, double> touched_channels(int u_n, int free, int r) {
  std::map<int, double> law;
  const int n = free * r;
  double count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != u_n) continue;
    int touched = 0;
    for (int c = 0; c < free; ++c) touched += ((mask >> (c * r)) & ((1u << r) - 1)) ? 1 : 0;
    law[touched] += 1;
    count += 1;
  }
  for (auto& [k, v] : law) v /= count;
  return law;
}

SystemConfig small_blocking() {
  SystemConfig cfg = builtin("toy").base;
  cfg.x = 3;
  cfg.y = 2;
  cfg[UserClass::wpu] = {0.4, 0.8, 2, 1};
  cfg[UserClass::npu] = {1.5, 1.0, 1, 4};
  return cfg;
}

}  // namespace

TEST_SUITE("pu_sensing") {
  TEST_CASE("PU kernel equals the departures-then-arrivals walk") {
    for (auto name : {"toy", "fig3-npu"}) {
      const auto vc = validate_config(builtin(name).base, DesignOption::s0n1b1);
      const auto k = build_pu_kernel(vc);
      const auto& states = vc.pu_states();
      const double t_f = vc.config().t_f;
      for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j) {
          const auto& a = states[i];
          const auto& b = states[j];
          double oracle = walk(b.u_w, a.u_w, vc.wpu_cap(), vc.traffic(UserClass::wpu), t_f);
          // NPUs squeezed out by a new WPU count against the post-transition cap.
          oracle *= walk(b.u_n, a.u_n, vc.npu_cap(b.u_w), vc.traffic(UserClass::npu), t_f);
          CHECK(k(i, j) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
  }

  TEST_CASE("S0N1B1 joint stage/detection law matches exact enumeration") {
    auto cfg = builtin("toy").base;
    cfg.coarse = {0.9, 0.3, 0.0};
    const auto vc = validate_config(cfg, DesignOption::s0n1b1);
    const int m = vc.m();
    for (const auto& pu : vc.pu_states()) {
      const int m_p = vc.occupied_by_pu(pu);
      const double quiet = std::pow(0.1, m_p) * std::pow(0.7, m - m_p);
      std::vector<double> oracle(3 * (m + 1), 0.0);
      oracle[0 * (m + 1) + m] = quiet;
      // Perfect fine sensing reports exactly the M - m_p idle subchannels.
      const int found = m - m_p;
      oracle[(found > 0 ? 1 : 2) * (m + 1) + found] += 1.0 - quiet;
      for (auto s : all_stages)
        for (int m_a = 0; m_a <= m; ++m_a)
          CHECK(pr15_s0n1b1(s, pu, vc) * pr13_s0n1b1(m_a, pu, s, vc) ==
                doctest::Approx(oracle[index(s) * (m + 1) + m_a]).epsilon(1e-12));
    }
  }

  TEST_CASE("NPU channel spread matches placement enumeration") {
    const auto vc = validate_config(small_blocking(), DesignOption::s0n0b1);
    for (const auto& pu : vc.pu_states()) {
      const int free = vc.x() - pu.u_w;
      const auto law = touched_channels(pu.u_n, free, vc.npu_slots_per_channel());
      double sum = 0.0;
      for (int x_n = 0; x_n <= free; ++x_n) {
        const double expect = law.count(x_n) ? law.at(x_n) : 0.0;
        CHECK(pr21(x_n, pu, vc) == doctest::Approx(expect).epsilon(1e-12));
        sum += pr21(x_n, pu, vc);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("conditional sensing families normalise") {
    for (auto opt : all_design_options) {
      auto cfg = small_blocking();
      cfg.fine.phi = 0.2;
      const auto vc = validate_config(cfg, opt);
      for (const auto& pu : vc.pu_states()) {
        if (!active_channel_sensing(opt)) {
          double stages = 0.0;
          for (auto s : all_stages) {
            stages += pr15(s, pu, vc);
            if (pr15(s, pu, vc) == 0.0) continue;
            double sum = 0.0;
            for (int m_a = 0; m_a <= vc.m(); ++m_a) sum += pr13(m_a, pu, s, vc);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
          }
          CHECK(stages == doctest::Approx(1.0).epsilon(1e-12));
        }
        for (int x_n = 0; x_n <= vc.x() - pu.u_w; ++x_n) {
          double sum = 0.0;
          for (int x_a = 0; x_a <= vc.x(); ++x_a) sum += pr22(x_a, x_n, pu, vc);
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        if (active_channel_sensing(opt))
          for (const auto& prev : vc.pu_states())
            for (auto s_prev : all_stages) {
              double sum = 0.0;
              for (auto s : all_stages) sum += pr25(s, pu, s_prev, prev, vc);
              CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
      }
    }
  }

  TEST_CASE("active-channel placement uses one channel per found stage") {
    CHECK(pr20_s1(1, SensingStage::coarse_only) == 1.0);
    CHECK(pr20_s1(1, SensingStage::fine_idle) == 1.0);
    CHECK(pr20_s1(0, SensingStage::fine_none) == 1.0);
    CHECK(pr20_s1(0, SensingStage::fine_idle) == 0.0);
  }

  TEST_CASE("sensing overhead per stage") {
    auto cfg = builtin("sensing-sweep").at(2.0);
    const double t_f = cfg.t_f, t_a = cfg.coarse.tau, t_fine = cfg.fine.tau;
    CHECK(frame_data_fraction(SensingStage::coarse_only, cfg) == doctest::Approx(1 - t_a / t_f));
    CHECK(frame_data_fraction(SensingStage::fine_idle, cfg) == doctest::Approx(1 - (t_a + t_fine) / t_f));
    CHECK(frame_data_fraction(SensingStage::fine_none, cfg) == 0.0);
    CHECK(frame_data_fraction(SensingStage::fine_idle, cfg, EtaForm::printed) ==
          doctest::Approx(1 - (t_a - t_fine) / t_f));
    // Stage weights are normalised, so scaling them changes nothing.
    const std::array<double, 3> w{0.2, 0.3, 0.1};
    const std::array<double, 3> w2{0.4, 0.6, 0.2};
    CHECK(eta(w, cfg) == doctest::Approx(eta(w2, cfg)));
    CHECK(eta(w, cfg) == doctest::Approx((0.2 * (1 - t_a / t_f) + 0.3 * (1 - (t_a + t_fine) / t_f)) / 0.6));
    CHECK(eta({0.0, 0.0, 0.0}, cfg) == 0.0);
  }
}
