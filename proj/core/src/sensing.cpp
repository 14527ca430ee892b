#include "osofdma/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osofdma/stochastic.hpp"

namespace osofdma {

namespace {

double ipow(double base, int e) { return e <= 0 ? 1.0 : std::pow(base, e); }

// Placements of u_n NPUs over the free channels that touch every free channel.
double cover_all(const PuState& pu, const ValidatedConfig& vc) {
  return static_cast<double>(f_s(pu.u_n, vc.x() - pu.u_w, vc.npu_slots_per_channel()));
}

double all_placements(const PuState& pu, const ValidatedConfig& vc) {
  return binomial_real((vc.x() - pu.u_w) * vc.npu_slots_per_channel(), pu.u_n);
}

}  // namespace

double pr14(int m_m, int m_0, const PuState& pu, SensingStage s, const ValidatedConfig& vc) {
  const int m = vc.m();
  const int m_p = vc.occupied_by_pu(pu);
  if (m_m < 0 || m_0 < 0 || m_m > m_p || m_0 > m - m_p) return 0.0;
  switch (s) {
    case SensingStage::coarse_only:
      // Everything is reported idle, so the split is forced.
      return (m_m == m_p && m_0 == m - m_p) ? 1.0 : 0.0;
    case SensingStage::fine_none:
      return (m_m == 0 && m_0 == 0) ? 1.0 : 0.0;
    case SensingStage::fine_idle: {
      const auto& f = vc.config().fine;
      return binomial_real(m_p, m_m) * ipow(1.0 - f.delta, m_m) * ipow(f.delta, m_p - m_m) *
             binomial_real(m - m_p, m_0) * ipow(1.0 - f.phi, m_0) *
             ipow(f.phi, m - m_p - m_0);
    }
  }
  return 0.0;
}

double pr13_s0n1b1(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc) {
  double total = 0.0;
  for (int x = 0; x <= m_a; ++x) total += pr14(x, m_a - x, pu, s, vc);
  return total;
}

double pr15_s0n1b1(SensingStage s, const PuState& pu, const ValidatedConfig& vc) {
  const int m = vc.m();
  const int m_p = vc.occupied_by_pu(pu);
  const auto& a = vc.config().coarse;
  const auto& f = vc.config().fine;
  const double stay_coarse = ipow(1.0 - a.delta, m_p) * ipow(1.0 - a.phi, m - m_p);
  const double none_found = (1.0 - stay_coarse) * ipow(f.delta, m_p) * ipow(f.phi, m - m_p);
  switch (s) {
    case SensingStage::coarse_only: return stay_coarse;
    case SensingStage::fine_none: return none_found;
    case SensingStage::fine_idle: return std::max(0.0, 1.0 - stay_coarse - none_found);
  }
  return 0.0;
}

double pr21(int x_n, const PuState& pu, const ValidatedConfig& vc) {
  const int free = vc.x() - pu.u_w;
  if (pu.u_n == 0) return x_n == 0 ? 1.0 : 0.0;
  if (x_n < 0 || x_n > free) return 0.0;
  const double denom = all_placements(pu, vc);
  if (denom == 0.0) return 0.0;
  const int r = vc.npu_slots_per_channel();
  return binomial_real(free, x_n) * static_cast<double>(f_s(pu.u_n, x_n, r)) / denom;
}

double pr22(int x_a, int x_n, const PuState& pu, const ValidatedConfig& vc) {
  const int rest = vc.x() - pu.u_w - x_n;
  if (x_a < 0 || rest < 0 || x_a > rest) return 0.0;
  const int y = vc.y();
  const double clean = ipow(1.0 - vc.config().fine.phi, y);  // a free channel passes fine sensing
  return binomial_real(rest, x_a) * ipow(1.0 - clean, rest - x_a) * ipow(clean, x_a);
}

double pr20(int x_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc) {
  const int x = vc.x();
  const int r = vc.npu_slots_per_channel();
  const bool feasible = x_a >= 0 && x_a + pu.u_w <= x && pu.u_n <= (x - pu.u_w) * r;
  if (!feasible) return 0.0;
  switch (s) {
    case SensingStage::coarse_only: return x_a == x ? 1.0 : 0.0;
    case SensingStage::fine_none: return x_a == 0 ? 1.0 : 0.0;
    case SensingStage::fine_idle: break;
  }
  const int l_n = vc.traffic(UserClass::npu).l;
  const int lo = (pu.u_n * l_n + vc.y() - 1) / vc.y();
  const int hi = std::min(pu.u_n, x - pu.u_w - x_a);
  double total = 0.0;
  for (int x_n = lo; x_n <= hi; ++x_n) total += pr21(x_n, pu, vc) * pr22(x_a, x_n, pu, vc);
  return total;
}

double pr13_n0(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc) {
  if (m_a < 0 || m_a % vc.y() != 0) return 0.0;
  return pr20(m_a / vc.y(), pu, s, vc);
}

double pr15_n0(SensingStage s, const PuState& pu, const ValidatedConfig& vc) {
  const int m = vc.m();
  const int m_p = vc.occupied_by_pu(pu);
  const double phi_a = vc.config().coarse.phi;
  const double phi_f = vc.config().fine.phi;
  if (m_p >= m) return s == SensingStage::fine_none ? 1.0 : 0.0;
  if (m_p == 0) {
    const double stay = ipow(1.0 - phi_a, m);
    const double none = ipow(phi_a, m) * ipow(phi_f, m);
    switch (s) {
      case SensingStage::coarse_only: return stay;
      case SensingStage::fine_idle: return std::max(0.0, 1.0 - stay - none);
      case SensingStage::fine_none: return none;
    }
  }
  const double none = ipow(phi_f, m - m_p);
  switch (s) {
    case SensingStage::coarse_only: return 0.0;
    case SensingStage::fine_idle: return 1.0 - none;
    case SensingStage::fine_none: return none;
  }
  return 0.0;
}

double pr20_s1(int x_a, SensingStage s) {
  const bool found = s != SensingStage::fine_none;
  return (found && x_a == 1) || (!found && x_a == 0) ? 1.0 : 0.0;
}

double pr25(SensingStage s_t, const PuState& cur, SensingStage s_prev, const PuState& prev,
            const ValidatedConfig& vc) {
  const double clean_coarse = ipow(1.0 - vc.config().coarse.phi, vc.y());
  const bool had_channel = s_prev != SensingStage::fine_none;

  auto keep_channel = [&]() {
    switch (s_t) {
      case SensingStage::coarse_only: return clean_coarse;
      case SensingStage::fine_idle: return 1.0 - clean_coarse;
      case SensingStage::fine_none: return 0.0;
    }
    return 0.0;
  };

  if (cur == prev) {
    if (had_channel) return keep_channel();
    // Frozen NPU positions: if they already covered every free channel nothing changed.
    const bool covered = cover_all(prev, vc) > 0.0;
    if (covered) return s_t == SensingStage::fine_none ? 1.0 : 0.0;
    return s_t == SensingStage::fine_idle ? 1.0 : 0.0;
  }

  if (cur.u_w <= prev.u_w && cur.u_n <= prev.u_n) {
    if (had_channel) return keep_channel();
    const double blocked = cover_all(cur, vc) / all_placements(cur, vc);
    switch (s_t) {
      case SensingStage::coarse_only: return 0.0;
      case SensingStage::fine_idle: return 1.0 - blocked;
      case SensingStage::fine_none: return blocked;
    }
    return 0.0;
  }

  const int r = vc.npu_slots_per_channel();
  const int v = (vc.x() - cur.u_w - 1) * r;
  if (cur.u_n > v) return s_t == SensingStage::fine_none ? 1.0 : 0.0;
  const double total = all_placements(cur, vc);
  const double stay = clean_coarse * binomial_real(v, cur.u_n) / total;
  const double blocked = cover_all(cur, vc) / total;
  switch (s_t) {
    case SensingStage::coarse_only: return stay;
    case SensingStage::fine_idle: return std::max(0.0, 1.0 - stay - blocked);
    case SensingStage::fine_none: return blocked;
  }
  return 0.0;
}

double pr13(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc) {
  switch (vc.option()) {
    case DesignOption::s0n1b1: return pr13_s0n1b1(m_a, pu, s, vc);
    case DesignOption::s0n0b1:
    case DesignOption::s0n0b0: return pr13_n0(m_a, pu, s, vc);
    case DesignOption::s1n0b0:
      if (m_a == 0) return pr20_s1(0, s);
      if (m_a == vc.y()) return pr20_s1(1, s);
      return 0.0;
  }
  return 0.0;
}

double pr15(SensingStage s, const PuState& pu, const ValidatedConfig& vc) {
  switch (vc.option()) {
    case DesignOption::s0n1b1: return pr15_s0n1b1(s, pu, vc);
    case DesignOption::s0n0b1:
    case DesignOption::s0n0b0: return pr15_n0(s, pu, vc);
    case DesignOption::s1n0b0: break;
  }
  throw std::logic_error("active-channel sensing has no closed-form stage law");
}

double frame_data_fraction(SensingStage s, const SystemConfig& cfg, EtaForm form) {
  const double t_f = cfg.t_f;
  switch (s) {
    case SensingStage::coarse_only: return (t_f - cfg.coarse.tau) / t_f;
    case SensingStage::fine_idle:
      return form == EtaForm::corrected ? (t_f - cfg.coarse.tau - cfg.fine.tau) / t_f
                                        : (t_f - cfg.coarse.tau + cfg.fine.tau) / t_f;
    case SensingStage::fine_none: return 0.0;
  }
  return 0.0;
}

double eta(const std::array<double, 3>& pr0, const SystemConfig& cfg, EtaForm form) {
  const double mass = pr0[0] + pr0[1] + pr0[2];
  if (mass <= 0.0) return 0.0;
  return (pr0[0] * frame_data_fraction(SensingStage::coarse_only, cfg, form) +
          pr0[1] * frame_data_fraction(SensingStage::fine_idle, cfg, form)) /
         mass;
}

}  // namespace osofdma
