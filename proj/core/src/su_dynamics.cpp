#include "osofdma/su_dynamics.hpp"

#include <algorithm>

#include "osofdma/stochastic.hpp"

namespace osofdma {

SubchannelSplit split_subchannels(const SuState& s, const ValidatedConfig& vc) {
  const int usable = vc.usable_subchannels(s.m_a);
  const int cbr = s.u_c * vc.traffic(UserClass::cbr).l;
  if (cbr > usable) return {};
  return {cbr, s.u_v > 0 ? usable - cbr : 0, true};
}

int pr2(int m_c, int m_v, const SuState& s, const ValidatedConfig& vc) {
  const auto sp = split_subchannels(s, vc);
  return sp.feasible && sp.m_c == m_c && sp.m_v == m_v ? 1 : 0;
}

double lv(int u_c_prev, int u_v_prev, int m_a_prev, const ValidatedConfig& vc) {
  if (u_v_prev <= 0) return 0.0;
  const int rest = vc.usable_subchannels(m_a_prev) - u_c_prev * vc.traffic(UserClass::cbr).l;
  return std::max(0, rest) / static_cast<double>(u_v_prev);
}

double pr7(int u_c_t, int u_c_prev, int m_a_t, int m_a_prev, const ValidatedConfig& vc) {
  if (u_c_prev > vc.cbr_cap(m_a_prev)) return 0.0;
  const auto& c = vc.traffic(UserClass::cbr);
  return capped_count_transition(u_c_t, u_c_prev, vc.cbr_cap(m_a_t), c.lambda, c.mu,
                                 vc.config().t_f);
}

double pr8(int u_v_t, int u_v_prev, double lv_prev, const ValidatedConfig& vc) {
  const auto& v = vc.traffic(UserClass::vbr);
  return capped_count_transition(u_v_t, u_v_prev, v.u_max, v.lambda, lv_prev * v.mu,
                                 vc.config().t_f);
}

TransitionKernel build_su_kernel(const ValidatedConfig& vc, const AvailabilityModel& avail) {
  const auto& states = vc.su_states();
  const auto& grid = vc.availability_grid();
  const int u_c_max = vc.traffic(UserClass::cbr).u_max;
  const int u_v_max = vc.traffic(UserClass::vbr).u_max;
  TransitionKernel k(states.size());

  // Per source state the kernel factorises into CBR x VBR x availability terms.
  std::vector<double> cbr(static_cast<std::size_t>(u_c_max + 1) * grid.size());
  std::vector<double> vbr(static_cast<std::size_t>(u_v_max + 1));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& from = states[i];
    for (std::size_t g = 0; g < grid.size(); ++g)
      for (int u = 0; u <= u_c_max; ++u)
        cbr[static_cast<std::size_t>(u) * grid.size() + g] = pr7(u, from.u_c, grid[g], from.m_a, vc);
    const double share = lv(from.u_c, from.u_v, from.m_a, vc);
    for (int u = 0; u <= u_v_max; ++u)
      vbr[static_cast<std::size_t>(u)] = pr8(u, from.u_v, share, vc);

    for (std::size_t j = 0; j < states.size(); ++j) {
      const auto& to = states[j];
      const double avail_move = avail.pr6(to.m_a, from.m_a);
      if (avail_move == 0.0) continue;
      const std::size_t g = *vc.grid_index(to.m_a);
      k(i, j) = cbr[static_cast<std::size_t>(to.u_c) * grid.size() + g] *
                vbr[static_cast<std::size_t>(to.u_v)] * avail_move;
    }
  }
  finalize_kernel(k, [&](std::size_t i) {
    return "SU state (u_c=" + std::to_string(states[i].u_c) +
           ", u_v=" + std::to_string(states[i].u_v) + ", m_a=" + std::to_string(states[i].m_a) +
           ")";
  });
  return k;
}

Distribution su_steady(const ValidatedConfig& vc, const AvailabilityModel& avail,
                       const TransitionKernel& su_kernel) {
  const auto& states = vc.su_states();
  StationaryOptions opts;
  opts.initial.assign(states.size(), 0.0);
  bool any = false;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!avail.unreachable(states[i].m_a)) {
      opts.initial[i] = 1.0;
      any = true;
    }
  if (!any) opts.initial.clear();
  return stationary(su_kernel, opts);
}

Distribution su_steady(const ValidatedConfig& vc, const AvailabilityModel& avail) {
  return su_steady(vc, avail, build_su_kernel(vc, avail));
}

}  // namespace osofdma
