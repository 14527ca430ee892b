#pragma once

#include "osofdma/availability.hpp"
#include "osofdma/markov.hpp"
#include "osofdma/model.hpp"

namespace osofdma {

// Subchannels granted to each SU class in a state: CBR first, VBR takes the
// rest of the usable spectrum when any VBR connection is active.
struct SubchannelSplit {
  int m_c = 0;
  int m_v = 0;
  bool feasible = false;  // u_c * l_c fits in the usable spectrum
};

SubchannelSplit split_subchannels(const SuState& s, const ValidatedConfig& vc);

// 1 iff (m_c, m_v) is the split of state s.
int pr2(int m_c, int m_v, const SuState& s, const ValidatedConfig& vc);

// Subchannels held by one VBR connection at t-1 (0 without VBR connections).
double lv(int u_c_prev, int u_v_prev, int m_a_prev, const ValidatedConfig& vc);

// P(u_c' | u_c, m_a', m_a): CBR connections beyond what m_a' can carry are blocked.
double pr7(int u_c_t, int u_c_prev, int m_a_t, int m_a_prev, const ValidatedConfig& vc);

// P(u_v' | u_v, l_v): VBR connections are never blocked; each releases at rate l_v * mu_v.
double pr8(int u_v_t, int u_v_prev, double lv_prev, const ValidatedConfig& vc);

TransitionKernel build_su_kernel(const ValidatedConfig& vc, const AvailabilityModel& avail);

// Long-run law of (u_c, u_v, m_a), indexed like vc.su_states(). The chain is
// started from the availability levels that carry stationary mass.
Distribution su_steady(const ValidatedConfig& vc, const AvailabilityModel& avail);
Distribution su_steady(const ValidatedConfig& vc, const AvailabilityModel& avail,
                       const TransitionKernel& su_kernel);

}  // namespace osofdma
