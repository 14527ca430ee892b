#include "osofdma/pu_dynamics.hpp"

#include "osofdma/stochastic.hpp"

namespace osofdma {

double pr18(int u_w_t, int u_w_prev, const ValidatedConfig& vc) {
  const auto& w = vc.traffic(UserClass::wpu);
  const int cap = vc.wpu_cap();
  if (u_w_prev < 0 || u_w_prev > cap) return 0.0;
  return capped_count_transition(u_w_t, u_w_prev, cap, w.lambda, w.mu, vc.config().t_f);
}

double pr19(int u_n_t, int u_n_prev, int u_w_t, int u_w_prev, const ValidatedConfig& vc) {
  const auto& n = vc.traffic(UserClass::npu);
  if (u_n_prev < 0 || u_n_prev > vc.npu_cap(u_w_prev)) return 0.0;
  return capped_count_transition(u_n_t, u_n_prev, vc.npu_cap(u_w_t), n.lambda, n.mu,
                                 vc.config().t_f);
}

TransitionKernel build_pu_kernel(const ValidatedConfig& vc) {
  const auto& states = vc.pu_states();
  TransitionKernel k(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& from = states[i];
    for (std::size_t j = 0; j < states.size(); ++j) {
      const auto& to = states[j];
      const double w = pr18(to.u_w, from.u_w, vc);
      if (w == 0.0) continue;
      k(i, j) = w * pr19(to.u_n, from.u_n, to.u_w, from.u_w, vc);
    }
  }
  finalize_kernel(k, [&](std::size_t i) {
    return "PU state (u_w=" + std::to_string(states[i].u_w) +
           ", u_n=" + std::to_string(states[i].u_n) + ")";
  });
  return k;
}

Distribution pu_steady(const TransitionKernel& pu_kernel) { return stationary(pu_kernel); }

Distribution pu_steady(const ValidatedConfig& vc) { return stationary(build_pu_kernel(vc)); }

}  // namespace osofdma
