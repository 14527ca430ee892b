#pragma once

#include "osofdma/markov.hpp"
#include "osofdma/model.hpp"

namespace osofdma {

// P(u_w' | u_w): WPUs are unaffected by every lower-priority class.
double pr18(int u_w_t, int u_w_prev, const ValidatedConfig& vc);

// P(u_n' | u_n, u_w', u_w). NPUs pushed out by arriving WPUs are dropped, so
// the NPU count saturates at the capacity left by u_w'.
double pr19(int u_n_t, int u_n_prev, int u_w_t, int u_w_prev, const ValidatedConfig& vc);

TransitionKernel build_pu_kernel(const ValidatedConfig& vc);

// Long-run law of (u_w, u_n), indexed like vc.pu_states().
Distribution pu_steady(const ValidatedConfig& vc);
Distribution pu_steady(const TransitionKernel& pu_kernel);

}  // namespace osofdma
