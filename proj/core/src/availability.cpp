#include "osofdma/availability.hpp"

#include <algorithm>

#include "osofdma/pu_dynamics.hpp"
#include "osofdma/sensing.hpp"

namespace osofdma {

namespace {

constexpr std::size_t stage_count = 3;

std::size_t at(SensingStage s) { return static_cast<std::size_t>(index(s)); }

int stage_channel_subchannels(SensingStage s, int y) {
  return s == SensingStage::fine_none ? 0 : y;
}

}  // namespace

TransitionKernel build_stage_kernel(const ValidatedConfig& vc, const TransitionKernel& pu_kernel) {
  const auto& states = vc.stage_states();
  TransitionKernel k(states.size());
  for (std::size_t a = 0; a < states.size(); ++a) {
    const PuState prev{states[a].u_w, states[a].u_n};
    const std::size_t i = *vc.pu_index(prev);
    for (std::size_t b = 0; b < states.size(); ++b) {
      const PuState cur{states[b].u_w, states[b].u_n};
      const double move = pu_kernel(i, *vc.pu_index(cur));
      if (move == 0.0) continue;
      k(a, b) = move * pr25(states[b].s, cur, states[a].s, prev, vc);
    }
  }
  finalize_kernel(k, [&](std::size_t a) {
    return "stage state (s=" + std::to_string(index(states[a].s)) +
           ", u_w=" + std::to_string(states[a].u_w) + ", u_n=" + std::to_string(states[a].u_n) +
           ")";
  });
  return k;
}

Distribution stage_chain_s1(const ValidatedConfig& vc, const TransitionKernel& pu_kernel) {
  return stationary(build_stage_kernel(vc, pu_kernel));
}

AvailabilityModel::AvailabilityModel(const ValidatedConfig& vc)
    : vc_(vc), pu_kernel_(build_pu_kernel(vc)), pu_pi_(stationary(pu_kernel_)) {
  const auto opt = vc_.option();
  const int y = vc_.y();
  const auto& pus = vc_.pu_states();
  const std::size_t npu = pus.size();

  if (opt == DesignOption::s0n1b1) {
    for (int m = 0; m <= vc_.m(); ++m) raw_grid_.push_back(m);
  } else if (opt == DesignOption::s1n0b0) {
    raw_grid_ = {0, y};
  } else {
    for (int k = 0; k <= vc_.x(); ++k) raw_grid_.push_back(k * y);
  }
  const std::size_t ng = raw_grid_.size();

  if (active_channel_sensing(opt)) {
    stage_kernel_ = build_stage_kernel(vc_, pu_kernel_);
    stage_pi_ = stationary(stage_kernel_);
  }

  pr15_.assign(npu * stage_count, 0.0);
  pr13_.assign(npu * stage_count * ng, 0.0);
  for (std::size_t i = 0; i < npu; ++i) {
    for (auto s : all_stages) {
      double p = 0.0;
      if (active_channel_sensing(opt)) {
        if (pu_pi_[i] > 0.0) {
          auto a = vc_.stage_index({s, pus[i].u_w, pus[i].u_n});
          if (a) p = stage_pi_[*a] / pu_pi_[i];
        }
      } else {
        p = osofdma::pr15(s, pus[i], vc_);
      }
      pr15_[i * stage_count + at(s)] = p;
      for (std::size_t g = 0; g < ng; ++g)
        pr13_[(i * stage_count + at(s)) * ng + g] = osofdma::pr13(raw_grid_[g], pus[i], s, vc_);
    }
  }

  pr9_.assign(ng * ng, 0.0);
  pr10_.assign(ng, 0.0);
  pr0_.assign(stage_count * ng, 0.0);

  if (active_channel_sensing(opt)) {
    const auto& states = vc_.stage_states();
    auto raw_of = [&](SensingStage s) { return stage_channel_subchannels(s, y) == 0 ? 0u : 1u; };
    for (std::size_t a = 0; a < states.size(); ++a) {
      const double pa = stage_pi_[a];
      if (pa == 0.0) continue;
      const std::size_t p = raw_of(states[a].s);
      pr10_[p] += pa;
      pr0_[at(states[a].s) * ng + p] += pa;
      for (std::size_t b = 0; b < states.size(); ++b) {
        const double move = stage_kernel_(a, b);
        if (move != 0.0) pr9_[raw_of(states[b].s) * ng + p] += pa * move;
      }
    }
  } else {
    // Stage-averaged detection law per PU state.
    std::vector<double> detect(npu * ng, 0.0);
    for (std::size_t i = 0; i < npu; ++i)
      for (auto s : all_stages) {
        const double ps = pr15_[i * stage_count + at(s)];
        if (ps == 0.0) continue;
        for (std::size_t g = 0; g < ng; ++g) {
          const double term = pu_pi_[i] * ps * pr13_[(i * stage_count + at(s)) * ng + g];
          pr0_[at(s) * ng + g] += term;
          pr10_[g] += term;
          detect[i * ng + g] += ps * pr13_[(i * stage_count + at(s)) * ng + g];
        }
      }

    // With blocking, unchanged PU counts keep the NPU layout and so keep the
    // detected channel count; any change redraws it from the new state.
    const bool frozen_layout = channel_blocking(opt);
    for (std::size_t i = 0; i < npu; ++i) {
      if (pu_pi_[i] == 0.0) continue;
      std::vector<double> next(ng, 0.0);
      for (std::size_t j = 0; j < npu; ++j) {
        const double move = pu_kernel_(i, j);
        if (move == 0.0 || (frozen_layout && j == i)) continue;
        for (std::size_t g = 0; g < ng; ++g) next[g] += move * detect[j * ng + g];
      }
      for (std::size_t p = 0; p < ng; ++p) {
        const double w = pu_pi_[i] * detect[i * ng + p];
        if (w == 0.0) continue;
        for (std::size_t t = 0; t < ng; ++t) pr9_[t * ng + p] += w * next[t];
        if (frozen_layout) pr9_[p * ng + p] += w * pu_kernel_(i, i);
      }
    }
  }

  // Project onto the SU grid and normalise.
  const auto& su = vc_.availability_grid();
  const std::size_t ns = su.size();
  std::vector<double> joint(ns * ns, 0.0);
  pr10_su_.assign(ns, 0.0);
  pr0_su_.assign(ns, {0.0, 0.0, 0.0});
  for (std::size_t p = 0; p < ng; ++p) {
    const std::size_t sp = su_of_raw(p);
    pr10_su_[sp] += pr10_[p];
    for (std::size_t s = 0; s < stage_count; ++s) pr0_su_[sp][s] += pr0_[s * ng + p];
    for (std::size_t t = 0; t < ng; ++t) joint[sp * ns + su_of_raw(t)] += pr9_[t * ng + p];
  }
  pr6_.assign(ns * ns, 0.0);
  unreachable_.assign(ns, false);
  for (std::size_t p = 0; p < ns; ++p) {
    // The row mass equals pr10 at stationarity; dividing by the row sum itself
    // keeps the kernel exactly stochastic.
    double mass = 0.0;
    for (std::size_t t = 0; t < ns; ++t) mass += joint[p * ns + t];
    if (mass <= 0.0 || pr10_su_[p] <= 0.0) {
      unreachable_[p] = true;
      pr6_[p * ns + p] = 1.0;
      continue;
    }
    for (std::size_t t = 0; t < ns; ++t) pr6_[p * ns + t] = joint[p * ns + t] / mass;
  }
}

std::optional<std::size_t> AvailabilityModel::raw_index(int m) const {
  auto it = std::lower_bound(raw_grid_.begin(), raw_grid_.end(), m);
  if (it == raw_grid_.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - raw_grid_.begin());
}

std::size_t AvailabilityModel::su_of_raw(std::size_t raw) const {
  return *vc_.grid_index(vc_.usable_subchannels(raw_grid_[raw]));
}

double AvailabilityModel::pr15(SensingStage s, std::size_t pu) const {
  return pr15_[pu * stage_count + at(s)];
}

double AvailabilityModel::pr13(int m_a, std::size_t pu, SensingStage s) const {
  auto g = raw_index(m_a);
  if (!g) return 0.0;
  return pr13_[(pu * stage_count + at(s)) * raw_grid_.size() + *g];
}

double AvailabilityModel::pr11(int m_t, int m_prev, std::size_t pu_t, std::size_t pu_prev,
                               SensingStage s_t, SensingStage s_prev) const {
  const double before = pr13(m_prev, pu_prev, s_prev);
  if (before == 0.0) return 0.0;
  const auto opt = vc_.option();
  if (opt == DesignOption::s0n1b1 || opt == DesignOption::s1n0b0)
    return before * pr13(m_t, pu_t, s_t);
  if (pu_t == pu_prev) return m_t == m_prev ? before : 0.0;
  return before * pr13(m_t, pu_t, s_t);
}

double AvailabilityModel::pr12(std::size_t pu_t, std::size_t pu_prev, SensingStage s_t,
                               SensingStage s_prev) const {
  const double base = pr15(s_prev, pu_prev) * pu_kernel_(pu_prev, pu_t) * pu_pi_[pu_prev];
  if (base == 0.0) return 0.0;
  if (active_channel_sensing(vc_.option())) {
    const auto& pus = vc_.pu_states();
    return base * pr25(s_t, pus[pu_t], s_prev, pus[pu_prev], vc_);
  }
  return base * pr15(s_t, pu_t);
}

double AvailabilityModel::pr9_by_summation(int m_t, int m_prev) const {
  const std::size_t npu = vc_.pu_states().size();
  double total = 0.0;
  for (std::size_t i = 0; i < npu; ++i)
    for (std::size_t j = 0; j < npu; ++j)
      for (auto sp : all_stages)
        for (auto st : all_stages) {
          const double w = pr12(j, i, st, sp);
          if (w != 0.0) total += w * pr11(m_t, m_prev, j, i, st, sp);
        }
  return total;
}

double AvailabilityModel::pr9(int m_t, int m_prev) const {
  auto t = raw_index(m_t);
  auto p = raw_index(m_prev);
  if (!t || !p) return 0.0;
  return pr9_[*t * raw_grid_.size() + *p];
}

double AvailabilityModel::pr10(int m) const {
  auto g = raw_index(m);
  return g ? pr10_[*g] : 0.0;
}

double AvailabilityModel::pr0(SensingStage s, int m) const {
  auto g = raw_index(m);
  return g ? pr0_[at(s) * raw_grid_.size() + *g] : 0.0;
}

double AvailabilityModel::pr6(int m_t, int m_prev) const {
  auto t = vc_.grid_index(m_t);
  auto p = vc_.grid_index(m_prev);
  if (!t || !p) return 0.0;
  return pr6_[*p * vc_.availability_grid().size() + *t];
}

double AvailabilityModel::pr10_su(int m) const {
  auto g = vc_.grid_index(m);
  return g ? pr10_su_[*g] : 0.0;
}

std::array<double, 3> AvailabilityModel::pr0_su(int m) const {
  auto g = vc_.grid_index(m);
  return g ? pr0_su_[*g] : std::array<double, 3>{0.0, 0.0, 0.0};
}

bool AvailabilityModel::unreachable(int m_prev) const {
  auto g = vc_.grid_index(m_prev);
  return g ? static_cast<bool>(unreachable_[*g]) : true;
}

bool AvailabilityModel::any_unreachable() const {
  return std::find(unreachable_.begin(), unreachable_.end(), true) != unreachable_.end();
}

}  // namespace osofdma
