#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "osofdma/markov.hpp"
#include "osofdma/model.hpp"

namespace osofdma {

// Transition kernel of the S1N0B0 stage chain over vc.stage_states():
// P(s', pu' | s, pu) = pr25(s' | pu', s, pu) * P_pu(pu' | pu).
TransitionKernel build_stage_kernel(const ValidatedConfig& vc, const TransitionKernel& pu_kernel);
Distribution stage_chain_s1(const ValidatedConfig& vc, const TransitionKernel& pu_kernel);

// Everything the SU chain needs to know about detected spectrum: the joint law
// of the detected-idle count over consecutive frames, its marginal, the
// resulting availability kernel and the stage/availability joint used for the
// sensing overhead.
//
// Two grids are involved. The detection grid holds every value m_a can take
// right after sensing (0..M for notching, multiples of Y for blocking). The SU
// grid is vc.availability_grid(); for fixed-channel options every detection
// value of at least Y collapses onto Y there.
class AvailabilityModel {
 public:
  explicit AvailabilityModel(const ValidatedConfig& vc);

  const ValidatedConfig& config() const { return vc_; }
  const TransitionKernel& pu_kernel() const { return pu_kernel_; }
  const Distribution& pu_steady() const { return pu_pi_; }
  // Stage-chain law indexed like vc.stage_states(); empty for S0 options.
  const Distribution& stage_steady() const { return stage_pi_; }
  const TransitionKernel& stage_kernel() const { return stage_kernel_; }

  // P(stage | PU state). For S1N0B0 this is the stage-chain conditional and is
  // zero for PU states with no stationary mass.
  double pr15(SensingStage s, std::size_t pu) const;
  double pr13(int m_a, std::size_t pu, SensingStage s) const;

  // Single terms of the detection-grid joint law; pr9 sums their product over
  // all PU states and stages at both frames.
  double pr11(int m_t, int m_prev, std::size_t pu_t, std::size_t pu_prev, SensingStage s_t,
              SensingStage s_prev) const;
  double pr12(std::size_t pu_t, std::size_t pu_prev, SensingStage s_t, SensingStage s_prev) const;
  // Direct six-fold summation of pr11 * pr12; slow, for cross-checks.
  double pr9_by_summation(int m_t, int m_prev) const;

  const std::vector<int>& detection_grid() const { return raw_grid_; }
  double pr9(int m_t, int m_prev) const;  // detection grid, 0 off-grid
  double pr10(int m) const;
  double pr0(SensingStage s, int m) const;

  // SU-grid quantities.
  double pr6(int m_t, int m_prev) const;
  double pr10_su(int m) const;
  std::array<double, 3> pr0_su(int m) const;
  // m_prev values with no stationary mass; their pr6 row is a self-loop.
  bool unreachable(int m_prev) const;
  bool any_unreachable() const;

 private:
  std::optional<std::size_t> raw_index(int m) const;
  std::size_t su_of_raw(std::size_t raw) const;

  ValidatedConfig vc_;
  TransitionKernel pu_kernel_;
  Distribution pu_pi_;
  TransitionKernel stage_kernel_;
  Distribution stage_pi_;

  std::vector<int> raw_grid_;
  std::vector<double> pr15_;   // [pu][s]
  std::vector<double> pr13_;   // [pu][s][raw]
  std::vector<double> pr9_;    // [t][prev] on the detection grid
  std::vector<double> pr10_;   // [raw]
  std::vector<double> pr0_;    // [s][raw]

  std::vector<double> pr6_;    // [prev][t] on the SU grid
  std::vector<double> pr10_su_;
  std::vector<std::array<double, 3>> pr0_su_;
  std::vector<bool> unreachable_;
};

}  // namespace osofdma
