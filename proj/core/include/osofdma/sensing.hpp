#pragma once

#include <array>

#include "osofdma/model.hpp"

namespace osofdma {

// --- Subchannel notching, general sensing (S0N1B1) -------------------------

// P(m_m busy subchannels missed, m_0 idle subchannels seen idle | PU state, stage).
double pr14(int m_m, int m_0, const PuState& pu, SensingStage s, const ValidatedConfig& vc);
// P(m_a subchannels detected idle | PU state, stage).
double pr13_s0n1b1(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc);
// P(stage | PU state) for two-stage sensing over all M subchannels.
double pr15_s0n1b1(SensingStage s, const PuState& pu, const ValidatedConfig& vc);

// --- Channel blocking (N0), perfect detection ------------------------------

// P(NPUs spread over exactly x_n of the channels not held by WPUs).
double pr21(int x_n, const PuState& pu, const ValidatedConfig& vc);
// P(x_a channels seen idle | x_n channels hold NPUs): every other free channel
// had at least one false alarm among its Y subchannels.
double pr22(int x_a, int x_n, const PuState& pu, const ValidatedConfig& vc);
// P(x_a channels detected idle | PU state, stage).
double pr20(int x_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc);
// pr20 expressed on subchannels: zero unless m_a is a multiple of Y.
double pr13_n0(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc);
double pr15_n0(SensingStage s, const PuState& pu, const ValidatedConfig& vc);

// --- Active-channel sensing (S1N0B0) --------------------------------------

// One channel is used whenever any is found: x_a = 1 for stages 0/1, 0 for stage 2.
double pr20_s1(int x_a, SensingStage s);
// P(stage at t | PU state at t, stage and PU state at t-1).
double pr25(SensingStage s_t, const PuState& cur, SensingStage s_prev, const PuState& prev,
            const ValidatedConfig& vc);

// --- Option dispatch -------------------------------------------------------

// P(m_a | PU state, stage) for the configured option. For S1N0B0, m_a is
// Y when the stage found a channel and 0 otherwise.
double pr13(int m_a, const PuState& pu, SensingStage s, const ValidatedConfig& vc);
// P(stage | PU state) for the two S0 families. S1N0B0 has no closed form; its
// stage law comes from the stage chain in availability.hpp.
double pr15(SensingStage s, const PuState& pu, const ValidatedConfig& vc);

// --- Sensing overhead ------------------------------------------------------

enum class EtaForm {
  corrected,  // stage 1 keeps (t_f - tau_a - tau_f) / t_f of the frame
  printed,    // stage 1 credited with (t_f - tau_a + tau_f) / t_f; regression sentinel only
};

// Fraction of a frame left for data given the joint stage weights at one
// availability level, pr0 = {P(s=0, m_a), P(s=1, m_a), P(s=2, m_a)}. The
// weights are normalised over the stage so the result is E[data fraction | m_a].
double eta(const std::array<double, 3>& pr0, const SystemConfig& cfg,
           EtaForm form = EtaForm::corrected);

// Data fraction of a single frame that ended in stage s.
double frame_data_fraction(SensingStage s, const SystemConfig& cfg,
                           EtaForm form = EtaForm::corrected);

}  // namespace osofdma
