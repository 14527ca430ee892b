#include "osofdma/throughput.hpp"

#include <cmath>

#include "osofdma/su_dynamics.hpp"

namespace osofdma {

std::string_view to_string(Source s) {
  return s == Source::analysis ? "analysis" : "simulation";
}

double pr1(int m_c, int m_v, int m_a, const Distribution& su_pi, const ValidatedConfig& vc) {
  const auto& states = vc.su_states();
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].m_a == m_a && pr2(m_c, m_v, states[i], vc)) total += su_pi[i];
  return total;
}

Analysis::Analysis(const ValidatedConfig& vc, const AnalysisOptions& opts)
    : config(vc),
      availability(vc),
      su_kernel(build_su_kernel(vc, availability)),
      su_pi(su_steady(vc, availability, su_kernel)) {
  const auto& cfg = vc.config();
  const auto& states = vc.su_states();
  const auto& grid = vc.availability_grid();

  std::vector<double> eta_at(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    eta_at[g] = eta(availability.pr0_su(grid[g]), cfg, opts.eta_form);

  double cbr = 0.0, vbr = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (su_pi[i] == 0.0) continue;
    const auto split = split_subchannels(states[i], vc);
    if (!split.feasible) continue;
    const double w = su_pi[i] * eta_at[*vc.grid_index(states[i].m_a)];
    cbr += w * split.m_c;
    vbr += w * split.m_v;
  }

  report.option = vc.option();
  report.source = Source::analysis;
  report.h_cbr = cfg.c_bps * cbr;
  report.h_vbr = cfg.c_bps * vbr;
  report.h_total = report.h_cbr + report.h_vbr;
  report.warnings = vc.warnings();
  if (availability.pu_steady().reducible)
    report.warnings.push_back("PU chain has several closed classes; start-vector limit used");
  if (su_pi.reducible)
    report.warnings.push_back("SU chain has several closed classes; start-vector limit used");
}

ThroughputReport throughput(const ValidatedConfig& vc, const AnalysisOptions& opts) {
  return Analysis(vc, opts).report;
}

double subchannel_capacity(const CapacityModel& model) { return (1.0 - model.xi) * model.c_p; }

double collaborative_false_alarm(double p_single, int n_users) {
  return 1.0 - std::pow(1.0 - p_single, n_users);
}

}  // namespace osofdma
