#pragma once

#include <string>
#include <vector>

#include "osofdma/availability.hpp"
#include "osofdma/markov.hpp"
#include "osofdma/model.hpp"
#include "osofdma/sensing.hpp"

namespace osofdma {

enum class Source { analysis, simulation };
std::string_view to_string(Source s);

// All rates in bits/s.
struct ThroughputReport {
  DesignOption option = DesignOption::s0n1b1;
  Source source = Source::analysis;
  double h_total = 0.0;
  double h_cbr = 0.0;
  double h_vbr = 0.0;
  // 90% half-widths; zero for analysis.
  double ci_halfwidth = 0.0;
  double ci_cbr = 0.0;
  double ci_vbr = 0.0;
  std::vector<std::string> warnings;
};

struct AnalysisOptions {
  EtaForm eta_form = EtaForm::corrected;
};

// Full analytical pipeline for one validated configuration, kept around so
// tests can inspect the intermediate laws.
struct Analysis {
  explicit Analysis(const ValidatedConfig& vc, const AnalysisOptions& opts = {});

  ValidatedConfig config;
  AvailabilityModel availability;
  TransitionKernel su_kernel;
  Distribution su_pi;  // stationary (u_c, u_v, m_a) law
  ThroughputReport report;
};

// P(m_c, m_v, m_a) from the stationary SU law.
double pr1(int m_c, int m_v, int m_a, const Distribution& su_pi, const ValidatedConfig& vc);

ThroughputReport throughput(const ValidatedConfig& vc, const AnalysisOptions& opts = {});

struct CapacityModel {
  double c_p = 0.0;  // PHY rate per subchannel, bits/s
  double xi = 0.0;   // MAC overhead fraction
};

double subchannel_capacity(const CapacityModel& model);

// OR-combined probability over n independent sensing users.
double collaborative_false_alarm(double p_single, int n_users);

}  // namespace osofdma
