#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osofdma/model.hpp"

namespace osofdma {

class UnknownScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepAxis {
  std::string param;  // e.g. "npu.u_max", "coarse.tau_ms"
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  std::string description;
  SystemConfig base;
  SweepAxis axis;
  // When set, a class's arrival rate follows its cap: lambda = u_max / period.
  std::array<std::optional<double>, 4> per_user_interarrival{};
  // Coarse false-alarm rate tracks the sensing time through sensing_table().
  bool coarse_phi_from_table = false;

  // Base config with `param` set to `value` and the derived rates refreshed.
  SystemConfig with(std::string_view param, double value) const;
  SystemConfig at(double axis_value) const { return with(axis.param, axis_value); }
};

// Sets one named parameter. Accepted names: x, y, t_f_s, c_bps,
// coarse|fine.{delta,phi,tau_s,tau_ms}, <class>.{lambda_per_s,mu_per_s,l,u_max}.
void apply_param(SystemConfig& cfg, std::string_view param, double value);

struct SensingRow {
  double tau_ms;
  double phi;
};
// Coarse sensing time against false-alarm rate, in table order.
const std::vector<SensingRow>& sensing_table();

// Fluid-flow population model: users crossing a circle of diameter L miles
// at v mph in a population of density rho per square mile, h devices each.
double fluid_flow_lambda_n(double rho, double h, double diameter_mi, double speed_mph);
int fluid_flow_u_nmax(double rho, double h, double diameter_mi);

// Effective device density: one microphone per 300 inhabitants, active 10% of the time.
inline constexpr double effective_microphone_density = 0.1 / 300.0;

Scenario builtin(std::string_view name);
std::vector<std::string> builtin_names();

}  // namespace osofdma
