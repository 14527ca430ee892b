#include "osofdma/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace osofdma {

namespace {

// One hour of real time maps to 12 s after the 5-minute normalization.
constexpr double seconds_per_hour = 3600.0 / 300.0;

int as_int(std::string_view param, double value) {
  if (!std::isfinite(value) || std::floor(value) != value)
    throw ConfigError(std::string(param) + " must be an integer");
  return static_cast<int>(value);
}

std::optional<UserClass> class_named(std::string_view name) {
  for (auto c : all_user_classes)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

SystemConfig fig3_base() {
  SystemConfig cfg;
  cfg.x = 4;
  cfg.y = 10;
  cfg.t_f = 0.02;
  cfg.coarse = {0.99, 0.1, 0.0};
  cfg.fine = {1.0, 0.0, 0.6 * 0.02};
  cfg.c_bps = 374'400.0;
  cfg[UserClass::wpu] = {0.0, 1.0 / 48.0, 10, 2};
  cfg[UserClass::npu] = {0.0, 1.0 / 12.0, 1, 10};
  cfg[UserClass::cbr] = {0.0, 1.0, 1, 10};
  cfg[UserClass::vbr] = {0.0, 1.0 / 240.0, 1, 2};
  return cfg;
}

Scenario fig3(std::string name, std::string description, SweepAxis axis) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.base = fig3_base();
  s.axis = std::move(axis);
  s.per_user_interarrival = {144.0, 24.0, 1.0, 12.0};
  s.base = s.with("x", s.base.x);  // refresh derived rates
  return s;
}

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 1e-9 * step; ++k) out.push_back(lo + k * step);
  return out;
}

struct Population {
  const char* name;
  const char* description;
  double rho;
  double activity_hours;
};

constexpr std::array<Population, 4> populations{{
    {"heavy-urban", "Heavy urban population, CBR cap sweep", 7452.7, 1.0},
    {"urban", "Urban population, CBR cap sweep", 4708.2, 1.0},
    {"light-urban", "Light urban population, CBR cap sweep", 2701.0, 1.0},
    {"event", "Heavy urban event, long microphone sessions", 7452.7, 4.0},
}};

// Published microphone caps; "event" exceeds the fluid-flow estimate.
constexpr std::array<int, 4> published_u_nmax{8, 5, 3, 18};

Scenario population(std::size_t k) {
  const auto& p = populations[k];
  Scenario s;
  s.name = p.name;
  s.description = p.description;
  s.base = fig3_base();
  s.base[UserClass::wpu].u_max = 0;
  auto& npu = s.base[UserClass::npu];
  npu.u_max = published_u_nmax[k];
  npu.lambda = fluid_flow_lambda_n(p.rho, effective_microphone_density, 2.0, 1.5) /
               seconds_per_hour;
  npu.mu = 1.0 / (p.activity_hours * seconds_per_hour);
  s.per_user_interarrival = {std::nullopt, std::nullopt, 1.0, 12.0};
  s.axis = {"cbr.u_max", range(1, 10, 1)};
  s.base = s.with("x", s.base.x);
  return s;
}

Scenario sensing_sweep() {
  Scenario s = fig3("sensing-sweep", "Coarse sensing time against its false-alarm rate", {});
  s.base[UserClass::npu].u_max = 2;
  s.coarse_phi_from_table = true;
  for (const auto& row : sensing_table()) s.axis.values.push_back(row.tau_ms);
  s.axis.param = "coarse.tau_ms";
  s.base = s.at(0.0);
  return s;
}

// Small enough for brute-force oracles in every option.
Scenario toy() {
  Scenario s;
  s.name = "toy";
  s.description = "Two 4-subchannel channels for oracle tests";
  auto& cfg = s.base;
  cfg.x = 2;
  cfg.y = 4;
  cfg.t_f = 0.02;
  cfg.coarse = {0.99, 0.1, 0.0};
  cfg.fine = {1.0, 0.0, 0.004};
  cfg.c_bps = 1000.0;
  cfg[UserClass::wpu] = {0.5, 1.0, 4, 1};
  cfg[UserClass::npu] = {2.0, 2.0, 1, 2};
  cfg[UserClass::cbr] = {5.0, 5.0, 1, 3};
  cfg[UserClass::vbr] = {1.0, 0.5, 1, 1};
  s.axis = {"npu.u_max", {0, 1, 2}};
  return s;
}

}  // namespace

void apply_param(SystemConfig& cfg, std::string_view param, double value) {
  if (!std::isfinite(value)) throw ConfigError(std::string(param) + " must be finite");
  if (param == "x") return void(cfg.x = as_int(param, value));
  if (param == "y") return void(cfg.y = as_int(param, value));
  if (param == "t_f_s") return void(cfg.t_f = value);
  if (param == "c_bps") return void(cfg.c_bps = value);

  const auto dot = param.find('.');
  if (dot == std::string_view::npos) throw ConfigError("unknown parameter: " + std::string(param));
  const auto head = param.substr(0, dot);
  const auto field = param.substr(dot + 1);

  if (head == "coarse" || head == "fine") {
    auto& sp = head == "coarse" ? cfg.coarse : cfg.fine;
    if (field == "delta") return void(sp.delta = value);
    if (field == "phi") return void(sp.phi = value);
    if (field == "tau_s") return void(sp.tau = value);
    if (field == "tau_ms") return void(sp.tau = value / 1000.0);
  } else if (auto c = class_named(head)) {
    auto& tp = cfg[*c];
    if (field == "lambda_per_s") return void(tp.lambda = value);
    if (field == "mu_per_s") return void(tp.mu = value);
    if (field == "l") return void(tp.l = as_int(param, value));
    if (field == "u_max") return void(tp.u_max = as_int(param, value));
  }
  throw ConfigError("unknown parameter: " + std::string(param));
}

SystemConfig Scenario::with(std::string_view param, double value) const {
  SystemConfig cfg = base;
  apply_param(cfg, param, value);
  for (auto c : all_user_classes) {
    const auto& period = per_user_interarrival[static_cast<std::size_t>(c)];
    if (period) cfg[c].lambda = cfg[c].u_max / *period;
  }
  if (coarse_phi_from_table) {
    bool found = false;
    for (const auto& row : sensing_table())
      if (std::abs(row.tau_ms - cfg.coarse.tau * 1000.0) < 1e-9) {
        cfg.coarse.phi = row.phi;
        found = true;
      }
    if (!found) throw ConfigError("coarse sensing time is not a row of the sensing table");
  }
  return cfg;
}

const std::vector<SensingRow>& sensing_table() {
  // Taken as printed; the last two rates are not monotone in the sensing time.
  static const std::vector<SensingRow> rows{
      {0.0, 1.0},     {0.5, 0.2308}, {1.0, 0.0446},  {1.5, 0.0087},   {2.0, 0.0018},
      {2.5, 0.0004},  {3.0, 0.0001}, {3.5, 1.57e-4}, {4.0, 0.333e-4},
  };
  return rows;
}

double fluid_flow_lambda_n(double rho, double h, double diameter_mi, double speed_mph) {
  if (rho < 0 || h < 0 || diameter_mi < 0 || speed_mph < 0)
    throw ConfigError("fluid-flow inputs must be >= 0");
  return rho * h * std::numbers::pi * diameter_mi * speed_mph;
}

int fluid_flow_u_nmax(double rho, double h, double diameter_mi) {
  if (rho < 0 || h < 0 || diameter_mi < 0) throw ConfigError("fluid-flow inputs must be >= 0");
  const double radius = diameter_mi / 2.0;
  // Rounded to nearest: flooring gives 7/4/2 for the three urban densities.
  const double expected = std::numbers::pi * radius * radius * rho * h;
  return std::max(static_cast<int>(std::lround(expected)), 1);
}

Scenario builtin(std::string_view name) {
  if (name == "fig3-npu")
    return fig3("fig3-npu", "Throughput against the NPU cap", {"npu.u_max", range(0, 10, 1)});
  if (name == "fig3-wpu")
    return fig3("fig3-wpu", "Throughput against the WPU cap", {"wpu.u_max", range(0, 4, 1)});
  for (std::size_t k = 0; k < populations.size(); ++k)
    if (name == populations[k].name) return population(k);
  if (name == "sensing-sweep") return sensing_sweep();
  if (name == "toy") return toy();
  throw UnknownScenario("unknown scenario: " + std::string(name));
}

std::vector<std::string> builtin_names() {
  return {"fig3-npu", "fig3-wpu", "heavy-urban", "urban", "light-urban",
          "event",    "sensing-sweep", "toy"};
}

}  // namespace osofdma
