// osofdma: analytical and simulated throughput of opportunistic OFDMA designs.
//
// Exit codes: 0 ok, 1 analysis/simulation mismatch (validate), 2 config or
// usage error, 3 stationary solve did not converge, 4 anything else.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "osofdma/config_io.hpp"
#include "osofdma/markov.hpp"
#include "osofdma/scenarios.hpp"
#include "osofdma/simulator.hpp"
#include "osofdma/sweep.hpp"
#include "osofdma/throughput.hpp"

namespace {

using namespace osofdma;

enum Exit { ok = 0, mismatch = 1, usage = 2, no_convergence = 3, other = 4 };

struct Common {
  std::string config_path;
  std::string scenario;
  std::optional<double> value;
  std::string options = "all";
  std::string out;
  bool precise = false;
};

struct SimFlags {
  std::uint64_t seed = 1;
  int batches = 100;
  long events_per_batch = 10'000;
  long warmup = 10'000;

  SimConfig get() const { return {seed, warmup, batches, events_per_batch}; }
};

void add_source_flags(CLI::App* cmd, Common& c) {
  auto* cfg = cmd->add_option("--config", c.config_path, "JSON configuration file");
  auto* sc = cmd->add_option("--scenario", c.scenario, "built-in scenario name");
  cfg->excludes(sc);
  cmd->add_option("--value", c.value, "evaluate the scenario at this axis value");
  cmd->add_option("--option", c.options,
                  "s0n1b1|s0n0b1|s0n0b0|s1n0b0|all, comma-separated allowed");
}

void add_sim_flags(CLI::App* cmd, SimFlags& s) {
  cmd->add_option("--seed", s.seed, "master seed");
  cmd->add_option("--batches", s.batches, "batch count")->check(CLI::Range(2, 1 << 30));
  cmd->add_option("--events-per-batch", s.events_per_batch, "frames per batch")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--warmup", s.warmup, "frames discarded before the first batch")
      ->check(CLI::NonNegativeNumber);
}

std::vector<DesignOption> parse_options(const std::string& text) {
  std::vector<DesignOption> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    if (item == "all") {
      out.assign(all_design_options.begin(), all_design_options.end());
      continue;
    }
    auto opt = parse_design_option(item);
    if (!opt) throw ConfigError("unknown design option: " + item);
    out.push_back(*opt);
  }
  if (out.empty()) throw ConfigError("no design options given");
  return out;
}

SystemConfig resolve_config(const Common& c) {
  if (!c.config_path.empty()) {
    if (c.value) throw ConfigError("--value applies to --scenario only");
    return load_config(c.config_path);
  }
  if (c.scenario.empty()) throw ConfigError("one of --config or --scenario is required");
  const Scenario s = builtin(c.scenario);
  return c.value ? s.at(*c.value) : s.base;
}

std::string fmt(double bps, bool precise) {
  char buf[64];
  if (precise)
    std::snprintf(buf, sizeof buf, "%.17g", bps);
  else
    std::snprintf(buf, sizeof buf, "%.1f", bps / 1000.0);
  return buf;
}

void print_report(const ThroughputReport& r, bool precise) {
  const char* unit = precise ? "bit/s" : "kbps";
  std::cout << to_string(r.option) << " (" << to_string(r.source) << ", " << unit << ")\n"
            << "  H   = " << fmt(r.h_total, precise);
  if (r.source == Source::simulation) std::cout << " +/- " << fmt(r.ci_halfwidth, precise);
  std::cout << "\n  H_c = " << fmt(r.h_cbr, precise) << "\n  H_v = " << fmt(r.h_vbr, precise)
            << '\n';
  for (const auto& w : r.warnings) std::cerr << "warning: " << to_string(r.option) << ": " << w << '\n';
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

SweepRow as_row(const ThroughputReport& r) {
  return {r.option, "", 0.0, r.h_total / 1000.0, r.h_cbr / 1000.0, r.h_vbr / 1000.0,
          r.source, r.ci_halfwidth / 1000.0};
}

int cmd_analyze(const Common& c) {
  const auto cfg = resolve_config(c);
  SweepResult csv;
  for (auto opt : parse_options(c.options)) {
    const auto rep = throughput(validate_config(cfg, opt));
    print_report(rep, c.precise);
    csv.rows.push_back(as_row(rep));
  }
  if (!c.out.empty()) write_out(c.out, to_csv(csv));
  return ok;
}

int cmd_simulate(const Common& c, const SimFlags& s, const std::string& trace_path) {
  const auto cfg = resolve_config(c);
  const auto options = parse_options(c.options);
  if (!trace_path.empty() && options.size() != 1)
    throw ConfigError("--trace needs exactly one --option");
  SweepResult csv;
  for (auto opt : options) {
    std::ofstream trace;
    if (!trace_path.empty()) {
      trace.open(trace_path);
      if (!trace) throw ConfigError("cannot write " + trace_path);
    }
    const auto res = simulate(validate_config(cfg, opt), s.get(), trace_path.empty() ? nullptr : &trace);
    print_report(res.report, c.precise);
    csv.rows.push_back(as_row(res.report));
  }
  if (!c.out.empty()) write_out(c.out, to_csv(csv));
  return ok;
}

int cmd_validate(const Common& c, const SimFlags& s, bool printed_eta) {
  const auto cfg = resolve_config(c);
  AnalysisOptions aopts;
  if (printed_eta) aopts.eta_form = EtaForm::printed;
  bool all_pass = true;
  std::printf("%-8s %12s %12s %10s %8s  %s\n", "option", "analysis", "sim_mean", "ci90", "gap%",
              "verdict");
  for (auto opt : parse_options(c.options)) {
    const auto vc = validate_config(cfg, opt);
    const auto ana = throughput(vc, aopts);
    const auto sim = simulate(vc, s.get()).report;
    const double diff = std::abs(ana.h_total - sim.h_total);
    const double gap = sim.h_total > 0 ? diff / sim.h_total : (diff > 0 ? INFINITY : 0.0);
    const bool pass = diff <= sim.ci_halfwidth || gap < 0.10;
    all_pass = all_pass && pass;
    std::printf("%-8s %12.1f %12.1f %10.1f %8.2f  %s\n", std::string(to_string(opt)).c_str(),
                ana.h_total / 1000.0, sim.h_total / 1000.0, sim.ci_halfwidth / 1000.0, 100.0 * gap,
                pass ? "pass" : "FAIL");
  }
  return all_pass ? ok : mismatch;
}

int cmd_sweep(const Common& c, const SimFlags& s, const std::string& axis, bool sim, bool both) {
  if (c.scenario.empty()) throw ConfigError("sweep needs --scenario");
  SweepRequest req{builtin(c.scenario), std::nullopt, parse_options(c.options), true, false,
                   s.get()};
  if (!axis.empty()) req.axis = parse_axis(axis);
  if (sim || both) req.simulation = true;
  if (sim && !both) req.analysis = false;
  const auto result = run_sweep(req);
  write_out(c.out, to_csv(result));
  return ok;
}

int cmd_scenario(const std::string& name, const std::string& out) {
  if (name.empty()) {
    for (const auto& n : builtin_names()) {
      const auto s = builtin(n);
      std::cout << n << "  (axis " << s.axis.param << ", " << s.axis.values.size()
                << " points)  " << s.description << '\n';
    }
    return ok;
  }
  write_out(out, to_json(builtin(name).base) + "\n");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Throughput of opportunistic-spectrum OFDMA design options"};
  app.require_subcommand(1);

  Common common;
  SimFlags sim;
  std::string trace, axis, scenario_name;
  bool use_sim = false, use_analysis = false, use_both = false, printed_eta = false;

  auto* analyze = app.add_subcommand("analyze", "stationary-analysis throughput");
  add_source_flags(analyze, common);
  analyze->add_option("--out", common.out, "also write CSV rows here");
  analyze->add_flag("--precise", common.precise, "print full-precision bit/s instead of kbps");

  auto* simulate_cmd = app.add_subcommand("simulate", "frame-level Monte Carlo throughput");
  add_source_flags(simulate_cmd, common);
  add_sim_flags(simulate_cmd, sim);
  simulate_cmd->add_option("--out", common.out, "also write CSV rows here");
  simulate_cmd->add_option("--trace", trace, "per-frame CSV trace (single option only)");
  simulate_cmd->add_flag("--precise", common.precise, "print full-precision bit/s instead of kbps");

  auto* validate = app.add_subcommand("validate", "compare analysis against simulation");
  add_source_flags(validate, common);
  add_sim_flags(validate, sim);
  validate->add_flag("--printed-eta", printed_eta,
                     "use the uncorrected sensing-overhead sign (regression sentinel)");

  auto* sweep = app.add_subcommand("sweep", "CSV over a scenario axis");
  add_source_flags(sweep, common);
  add_sim_flags(sweep, sim);
  sweep->add_option("--axis", axis, "PARAM=start:stop:step overriding the scenario axis");
  sweep->add_option("--out", common.out, "CSV destination (default stdout)");
  auto* f_sim = sweep->add_flag("--sim", use_sim, "simulation rows only");
  auto* f_ana = sweep->add_flag("--analysis", use_analysis, "analysis rows only (default)");
  auto* f_both = sweep->add_flag("--both", use_both, "analysis and simulation rows");
  f_sim->excludes(f_ana)->excludes(f_both);
  f_ana->excludes(f_both);

  auto* scenario = app.add_subcommand("scenario", "list built-ins or export one as JSON");
  scenario->add_option("name", scenario_name, "scenario to export");
  scenario->add_option("--out", common.out, "JSON destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*analyze) return cmd_analyze(common);
    if (*simulate_cmd) return cmd_simulate(common, sim, trace);
    if (*validate) return cmd_validate(common, sim, printed_eta);
    if (*sweep) return cmd_sweep(common, sim, axis, use_sim, use_both);
    if (*scenario) return cmd_scenario(scenario_name, common.out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage;
  } catch (const UnknownScenario& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return no_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return other;
  }
  return other;
}
