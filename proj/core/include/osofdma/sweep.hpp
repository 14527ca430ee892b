#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osofdma/model.hpp"
#include "osofdma/scenarios.hpp"
#include "osofdma/simulator.hpp"
#include "osofdma/throughput.hpp"

namespace osofdma {

// One CSV row; throughput fields in kbps.
struct SweepRow {
  DesignOption option = DesignOption::s0n1b1;
  std::string axis;
  double value = 0.0;
  double h_total = 0.0;
  double h_cbr = 0.0;
  double h_vbr = 0.0;
  Source source = Source::analysis;
  double ci_halfwidth = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool operator==(const SweepResult&) const = default;
};

inline constexpr std::string_view sweep_csv_header =
    "option,axis,value,h_total_kbps,h_cbr_kbps,h_vbr_kbps,source,ci_halfwidth_kbps";

// Parses "PARAM=start:stop:step" (inclusive stop) or "PARAM=v1,v2,...".
SweepAxis parse_axis(std::string_view text);

struct SweepRequest {
  Scenario scenario;
  std::optional<SweepAxis> axis;  // overrides the scenario's own axis
  std::vector<DesignOption> options;
  bool analysis = true;
  bool simulation = false;
  SimConfig sim;  // seed is the master seed; each point derives its own stream
};

// Pool size: OSOFDMA_THREADS if set and positive, else hardware concurrency.
unsigned sweep_workers();

// Evaluates every (option, value, source) point and returns rows sorted by
// (option, value, source) regardless of completion order. The first failure
// of any point is rethrown after the pool drains.
SweepResult run_sweep(const SweepRequest& req);

void sort_rows(SweepResult& result);
std::string to_csv(const SweepResult& result);
SweepResult parse_csv(std::string_view text);  // throws std::runtime_error on malformed input

}  // namespace osofdma
