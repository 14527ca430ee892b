#include "osofdma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace osofdma {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw std::runtime_error("cannot parse " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

void put(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

struct Point {
  DesignOption option;
  double value;
  Source source;
};

SweepRow evaluate(const SweepRequest& req, const SweepAxis& axis, const Point& p,
                  std::uint64_t seed) {
  const auto vc = validate_config(req.scenario.with(axis.param, p.value), p.option);
  ThroughputReport rep;
  if (p.source == Source::analysis) {
    rep = throughput(vc);
  } else {
    SimConfig sim = req.sim;
    sim.seed = seed;
    rep = simulate(vc, sim).report;
  }
  return {p.option, axis.param, p.value,        rep.h_total / 1000.0, rep.h_cbr / 1000.0,
          rep.h_vbr / 1000.0, p.source, rep.ci_halfwidth / 1000.0};
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("axis must look like PARAM=start:stop:step");
  SweepAxis axis;
  axis.param = std::string(text.substr(0, eq));
  const auto rhs = text.substr(eq + 1);
  try {
    if (rhs.find(':') != std::string_view::npos) {
      const auto parts = split(rhs, ':');
      if (parts.size() != 3) throw ConfigError("axis range needs start:stop:step");
      const double lo = parse_double(parts[0], "axis start");
      const double hi = parse_double(parts[1], "axis stop");
      const double step = parse_double(parts[2], "axis step");
      if (!(step > 0.0) || hi < lo) throw ConfigError("axis range must have step > 0, stop >= start");
      const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long k = 0; k <= n; ++k) axis.values.push_back(lo + static_cast<double>(k) * step);
    } else {
      for (auto part : split(rhs, ',')) axis.values.push_back(parse_double(part, "axis value"));
    }
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  if (axis.values.empty()) throw ConfigError("axis has no values");
  if (!std::is_sorted(axis.values.begin(), axis.values.end()))
    throw ConfigError("axis values must be ordered");
  return axis;
}

unsigned sweep_workers() {
  if (const char* env = std::getenv("OSOFDMA_THREADS")) {
    unsigned n = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc{} && ptr == s.data() + s.size() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const SweepRequest& req) {
  if (req.options.empty()) throw ConfigError("no design options requested");
  if (!req.analysis && !req.simulation) throw ConfigError("no result source requested");
  const SweepAxis& axis = req.axis ? *req.axis : req.scenario.axis;
  if (axis.values.empty()) throw ConfigError("sweep axis has no values");

  std::vector<Point> points;
  for (auto opt : req.options)
    for (double v : axis.values) {
      if (req.analysis) points.push_back({opt, v, Source::analysis});
      if (req.simulation) points.push_back({opt, v, Source::simulation});
    }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      try {
        rows[i] = evaluate(req, axis, points[i], derive_stream_seed(req.sim.seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = points.size();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(sweep_workers(), points.size());
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  SweepResult result{std::move(rows)};
  sort_rows(result);
  return result;
}

void sort_rows(SweepResult& result) {
  std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tuple(a.option, a.value, a.source) < std::tuple(b.option, b.value, b.source);
  });
}

std::string to_csv(const SweepResult& result) {
  std::string out(sweep_csv_header);
  out += '\n';
  for (const auto& r : result.rows) {
    out += to_string(r.option);
    out += ',';
    out += r.axis;
    out += ',';
    put(out, r.value);
    for (double v : {r.h_total, r.h_cbr, r.h_vbr}) {
      out += ',';
      put(out, v);
    }
    out += ',';
    out += to_string(r.source);
    out += ',';
    put(out, r.ci_halfwidth);
    out += '\n';
  }
  return out;
}

SweepResult parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != sweep_csv_header)
    throw std::runtime_error("sweep CSV header mismatch");
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::runtime_error("sweep CSV row needs 8 fields: " + line);
    SweepRow r;
    auto opt = parse_design_option(f[0]);
    if (!opt) throw std::runtime_error("unknown option in sweep CSV: " + std::string(f[0]));
    r.option = *opt;
    r.axis = std::string(f[1]);
    r.value = parse_double(f[2], "value");
    r.h_total = parse_double(f[3], "h_total_kbps");
    r.h_cbr = parse_double(f[4], "h_cbr_kbps");
    r.h_vbr = parse_double(f[5], "h_vbr_kbps");
    if (f[6] == to_string(Source::analysis)) r.source = Source::analysis;
    else if (f[6] == to_string(Source::simulation)) r.source = Source::simulation;
    else throw std::runtime_error("unknown source in sweep CSV: " + std::string(f[6]));
    r.ci_halfwidth = parse_double(f[7], "ci_halfwidth_kbps");
    result.rows.push_back(std::move(r));
  }
  return result;
}

}  // namespace osofdma
