#include "osofdma/simulator.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <ostream>

#include "osofdma/sensing.hpp"

namespace osofdma {

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FrameSimulator::FrameSimulator(const ValidatedConfig& vc, std::uint64_t seed)
    : vc_(vc), rng_(derive_stream_seed(seed, 0)) {
  const int y = vc_.y();
  const auto& w = vc_.traffic(UserClass::wpu);
  const auto& n = vc_.traffic(UserClass::npu);
  if (w.u_max > 0 && w.l != y)
    throw ConfigError("simulator requires wpu.l == y (one WPU per channel)");
  if (n.u_max > 0 && y % n.l != 0) throw ConfigError("simulator requires npu.l to divide y");
  l_n_ = n.l;
  slots_per_channel_ = y / n.l;
  wpu_.assign(static_cast<std::size_t>(vc_.x()), false);
  npu_.assign(static_cast<std::size_t>(vc_.x() * slots_per_channel_), false);
  detected_idle_.assign(static_cast<std::size_t>(vc_.m()), false);
}

int FrameSimulator::draw_poisson(double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(rng_);
}

int FrameSimulator::draw_binomial(int n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  return std::binomial_distribution<int>(n, p)(rng_);
}

bool FrameSimulator::draw(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

std::vector<bool> FrameSimulator::busy_subchannels() const {
  const int y = vc_.y();
  std::vector<bool> busy(static_cast<std::size_t>(vc_.m()), false);
  for (int c = 0; c < vc_.x(); ++c) {
    for (int k = 0; k < y; ++k) {
      const int slot = k / l_n_;
      const bool npu = slot < slots_per_channel_ &&
                       npu_[static_cast<std::size_t>(c * slots_per_channel_ + slot)];
      busy[static_cast<std::size_t>(c * y + k)] = wpu_[static_cast<std::size_t>(c)] || npu;
    }
  }
  return busy;
}

void FrameSimulator::primary_departures() {
  const double t_f = vc_.config().t_f;
  const double p_w = -std::expm1(-vc_.traffic(UserClass::wpu).mu * t_f);
  const double p_n = -std::expm1(-vc_.traffic(UserClass::npu).mu * t_f);
  for (std::size_t c = 0; c < wpu_.size(); ++c)
    if (wpu_[c] && draw(p_w)) {
      wpu_[c] = false;
      --u_w_;
    }
  for (std::size_t s = 0; s < npu_.size(); ++s)
    if (npu_[s] && draw(p_n)) {
      npu_[s] = false;
      --u_n_;
    }
}

bool FrameSimulator::place_npu() {
  std::vector<std::size_t> free;
  for (int c = 0; c < vc_.x(); ++c) {
    if (wpu_[static_cast<std::size_t>(c)]) continue;
    for (int k = 0; k < slots_per_channel_; ++k) {
      const auto s = static_cast<std::size_t>(c * slots_per_channel_ + k);
      if (!npu_[s]) free.push_back(s);
    }
  }
  if (free.empty()) return false;
  npu_[free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng_)]] = true;
  return true;
}

void FrameSimulator::primary_arrivals() {
  const double t_f = vc_.config().t_f;
  const auto& w = vc_.traffic(UserClass::wpu);
  const auto& n = vc_.traffic(UserClass::npu);

  const int wpu_room = vc_.wpu_cap() - u_w_;
  const int wpu_new = std::min(std::max(0, wpu_room), draw_poisson(w.lambda * t_f));
  for (int a = 0; a < wpu_new; ++a) {
    std::vector<int> open;
    for (int c = 0; c < vc_.x(); ++c)
      if (!wpu_[static_cast<std::size_t>(c)]) open.push_back(c);
    const int c = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng_)];
    wpu_[static_cast<std::size_t>(c)] = true;
    ++u_w_;
    // NPUs on the taken channel move to a random free slot or are dropped.
    int displaced = 0;
    for (int k = 0; k < slots_per_channel_; ++k) {
      const auto s = static_cast<std::size_t>(c * slots_per_channel_ + k);
      if (npu_[s]) {
        npu_[s] = false;
        ++displaced;
      }
    }
    for (int d = 0; d < displaced; ++d)
      if (!place_npu()) --u_n_;
  }

  const int npu_room = vc_.npu_cap(u_w_) - u_n_;
  const int npu_new = std::min(std::max(0, npu_room), draw_poisson(n.lambda * t_f));
  for (int a = 0; a < npu_new; ++a)
    if (place_npu()) ++u_n_;
}

void FrameSimulator::sense() {
  const auto opt = vc_.option();
  const auto& coarse = vc_.config().coarse;
  const auto& fine = vc_.config().fine;
  const int x = vc_.x();
  const int y = vc_.y();
  const auto busy = busy_subchannels();

  auto coarse_flags = [&](int first, int count) {
    for (int k = first; k < first + count; ++k)
      if (draw(busy[static_cast<std::size_t>(k)] ? coarse.delta : coarse.phi)) return true;
    return false;
  };
  auto fine_pass = [&]() {
    for (std::size_t k = 0; k < busy.size(); ++k)
      detected_idle_[k] = draw(busy[k] ? 1.0 - fine.delta : 1.0 - fine.phi);
  };
  auto channel_idle = [&](int c) {
    for (int k = 0; k < y; ++k)
      if (!detected_idle_[static_cast<std::size_t>(c * y + k)]) return false;
    return true;
  };

  int raw = 0;
  if (active_channel_sensing(opt)) {
    if (active_ >= 0 && !coarse_flags(active_ * y, y)) {
      stage_ = SensingStage::coarse_only;
      std::fill(detected_idle_.begin(), detected_idle_.end(), false);
      for (int k = 0; k < y; ++k) detected_idle_[static_cast<std::size_t>(active_ * y + k)] = true;
    } else {
      fine_pass();
      std::vector<int> idle;
      for (int c = 0; c < x; ++c)
        if (channel_idle(c)) idle.push_back(c);
      if (idle.empty()) {
        stage_ = SensingStage::fine_none;
        active_ = -1;
      } else {
        stage_ = SensingStage::fine_idle;
        if (active_ < 0 || !channel_idle(active_))
          active_ = idle[std::uniform_int_distribution<std::size_t>(0, idle.size() - 1)(rng_)];
      }
    }
    raw = active_ >= 0 ? y : 0;
  } else {
    if (!coarse_flags(0, vc_.m())) {
      stage_ = SensingStage::coarse_only;
      std::fill(detected_idle_.begin(), detected_idle_.end(), true);
      raw = vc_.m();
    } else {
      fine_pass();
      const long seen = std::count(detected_idle_.begin(), detected_idle_.end(), true);
      stage_ = seen > 0 ? SensingStage::fine_idle : SensingStage::fine_none;
      if (channel_blocking(opt)) {
        int x_a = 0;
        for (int c = 0; c < x; ++c) x_a += channel_idle(c) ? 1 : 0;
        raw = x_a * y;
      } else {
        raw = static_cast<int>(seen);
      }
    }
  }
  m_a_ = vc_.usable_subchannels(raw);
}

void FrameSimulator::secondary_dynamics() {
  const double t_f = vc_.config().t_f;
  const auto& c = vc_.traffic(UserClass::cbr);
  const auto& v = vc_.traffic(UserClass::vbr);

  const int cbr_left = u_c_ - draw_binomial(u_c_, -std::expm1(-c.mu * t_f));
  u_c_ = std::min(vc_.cbr_cap(m_a_), cbr_left + draw_poisson(c.lambda * t_f));

  const int vbr_left = u_v_ - draw_binomial(u_v_, -std::expm1(-lv_prev_ * v.mu * t_f));
  u_v_ = std::min(v.u_max, vbr_left + draw_poisson(v.lambda * t_f));
}

void FrameSimulator::allocate() {
  const int usable = vc_.usable_subchannels(m_a_);
  const int m_c = u_c_ * vc_.traffic(UserClass::cbr).l;
  const int m_v = u_v_ > 0 ? usable - m_c : 0;
  lv_prev_ = u_v_ > 0 ? static_cast<double>(usable - m_c) / u_v_ : 0.0;

  // Hand out detected-idle subchannels in order; fixed-channel options stay on one channel.
  su_subchannels_.clear();
  const int y = vc_.y();
  int first = 0, last = vc_.m();
  if (fixed_channel(vc_.option()) && m_a_ > 0) {
    int c = active_;
    if (c < 0)
      for (c = 0; c < vc_.x(); ++c) {
        bool all = true;
        for (int k = 0; k < y; ++k) all = all && detected_idle_[static_cast<std::size_t>(c * y + k)];
        if (all) break;
      }
    first = c * y;
    last = first + y;
  }
  for (int k = first; k < last && static_cast<int>(su_subchannels_.size()) < m_c + m_v; ++k)
    if (detected_idle_[static_cast<std::size_t>(k)]) su_subchannels_.push_back(k);
}

FrameOutcome FrameSimulator::step() {
  primary_departures();
  primary_arrivals();
  sense();
  secondary_dynamics();
  allocate();

  const auto& cfg = vc_.config();
  const double rate = cfg.c_bps * frame_data_fraction(stage_, cfg) * cfg.t_f;
  const int m_c = u_c_ * vc_.traffic(UserClass::cbr).l;
  const int m_v = u_v_ > 0 ? vc_.usable_subchannels(m_a_) - m_c : 0;

  FrameOutcome out;
  out.frame = frame_++;
  out.u_w = u_w_;
  out.u_n = u_n_;
  out.u_c = u_c_;
  out.u_v = u_v_;
  out.m_a = m_a_;
  out.s = stage_;
  out.bits_cbr = rate * m_c;
  out.bits_vbr = rate * m_v;
  return out;
}

double t_halfwidth(const std::vector<double>& samples, double confidence) {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  boost::math::students_t dist(static_cast<double>(n - 1));
  const double q = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  return q * sd / std::sqrt(static_cast<double>(n));
}

SimResult simulate(const ValidatedConfig& vc, const SimConfig& sim, std::ostream* trace) {
  if (sim.batches < 2) throw ConfigError("simulation needs at least 2 batches");
  if (sim.events_per_batch < 1) throw ConfigError("events_per_batch must be >= 1");
  if (sim.warmup_events < 0) throw ConfigError("warmup_events must be >= 0");

  FrameSimulator world(vc, sim.seed);
  const double t_f = vc.config().t_f;
  const std::size_t grid = vc.availability_grid().size();

  SimResult res;
  res.pu_visits.assign(vc.pu_states().size(), 0);
  res.su_visits.assign(vc.su_states().size(), 0);
  res.stage_visits.assign(3 * vc.pu_states().size(), 0);
  res.availability_moves.assign(grid * grid, 0);

  if (trace) *trace << "frame,u_w,u_n,u_c,u_v,m_a,s,bits_accrued\n";
  auto emit = [&](const FrameOutcome& f) {
    if (trace)
      *trace << f.frame << ',' << f.u_w << ',' << f.u_n << ',' << f.u_c << ',' << f.u_v << ','
             << f.m_a << ',' << index(f.s) << ',' << f.bits() << '\n';
  };

  std::size_t prev_grid = 0;
  for (long e = 0; e < sim.warmup_events; ++e) {
    const auto f = world.step();
    prev_grid = *vc.grid_index(f.m_a);
    emit(f);
  }

  const double span = static_cast<double>(sim.events_per_batch) * t_f;
  for (int b = 0; b < sim.batches; ++b) {
    double cbr = 0.0, vbr = 0.0;
    for (long e = 0; e < sim.events_per_batch; ++e) {
      const auto f = world.step();
      emit(f);
      cbr += f.bits_cbr;
      vbr += f.bits_vbr;
      const std::size_t pu = *vc.pu_index({f.u_w, f.u_n});
      ++res.pu_visits[pu];
      ++res.stage_visits[static_cast<std::size_t>(index(f.s)) * vc.pu_states().size() + pu];
      if (auto su = vc.su_index({f.u_c, f.u_v, f.m_a})) ++res.su_visits[*su];
      const std::size_t g = *vc.grid_index(f.m_a);
      ++res.availability_moves[prev_grid * grid + g];
      prev_grid = g;
    }
    res.batch_cbr.push_back(cbr / span);
    res.batch_vbr.push_back(vbr / span);
    res.batch_total.push_back((cbr + vbr) / span);
  }

  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  auto& r = res.report;
  r.option = vc.option();
  r.source = Source::simulation;
  r.h_cbr = mean(res.batch_cbr);
  r.h_vbr = mean(res.batch_vbr);
  r.h_total = r.h_cbr + r.h_vbr;
  r.ci_halfwidth = t_halfwidth(res.batch_total);
  r.ci_cbr = t_halfwidth(res.batch_cbr);
  r.ci_vbr = t_halfwidth(res.batch_vbr);
  r.warnings = vc.warnings();
  const auto [lo, hi] = std::minmax_element(res.batch_total.begin(), res.batch_total.end());
  res.degenerate_variance = *lo == *hi;
  if (res.degenerate_variance)
    r.warnings.push_back("degenerate variance: every batch mean is identical");
  return res;
}

}  // namespace osofdma
