#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "osofdma/model.hpp"
#include "osofdma/throughput.hpp"

namespace osofdma {

struct SimConfig {
  std::uint64_t seed = 1;
  long warmup_events = 10'000;  // one event is one frame
  int batches = 100;
  long events_per_batch = 10'000;
};

// Derives the generator seed of stream `stream` from a master seed (splitmix64).
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

struct FrameOutcome {
  long frame = 0;
  int u_w = 0;
  int u_n = 0;
  int u_c = 0;
  int u_v = 0;
  int m_a = 0;  // on the SU grid (at most Y for fixed-channel options)
  SensingStage s = SensingStage::fine_none;
  double bits_cbr = 0.0;
  double bits_vbr = 0.0;
  double bits() const { return bits_cbr + bits_vbr; }
};

// One frame-slotted replication of the spectrum. Primary users are placed on
// concrete subchannels, sensing is drawn per subchannel, and secondary
// connections are admitted, blocked and squeezed frame by frame.
//
// Requires channel-aligned WPUs (l_w == Y) and NPU sizes dividing Y.
class FrameSimulator {
 public:
  FrameSimulator(const ValidatedConfig& vc, std::uint64_t seed);

  FrameOutcome step();

  const ValidatedConfig& config() const { return vc_; }
  int u_w() const { return u_w_; }
  int u_n() const { return u_n_; }
  int u_c() const { return u_c_; }
  int u_v() const { return u_v_; }
  int m_a() const { return m_a_; }
  SensingStage stage() const { return stage_; }
  int active_channel() const { return active_; }
  // Per-subchannel truth and last sensing verdict, index c * Y + k.
  std::vector<bool> busy_subchannels() const;
  const std::vector<bool>& detected_idle() const { return detected_idle_; }
  // Subchannels handed to SU connections in the last frame.
  const std::vector<int>& su_subchannels() const { return su_subchannels_; }

 private:
  void primary_departures();
  void primary_arrivals();
  bool place_npu();
  void sense();
  void secondary_dynamics();
  void allocate();

  int draw_poisson(double mean);
  int draw_binomial(int n, double p);
  bool draw(double p);

  ValidatedConfig vc_;
  std::mt19937_64 rng_;
  int slots_per_channel_ = 0;
  int l_n_ = 1;

  std::vector<bool> wpu_;         // per channel
  std::vector<bool> npu_;         // per channel * slot
  std::vector<bool> detected_idle_;
  std::vector<int> su_subchannels_;
  int u_w_ = 0, u_n_ = 0, u_c_ = 0, u_v_ = 0;
  int m_a_ = 0;
  int active_ = -1;
  double lv_prev_ = 0.0;
  SensingStage stage_ = SensingStage::fine_none;
  long frame_ = 0;
};

struct SimResult {
  ThroughputReport report;
  std::vector<double> batch_total;  // bits/s per batch
  std::vector<double> batch_cbr;
  std::vector<double> batch_vbr;
  bool degenerate_variance = false;
  // Frame counts after warm-up, indexed like vc.pu_states() / vc.su_states().
  std::vector<long> pu_visits;
  std::vector<long> su_visits;
  // [stage][pu] frame counts after warm-up.
  std::vector<long> stage_visits;
  // [prev][next] availability transitions on the SU grid after warm-up.
  std::vector<long> availability_moves;
};

// Student-t two-sided half-width of the mean of `samples`.
double t_halfwidth(const std::vector<double>& samples, double confidence = 0.90);

// Runs warm-up then batches; `trace`, if given, receives one CSV row per frame
// (frame,u_w,u_n,u_c,u_v,m_a,s,bits_accrued) including warm-up frames.
SimResult simulate(const ValidatedConfig& vc, const SimConfig& sim, std::ostream* trace = nullptr);

}  // namespace osofdma
