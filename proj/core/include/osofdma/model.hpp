#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace osofdma {

// Priority order is the enumeration order: WPU > NPU > CBR > VBR.
enum class UserClass : std::uint8_t { wpu = 0, npu = 1, cbr = 2, vbr = 3 };

inline constexpr std::array<UserClass, 4> all_user_classes{UserClass::wpu, UserClass::npu,
                                                           UserClass::cbr, UserClass::vbr};

std::string_view to_string(UserClass c);

// The four analysed channel/subchannel allocation designs.
//   S: 0 = general two-stage sensing, 1 = active-channel sensing
//   N: 1 = subchannel notching, 0 = channel blocking
//   B: 1 = bonding, 0 = fixed single channel
enum class DesignOption : std::uint8_t { s0n1b1 = 0, s0n0b1 = 1, s0n0b0 = 2, s1n0b0 = 3 };

inline constexpr std::array<DesignOption, 4> all_design_options{
    DesignOption::s0n1b1, DesignOption::s0n0b1, DesignOption::s0n0b0, DesignOption::s1n0b0};

std::string_view to_string(DesignOption opt);  // "S0N1B1", ...
std::optional<DesignOption> parse_design_option(std::string_view text);  // case-insensitive

constexpr bool active_channel_sensing(DesignOption opt) { return opt == DesignOption::s1n0b0; }
constexpr bool channel_blocking(DesignOption opt) { return opt != DesignOption::s0n1b1; }
constexpr bool fixed_channel(DesignOption opt) {
  return opt == DesignOption::s0n0b0 || opt == DesignOption::s1n0b0;
}

enum class SensingStage : std::uint8_t {
  coarse_only = 0,  // coarse sensing found nothing, no fine stage
  fine_idle = 1,    // fine stage ran and found idle spectrum
  fine_none = 2,    // fine stage ran and found nothing usable
};

inline constexpr std::array<SensingStage, 3> all_stages{
    SensingStage::coarse_only, SensingStage::fine_idle, SensingStage::fine_none};

constexpr int index(SensingStage s) { return static_cast<int>(s); }

struct SensingPoint {
  double delta = 1.0;  // detection probability
  double phi = 0.0;    // false-alarm probability
  double tau = 0.0;    // sensing time, seconds
  bool operator==(const SensingPoint&) const = default;
};

struct TrafficParams {
  double lambda = 0.0;  // aggregate arrival rate, 1/s
  double mu = 1.0;      // departure rate per connection (per subchannel for VBR), 1/s
  int l = 1;            // subchannels per connection; unused for VBR
  int u_max = 0;        // maximum simultaneous connections; 0 disables the class
  bool operator==(const TrafficParams&) const = default;
};

struct SystemConfig {
  int x = 1;          // channels
  int y = 1;          // subchannels per channel
  double t_f = 0.02;  // frame length, seconds
  SensingPoint coarse;
  SensingPoint fine;
  double c_bps = 0.0;  // per-subchannel capacity
  std::array<TrafficParams, 4> classes{};

  int total_subchannels() const { return x * y; }
  TrafficParams& operator[](UserClass c) { return classes[static_cast<std::size_t>(c)]; }
  const TrafficParams& operator[](UserClass c) const {
    return classes[static_cast<std::size_t>(c)];
  }

  bool operator==(const SystemConfig&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PuState {
  int u_w = 0;
  int u_n = 0;
  auto operator<=>(const PuState&) const = default;
};

struct SuState {
  int u_c = 0;
  int u_v = 0;
  int m_a = 0;
  auto operator<=>(const SuState&) const = default;
};

// State of the active-channel sensing chain: {S, U_w, U_n}.
struct StagePuState {
  SensingStage s = SensingStage::coarse_only;
  int u_w = 0;
  int u_n = 0;
  auto operator<=>(const StagePuState&) const = default;
};

enum class StateSpace { pu, su, sensing_pu };

// A configuration that passed validation for one design option, with the
// derived capacities and the three state enumerations precomputed.
class ValidatedConfig {
 public:
  const SystemConfig& config() const { return cfg_; }
  DesignOption option() const { return opt_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const TrafficParams& traffic(UserClass c) const { return cfg_[c]; }
  int m() const { return cfg_.total_subchannels(); }
  int x() const { return cfg_.x; }
  int y() const { return cfg_.y; }

  // floor(Y / l_n): NPU slots per channel.
  int npu_slots_per_channel() const;
  int wpu_cap() const;
  // min(U_n,max, floor((M - u_w l_w) / l_n)).
  int npu_cap(int u_w) const;
  // Subchannels the SU network may use when m_a are detected idle (min(Y, m_a) for B0).
  int usable_subchannels(int m_a) const;
  // min(U_c,max, floor(usable(m_a) / l_c)).
  int cbr_cap(int m_a) const;
  // Subchannels actually occupied by primary users.
  int occupied_by_pu(const PuState& pu) const;

  // Values M_a may take in the SU chain for this option.
  const std::vector<int>& availability_grid() const { return grid_; }
  std::optional<std::size_t> grid_index(int m_a) const;

  const std::vector<PuState>& pu_states() const { return pu_states_; }
  const std::vector<SuState>& su_states() const { return su_states_; }
  const std::vector<StagePuState>& stage_states() const { return stage_states_; }

  std::optional<std::size_t> pu_index(const PuState& s) const;
  std::optional<std::size_t> su_index(const SuState& s) const;
  std::optional<std::size_t> stage_index(const StagePuState& s) const;

 private:
  friend ValidatedConfig validate_config(const SystemConfig& cfg, DesignOption opt);
  ValidatedConfig() = default;

  SystemConfig cfg_;
  DesignOption opt_ = DesignOption::s0n1b1;
  std::vector<std::string> warnings_;
  std::vector<int> grid_;
  std::vector<PuState> pu_states_;
  std::vector<SuState> su_states_;
  std::vector<StagePuState> stage_states_;
  std::vector<std::size_t> pu_offsets_;  // first index of each u_w row
  std::vector<long> su_lookup_;          // dense (u_c, u_v, grid) -> index, -1 if absent
};

// Throws ConfigError naming the violated invariant. Under channel blocking the
// perfect-detection approximation is enforced: delta_a and delta_f are forced
// to 1 and a warning is recorded.
ValidatedConfig validate_config(const SystemConfig& cfg, DesignOption opt);

// Lexicographic, duplicate-free enumerations of the state spaces.
std::vector<PuState> enumerate_pu_states(const ValidatedConfig& vc);
std::vector<SuState> enumerate_su_states(const ValidatedConfig& vc);
std::vector<StagePuState> enumerate_stage_states(const ValidatedConfig& vc);
std::size_t state_count(const ValidatedConfig& vc, StateSpace space);

}  // namespace osofdma
