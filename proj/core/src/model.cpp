#include "osofdma/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace osofdma {

std::string_view to_string(UserClass c) {
  switch (c) {
    case UserClass::wpu: return "wpu";
    case UserClass::npu: return "npu";
    case UserClass::cbr: return "cbr";
    case UserClass::vbr: return "vbr";
  }
  return "?";
}

std::string_view to_string(DesignOption opt) {
  switch (opt) {
    case DesignOption::s0n1b1: return "S0N1B1";
    case DesignOption::s0n0b1: return "S0N0B1";
    case DesignOption::s0n0b0: return "S0N0B0";
    case DesignOption::s1n0b0: return "S1N0B0";
  }
  return "?";
}

std::optional<DesignOption> parse_design_option(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (auto opt : all_design_options) {
    std::string name(to_string(opt));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (name == lower) return opt;
  }
  return std::nullopt;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_sensing(const SensingPoint& sp, std::string_view name) {
  const std::string n(name);
  require(is_probability(sp.delta), n + ".delta must lie in [0,1]");
  require(is_probability(sp.phi), n + ".phi must lie in [0,1]");
  require(std::isfinite(sp.tau) && sp.tau >= 0.0, n + ".tau must be >= 0");
}

void check_traffic(const TrafficParams& tp, UserClass c) {
  const std::string n(to_string(c));
  require(std::isfinite(tp.lambda) && tp.lambda >= 0.0, n + ".lambda must be >= 0");
  require(std::isfinite(tp.mu) && tp.mu > 0.0, n + ".mu must be > 0");
  require(tp.u_max >= 0, n + ".u_max must be >= 0");
  if (c != UserClass::vbr) require(tp.l >= 1, n + ".l must be >= 1");
}

}  // namespace

int ValidatedConfig::npu_slots_per_channel() const {
  return cfg_.y / cfg_[UserClass::npu].l;
}

int ValidatedConfig::wpu_cap() const {
  const auto& w = cfg_[UserClass::wpu];
  return std::min(w.u_max, m() / w.l);
}

int ValidatedConfig::npu_cap(int u_w) const {
  const auto& n = cfg_[UserClass::npu];
  const int free = m() - u_w * cfg_[UserClass::wpu].l;
  return std::max(0, std::min(n.u_max, free / n.l));
}

int ValidatedConfig::usable_subchannels(int m_a) const {
  return fixed_channel(opt_) ? std::min(cfg_.y, m_a) : m_a;
}

int ValidatedConfig::cbr_cap(int m_a) const {
  const auto& c = cfg_[UserClass::cbr];
  return std::min(c.u_max, usable_subchannels(m_a) / c.l);
}

int ValidatedConfig::occupied_by_pu(const PuState& pu) const {
  return std::min(m(), pu.u_w * cfg_[UserClass::wpu].l + pu.u_n * cfg_[UserClass::npu].l);
}

std::optional<std::size_t> ValidatedConfig::grid_index(int m_a) const {
  auto it = std::lower_bound(grid_.begin(), grid_.end(), m_a);
  if (it == grid_.end() || *it != m_a) return std::nullopt;
  return static_cast<std::size_t>(it - grid_.begin());
}

std::optional<std::size_t> ValidatedConfig::pu_index(const PuState& s) const {
  if (s.u_w < 0 || s.u_w > wpu_cap() || s.u_n < 0 || s.u_n > npu_cap(s.u_w)) return std::nullopt;
  return pu_offsets_[static_cast<std::size_t>(s.u_w)] + static_cast<std::size_t>(s.u_n);
}

std::optional<std::size_t> ValidatedConfig::su_index(const SuState& s) const {
  const auto& c = cfg_[UserClass::cbr];
  const auto& v = cfg_[UserClass::vbr];
  if (s.u_c < 0 || s.u_c > c.u_max || s.u_v < 0 || s.u_v > v.u_max) return std::nullopt;
  auto g = grid_index(s.m_a);
  if (!g) return std::nullopt;
  const std::size_t key =
      (static_cast<std::size_t>(s.u_c) * static_cast<std::size_t>(v.u_max + 1) +
       static_cast<std::size_t>(s.u_v)) * grid_.size() + *g;
  const long idx = su_lookup_[key];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

std::optional<std::size_t> ValidatedConfig::stage_index(const StagePuState& s) const {
  auto it = std::lower_bound(stage_states_.begin(), stage_states_.end(), s);
  if (it == stage_states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - stage_states_.begin());
}

std::vector<PuState> enumerate_pu_states(const ValidatedConfig& vc) {
  std::vector<PuState> out;
  for (int u_w = 0; u_w <= vc.wpu_cap(); ++u_w)
    for (int u_n = 0; u_n <= vc.npu_cap(u_w); ++u_n) out.push_back({u_w, u_n});
  return out;
}

std::vector<SuState> enumerate_su_states(const ValidatedConfig& vc) {
  std::vector<SuState> out;
  const int u_c_max = vc.traffic(UserClass::cbr).u_max;
  const int u_v_max = vc.traffic(UserClass::vbr).u_max;
  for (int u_c = 0; u_c <= u_c_max; ++u_c)
    for (int u_v = 0; u_v <= u_v_max; ++u_v)
      for (int m_a : vc.availability_grid())
        if (u_c <= vc.cbr_cap(m_a)) out.push_back({u_c, u_v, m_a});
  return out;
}

std::vector<StagePuState> enumerate_stage_states(const ValidatedConfig& vc) {
  std::vector<StagePuState> out;
  const int l_w = vc.traffic(UserClass::wpu).l;
  for (auto s : all_stages) {
    for (const auto& pu : vc.pu_states()) {
      // With every subchannel held by WPUs no idle channel can exist.
      if (s != SensingStage::fine_none && pu.u_w * l_w >= vc.m()) continue;
      out.push_back({s, pu.u_w, pu.u_n});
    }
  }
  return out;
}

std::size_t state_count(const ValidatedConfig& vc, StateSpace space) {
  switch (space) {
    case StateSpace::pu: return vc.pu_states().size();
    case StateSpace::su: return vc.su_states().size();
    case StateSpace::sensing_pu: return vc.stage_states().size();
  }
  return 0;
}

ValidatedConfig validate_config(const SystemConfig& cfg, DesignOption opt) {
  require(cfg.x >= 1, "x (channel count) must be >= 1");
  require(cfg.y >= 1, "y (subchannels per channel) must be >= 1");
  require(std::isfinite(cfg.t_f) && cfg.t_f > 0.0, "t_f must be > 0");
  require(std::isfinite(cfg.c_bps) && cfg.c_bps >= 0.0, "c_bps must be >= 0");
  check_sensing(cfg.coarse, "coarse");
  check_sensing(cfg.fine, "fine");
  require(cfg.coarse.tau + cfg.fine.tau <= cfg.t_f * (1.0 + 1e-12),
          "coarse.tau + fine.tau must not exceed t_f");
  for (auto c : all_user_classes) check_traffic(cfg[c], c);

  const int m = cfg.total_subchannels();
  const auto& w = cfg[UserClass::wpu];
  const auto& n = cfg[UserClass::npu];
  require(w.u_max == 0 || w.l <= m, "wpu.l must not exceed M");
  require(n.u_max == 0 || n.l <= cfg.y, "npu.l must not exceed y");

  ValidatedConfig vc;
  vc.cfg_ = cfg;
  vc.opt_ = opt;

  if (channel_blocking(opt)) {
    require(w.u_max == 0 || w.l == cfg.y,
            "channel blocking requires wpu.l == y (a WPU occupies one channel)");
    require(n.u_max == 0 || cfg.y % n.l == 0,
            "channel blocking requires npu.l to divide y");
    if (cfg.coarse.delta != 1.0 || cfg.fine.delta != 1.0) {
      vc.warnings_.push_back(
          "perfect-detection approximation: coarse.delta and fine.delta forced to 1 for " +
          std::string(to_string(opt)));
      vc.cfg_.coarse.delta = 1.0;
      vc.cfg_.fine.delta = 1.0;
    }
  }

  if (channel_blocking(opt)) {
    const int top = fixed_channel(opt) ? 1 : cfg.x;
    for (int k = 0; k <= top; ++k) vc.grid_.push_back(k * cfg.y);
  } else {
    for (int k = 0; k <= m; ++k) vc.grid_.push_back(k);
  }

  vc.pu_states_ = enumerate_pu_states(vc);
  vc.pu_offsets_.assign(static_cast<std::size_t>(vc.wpu_cap()) + 1, 0);
  for (std::size_t i = vc.pu_states_.size(); i-- > 0;)
    vc.pu_offsets_[static_cast<std::size_t>(vc.pu_states_[i].u_w)] = i;

  vc.su_states_ = enumerate_su_states(vc);
  const auto& c = cfg[UserClass::cbr];
  const auto& v = cfg[UserClass::vbr];
  vc.su_lookup_.assign(static_cast<std::size_t>(c.u_max + 1) *
                           static_cast<std::size_t>(v.u_max + 1) * vc.grid_.size(),
                       -1);
  for (std::size_t i = 0; i < vc.su_states_.size(); ++i) {
    const auto& s = vc.su_states_[i];
    const std::size_t key =
        (static_cast<std::size_t>(s.u_c) * static_cast<std::size_t>(v.u_max + 1) +
         static_cast<std::size_t>(s.u_v)) * vc.grid_.size() + *vc.grid_index(s.m_a);
    vc.su_lookup_[key] = static_cast<long>(i);
  }

  vc.stage_states_ = enumerate_stage_states(vc);
  return vc;
}

}  // namespace osofdma
