#include "osofdma/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace osofdma {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
T get_required(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("missing key '" + std::string(key) + "' in " + std::string(where));
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer())
        throw ConfigError("key '" + std::string(key) + "' in " + std::string(where) +
                          " must be an integer");
    } else {
      if (!it->is_number())
        throw ConfigError("key '" + std::string(key) + "' in " + std::string(where) +
                          " must be a number");
    }
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + std::string(where) +
                      ": " + e.what());
  }
}

SensingPoint parse_sensing(const json& obj, std::string_view where) {
  reject_unknown(obj, {"delta", "phi", "tau_s"}, where);
  return {get_required<double>(obj, "delta", where), get_required<double>(obj, "phi", where),
          get_required<double>(obj, "tau_s", where)};
}

TrafficParams parse_traffic(const json& obj, UserClass c) {
  const std::string where = "classes." + std::string(to_string(c));
  reject_unknown(obj, {"lambda_per_s", "mu_per_s", "l", "u_max"}, where);
  TrafficParams tp;
  tp.lambda = get_required<double>(obj, "lambda_per_s", where);
  tp.mu = get_required<double>(obj, "mu_per_s", where);
  tp.u_max = get_required<int>(obj, "u_max", where);
  if (c == UserClass::vbr && !obj.contains("l"))
    tp.l = 1;
  else
    tp.l = get_required<int>(obj, "l", where);
  return tp;
}

}  // namespace

SystemConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, {"x", "y", "t_f_s", "coarse", "fine", "c_bps", "classes"}, "config");

  SystemConfig cfg;
  cfg.x = get_required<int>(doc, "x", "config");
  cfg.y = get_required<int>(doc, "y", "config");
  cfg.t_f = get_required<double>(doc, "t_f_s", "config");
  cfg.c_bps = get_required<double>(doc, "c_bps", "config");
  if (!doc.contains("coarse") || !doc.contains("fine") || !doc.contains("classes"))
    throw ConfigError("config requires 'coarse', 'fine' and 'classes'");
  cfg.coarse = parse_sensing(doc["coarse"], "coarse");
  cfg.fine = parse_sensing(doc["fine"], "fine");

  const json& classes = doc["classes"];
  reject_unknown(classes, {"wpu", "npu", "cbr", "vbr"}, "classes");
  for (auto c : all_user_classes) {
    auto it = classes.find(std::string(to_string(c)));
    if (it == classes.end()) {
      cfg[c] = TrafficParams{};
    } else {
      cfg[c] = parse_traffic(*it, c);
    }
  }
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const SystemConfig& cfg, int indent) {
  auto sensing = [](const SensingPoint& sp) {
    return json{{"delta", sp.delta}, {"phi", sp.phi}, {"tau_s", sp.tau}};
  };
  json classes = json::object();
  for (auto c : all_user_classes) {
    const auto& tp = cfg[c];
    json entry{{"lambda_per_s", tp.lambda}, {"mu_per_s", tp.mu}, {"u_max", tp.u_max}};
    entry["l"] = tp.l;
    classes[std::string(to_string(c))] = entry;
  }
  json doc{{"x", cfg.x},         {"y", cfg.y},
           {"t_f_s", cfg.t_f},   {"coarse", sensing(cfg.coarse)},
           {"fine", sensing(cfg.fine)}, {"c_bps", cfg.c_bps},
           {"classes", classes}};
  return doc.dump(indent);
}

}  // namespace osofdma
