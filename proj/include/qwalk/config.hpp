#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace qwalk {

inline constexpr const char* kConfigEnv = "WALKGROUP_CONFIG";

struct Config {
  int max_order = 48;        // oracle cap on the group order (n_max = max_order / 2)
  int degree_cap = 4096;     // oracle guard on intermediate degrees
  std::string oracle_mode = "filtered";
  double rank_tol = 1e-9;    // smallest singular value threshold
  int samples = 16;          // curve points per rank test
  int rank_k_max = 3;
  std::uint64_t seed = 1;
  long q_max = 64;           // continued-fraction scan bound
  double scan_tol = 1e-9;
  double period_tol = 1e-10;
  double criterion_tol = 1e-8;  // relative residual for wp(m omega3) = e1
  int m_max = 3;

  int n_max() const { return max_order / 2; }
  bool operator==(const Config&) const = default;
};

inline nlohmann::ordered_json config_to_json(const Config& c) {
  nlohmann::ordered_json j;
  j["max_order"] = c.max_order;
  j["degree_cap"] = c.degree_cap;
  j["oracle_mode"] = c.oracle_mode;
  j["rank_tol"] = fmt_double(c.rank_tol);
  j["samples"] = c.samples;
  j["rank_k_max"] = c.rank_k_max;
  j["seed"] = std::to_string(c.seed);
  j["q_max"] = c.q_max;
  j["scan_tol"] = fmt_double(c.scan_tol);
  j["period_tol"] = fmt_double(c.period_tol);
  j["criterion_tol"] = fmt_double(c.criterion_tol);
  j["m_max"] = c.m_max;
  return j;
}

namespace detail {
inline double json_double(const nlohmann::ordered_json& v) {
  return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>();
}
inline std::uint64_t json_u64(const nlohmann::ordered_json& v) {
  if (!v.is_string()) return v.get<std::uint64_t>();
  const std::string s = v.get<std::string>();
  std::uint64_t r = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), r);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("malformed seed \"" + s + "\"");
  return r;
}
}  // namespace detail

// Keys absent from the document keep their current values; unknown keys are rejected.
inline void apply_config_json(Config& c, const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("config document must be an object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const auto& v = it.value();
      if (k == "max_order") c.max_order = v.get<int>();
      else if (k == "degree_cap") c.degree_cap = v.get<int>();
      else if (k == "oracle_mode") c.oracle_mode = v.get<std::string>();
      else if (k == "rank_tol") c.rank_tol = detail::json_double(v);
      else if (k == "samples") c.samples = v.get<int>();
      else if (k == "rank_k_max") c.rank_k_max = v.get<int>();
      else if (k == "seed") c.seed = detail::json_u64(v);
      else if (k == "q_max") c.q_max = v.get<long>();
      else if (k == "scan_tol") c.scan_tol = detail::json_double(v);
      else if (k == "period_tol") c.period_tol = detail::json_double(v);
      else if (k == "criterion_tol") c.criterion_tol = detail::json_double(v);
      else if (k == "m_max") c.m_max = v.get<int>();
      else throw ParseError("unknown config key \"" + k + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config value: ") + e.what());
  }
  if (c.oracle_mode != "filtered" && c.oracle_mode != "exact")
    throw ParseError("oracle_mode must be \"filtered\" or \"exact\"");
  if (c.max_order < 2 || c.samples < 4 || c.q_max < 1 || c.m_max < 1 || c.rank_k_max < 0)
    throw ParseError("config value out of range");
}

inline Config config_from_json(const nlohmann::ordered_json& j) {
  Config c;
  apply_config_json(c, j);
  return c;
}

inline Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config file is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

// Defaults, overlaid by the file named in WALKGROUP_CONFIG when set.
inline Config default_config() {
  const char* p = std::getenv(kConfigEnv);
  return (p && *p) ? load_config_file(p) : Config{};
}

}  // namespace qwalk
