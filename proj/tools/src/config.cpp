#include "twsec/cli/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace twsec::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected a number for key '" + key + "', got '" + v + "'");
  return x;
}

long parse_long(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected an integer for key '" + key + "', got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected an unsigned integer for key '" + key + "', got '" + v + "'");
  return x;
}

model::Point2 parse_point(const std::string& v, int line, const std::string& key) {
  std::string s = v;
  // tolerate optional parentheses: "(15, 0)" or "15,0"
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    fail(line, "expected a point 'x,y' for key '" + key + "', got '" + v + "'");
  return {parse_double(trim(s.substr(0, comma)), line, key),
          parse_double(trim(s.substr(comma + 1)), line, key)};
}

schemes::Scheme parse_scheme(const std::string& v, int line) {
  if (v == "proposed") return schemes::Scheme::proposed;
  if (v == "oneway_jam") return schemes::Scheme::oneway_jam;
  if (v == "fd_relay") return schemes::Scheme::fd_relay;
  if (v == "hd_relay") return schemes::Scheme::hd_relay;
  fail(line, "unknown scheme '" + v + "' (proposed|oneway_jam|fd_relay|hd_relay)");
}

}  // namespace

montecarlo::CampaignConfig parse_config(const std::string& text) {
  montecarlo::CampaignConfig cfg;  // defaults are the evaluation setup
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) fail(line, "empty key or value");

    auto& p = cfg.params;
    if (key == "power_dbm") p.power_dbm = parse_double(val, line, key);
    else if (key == "elements") p.elements = static_cast<int>(parse_long(val, line, key));
    else if (key == "pairs") p.pairs = static_cast<int>(parse_long(val, line, key));
    else if (key == "quad_order") p.quad_order = static_cast<int>(parse_long(val, line, key));
    else if (key == "noise_dbm") p.noise_dbm = parse_double(val, line, key);
    else if (key == "rli_dbm") p.rli_dbm = parse_double(val, line, key);
    else if (key == "pathloss_exp") p.pathloss_exp = parse_double(val, line, key);
    else if (key == "gain_user_dbi") p.gain_user_dbi = parse_double(val, line, key);
    else if (key == "gain_eve_dbi") p.gain_eve_dbi = parse_double(val, line, key);
    else if (key == "element_area_m2") p.element_area_m2 = parse_double(val, line, key);
    else if (key == "rli_mode") {
      if (val == "deterministic") p.rli_mode = model::RliMode::deterministic;
      else if (val == "sampled") p.rli_mode = model::RliMode::sampled;
      else fail(line, "rli_mode must be deterministic|sampled");
    } else if (key == "log_base") {
      if (val == "nats") p.log_base = model::LogBase::nats;
      else if (val == "bits") p.log_base = model::LogBase::bits;
      else fail(line, "log_base must be nats|bits");
    } else if (key == "irs_pos") cfg.irs_pos = parse_point(val, line, key);
    else if (key == "eve_pos") cfg.eve_pos = parse_point(val, line, key);
    else if (key == "disc_a_center") cfg.disc_a_center = parse_point(val, line, key);
    else if (key == "disc_b_center") cfg.disc_b_center = parse_point(val, line, key);
    else if (key == "disc_radius_m") cfg.disc_radius_m = parse_double(val, line, key);
    else if (key == "geometry_mode") {
      if (val == "fixed") cfg.geometry_mode = montecarlo::GeometryMode::fixed;
      else if (val == "random_disc") cfg.geometry_mode = montecarlo::GeometryMode::random_disc;
      else fail(line, "geometry_mode must be fixed|random_disc");
    } else if (key == "trials") cfg.trials = parse_long(val, line, key);
    else if (key == "seed") cfg.seed = parse_u64(val, line, key);
    else if (key == "workers") cfg.workers = static_cast<int>(parse_long(val, line, key));
    else if (key == "estimator") {
      if (val == "mean_positive_rate") cfg.estimator = montecarlo::Estimator::mean_positive_rate;
      else if (val == "jensen_bound") cfg.estimator = montecarlo::Estimator::jensen_bound;
      else fail(line, "estimator must be mean_positive_rate|jensen_bound");
    } else if (key == "schemes") {
      cfg.schemes.clear();
      std::istringstream list(val);
      std::string item;
      while (std::getline(list, item, ',')) cfg.schemes.push_back(parse_scheme(trim(item), line));
      if (cfg.schemes.empty()) fail(line, "schemes list is empty");
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config validation: ") + e.what());
  }
  return cfg;
}

montecarlo::CampaignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace twsec::cli
