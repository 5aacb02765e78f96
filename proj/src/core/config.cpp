#include "mattekit/core/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mattekit/core/errors.hpp"

namespace mattekit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config::Config() = default;

const std::map<std::string, std::string>& Config::defaults() {
  static const std::map<std::string, std::string> kDefaults = {
      {"harmony.epsilon", "1e-5"},
      {"harmony.literal_eq10", "false"},
      {"fusion.quant_lo", "0"},
      {"fusion.quant_hi", "1"},
      {"fusion.allow_resize", "true"},
      {"metrics.region", "whole"},
      {"metrics.sad_scale", "0.001"},
      {"metrics.mse_scale", "1000"},
      {"metrics.grad_scale", "0.1"},
      {"metrics.conn_scale", "0.001"},
      {"metrics.grad_sigma", "1.4"},
      {"metrics.conn_step", "0.1"},
      {"metrics.conn_threshold", "0.15"},
      {"trimap.radius", "15"},
      {"losses.pyramid_levels", "5"},
  };
  return kDefaults;
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

void Config::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(line_no) + ": empty key");
    }
    file_[key] = value;
  }
}

void Config::set_override(const std::string& key, const std::string& value) {
  overrides_[key] = value;
}

bool Config::has(const std::string& key) const {
  return overrides_.count(key) || file_.count(key) || defaults().count(key);
}

std::string Config::get_string(const std::string& key) const {
  if (auto it = overrides_.find(key); it != overrides_.end()) return it->second;
  if (auto it = file_.find(key); it != file_.end()) return it->second;
  if (auto it = defaults().find(key); it != defaults().end()) return it->second;
  throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
}

double Config::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    size_t consumed = 0;
    const double v = std::stod(raw, &consumed);
    if (consumed != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "config " + key + ": '" + raw + "' is not a number");
  }
}

int Config::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    size_t consumed = 0;
    const int v = std::stoi(raw, &consumed);
    if (consumed != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "config " + key + ": '" + raw + "' is not an integer");
  }
}

bool Config::get_bool(const std::string& key) const {
  std::string raw = get_string(key);
  std::transform(raw.begin(), raw.end(), raw.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw Error(ErrorCode::ParseError, "config " + key + ": '" + raw + "' is not a boolean");
}

std::map<std::string, std::string> Config::effective() const {
  std::map<std::string, std::string> merged = defaults();
  for (const auto& [k, v] : file_) merged[k] = v;
  for (const auto& [k, v] : overrides_) merged[k] = v;
  return merged;
}

}  // namespace mattekit
