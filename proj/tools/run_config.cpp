#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lsvcli {

namespace {

std::string flag_name(const std::string& key) {
  std::string s = key;
  std::replace(s.begin(), s.end(), '_', '-');
  return "--" + s;
}

double strict_number(const std::string& key, const std::string& t) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw ConfigError(key + ": expected a number, got '" + t + "'");
  return v;
}

}  // namespace

json coerce(const std::string& key, const json& like, const json& value) {
  if (like.is_boolean()) {
    if (!value.is_boolean()) throw ConfigError(key + ": expected true/false");
    return value;
  }
  if (like.is_number_integer()) {
    if (value.is_number_integer()) return value;
    if (value.is_number_float() && std::floor(value.get<double>()) == value.get<double>())
      return static_cast<std::int64_t>(value.get<double>());
    throw ConfigError(key + ": expected an integer");
  }
  if (like.is_number()) {
    if (!value.is_number()) throw ConfigError(key + ": expected a number");
    return value.get<double>();
  }
  if (like.is_string()) {
    if (!value.is_string()) throw ConfigError(key + ": expected a string");
    return value;
  }
  if (like.is_array()) {
    if (!value.is_array()) throw ConfigError(key + ": expected an array of numbers");
    json out = json::array();
    for (const auto& v : value) {
      if (!v.is_number()) throw ConfigError(key + ": expected an array of numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  throw ConfigError(key + ": unsupported parameter type");
}

json parse_flag(const std::string& key, const json& like, const std::string& text) {
  if (like.is_number_integer()) {
    const double v = strict_number(key, text);
    if (std::floor(v) != v) throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return static_cast<std::int64_t>(v);
  }
  if (like.is_number()) return strict_number(key, text);
  if (like.is_string()) return text;
  if (like.is_array()) {
    json out = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(strict_number(key, item));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
  }
  throw ConfigError(key + ": unsupported flag type");
}

ParamSet::ParamSet(CLI::App* app, std::vector<Param> params) : app_(app), params_(std::move(params)) {
  for (const auto& p : params_) {
    if (p.fallback.is_boolean()) {
      flags_[p.key] = false;
      opts_[p.key] = app_->add_flag(flag_name(p.key), flags_[p.key], p.help);
    } else {
      raw_[p.key] = "";
      std::string help = p.help + " [" + (p.fallback.is_string() ? p.fallback.get<std::string>() : p.fallback.dump()) + "]";
      opts_[p.key] = app_->add_option(flag_name(p.key), raw_[p.key], help);
    }
  }
}

bool ParamSet::knows(const std::string& key) const {
  return std::any_of(params_.begin(), params_.end(), [&](const Param& p) { return p.key == key; });
}

json ParamSet::resolve(const json& file_cfg) const {
  json out = json::object();
  for (const auto& p : params_) {
    json v = p.fallback;
    if (file_cfg.contains(p.key)) v = coerce(p.key, p.fallback, file_cfg.at(p.key));
    if (opts_.at(p.key)->count() > 0)
      v = p.fallback.is_boolean() ? json(flags_.at(p.key)) : parse_flag(p.key, p.fallback, raw_.at(p.key));
    out[p.key] = v;
  }
  return out;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config file " + path + ": top level must be an object");
  return cfg;
}

void reject_unknown(const json& file_cfg, const ParamSet& a, const ParamSet& b) {
  for (auto it = file_cfg.begin(); it != file_cfg.end(); ++it)
    if (!a.knows(it.key()) && !b.knows(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
}

}  // namespace lsvcli
