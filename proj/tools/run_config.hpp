#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsv/io.hpp"

namespace lsvcli {

using lsv::json;

/// Bad flags, bad config file, out-of-range parameter: exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Param {
  std::string key;  // config key; the flag is --key with '_' -> '-'
  json fallback;    // default, also fixes the type: bool, integer, number, string, array of numbers
  std::string help;
};

/// Parameters of one subcommand: registered as CLI11 options, resolved against a config file.
class ParamSet {
 public:
  ParamSet(CLI::App* app, std::vector<Param> params);

  /// defaults <- config file entries <- explicitly given flags.
  json resolve(const json& file_cfg) const;
  bool knows(const std::string& key) const;

 private:
  CLI::App* app_;
  std::vector<Param> params_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, bool> flags_;
  std::map<std::string, CLI::Option*> opts_;
};

/// Converts a flag string or checks a config value against the type of `like`.
json coerce(const std::string& key, const json& like, const json& value);
json parse_flag(const std::string& key, const json& like, const std::string& text);

json load_config_file(const std::string& path);

/// Rejects config keys that neither `a` nor `b` know.
void reject_unknown(const json& file_cfg, const ParamSet& a, const ParamSet& b);

}  // namespace lsvcli
