#ifndef BOHM_CLI_CONFIG_HPP
#define BOHM_CLI_CONFIG_HPP

// Scenario files: `key = value` lines, `#` or `;` comments. Top-level keys
// select the command and output options; the command's parameters live in a
// section named after it:
//
//   command = regime
//   [regime]
//   L0 = 2mm
//   wavelength = 351.1nm

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bohm/error.hpp"
#include "bohm/imaging.hpp"
#include "bohm/io/csv.hpp"
#include "bohm/vec.hpp"

namespace bohm::cli {

enum class Format { Csv, Json };

struct ScenarioConfig {
  std::string command;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  Format format = Format::Csv;
  bool emit_svg = false;
  std::map<std::string, std::string> params;

  [[nodiscard]] bool has(const std::string &key) const { return params.count(key) != 0; }
  [[nodiscard]] const std::string &str(const std::string &key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  }
  [[nodiscard]] double num(const std::string &key) const {
    try {
      return io::parse_double(str(key));
    } catch (const DomainError &) {
      throw ConfigError("key '" + key + "' is not a number: '" + str(key) + "'");
    }
  }
  [[nodiscard]] std::size_t count(const std::string &key) const {
    const double v = num(key);
    if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw ConfigError("key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
  }
  [[nodiscard]] std::vector<double> list(const std::string &key) const {
    std::vector<double> out;
    for (auto f : io::split_commas(str(key))) {
      try {
        out.push_back(io::parse_double(f));
      } catch (const DomainError &) {
        throw ConfigError("key '" + key + "' must be a comma-separated list of numbers");
      }
    }
    return out;
  }
  [[nodiscard]] Vec3 vec3(const std::string &key) const {
    const auto v = list(key);
    if (v.size() != 3) throw ConfigError("key '" + key + "' needs three components");
    return {v[0], v[1], v[2]};
  }
  [[nodiscard]] bool flag(const std::string &key) const { return parse_bool(key, str(key)); }

  static bool parse_bool(const std::string &key, const std::string &v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "' must be true or false");
  }
};

/// Parameter defaults per command; a key mapped to nullopt is required,
/// one mapped to an empty string is optional without a default.
using Schema = std::map<std::string, std::optional<std::string>>;

inline const std::map<std::string, Schema> &schemas() {
  static const std::map<std::string, Schema> s{
      {"regime", {{"L0", std::nullopt}, {"wavelength", std::nullopt}}},
      {"trajectories",
       {{"m1", "1"}, {"m2", "1"}, {"alpha", "1"}, {"sigma", "0"}, {"r1", "0.5,0,0"}, {"r2", "-0.5,0,0"},
        {"t0", "0"}, {"t_end", "10"}, {"dt", "0.001"}, {"stride", "10"}}},
      {"ensemble",
       {{"m1", "1"}, {"m2", "1"}, {"alpha", "1"}, {"sigma", "1"}, {"n", "100000"}, {"times", "0,1,10,100"}}},
      {"imaging",
       {{"f", "1"}, {"S", "2"}, {"S_prime", ""}, {"m1", "1"}, {"m2", "1"}, {"alpha", "0.01"}, {"sigma", "0.0001"},
        {"n", "10000"}, {"p0", "1"}, {"decay_fraction", "0.5"}, {"mask", "slit"}, {"mask_width", "0.5"},
        {"mask_radius", "0.5"}, {"mask_separation", "1"}, {"mask_center", "0.5,0"}, {"mask_offset", "0"},
        {"scan_bins", "80"}, {"scan_range", "-2,2"}, {"tracks", "10"}, {"max_attempts", "1000000000"}}},
      {"energyshell",
       {{"E_plus", "0.02"}, {"E_minus", "0.01998"}, {"mu", "0.5"}, {"x_max", "100"}, {"points", "4000"},
        {"convolution", "false"}, {"h_fwhm", "20"}, {"t", "0"}, {"grid_n", "4096"}, {"grid_half_width", "128"}}},
  };
  return s;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

} // namespace detail

inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::map<std::string, std::string> top;
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      if (sections.count(section)) throw ConfigError("duplicate section '" + section + "'");
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = detail::trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    auto &target = section.empty() ? top : sections[section];
    if (target.count(key)) throw ConfigError("duplicate key '" + key + "'");
    target[key] = value;
  }

  static const std::set<std::string> top_keys{"command", "out_dir", "seed", "format", "emit_svg"};
  for (const auto &[k, v] : top)
    if (!top_keys.count(k)) throw ConfigError("unknown key '" + k + "'");
  if (!top.count("command")) throw ConfigError("missing required key 'command'");
  cfg.command = top["command"];
  const auto schema_it = schemas().find(cfg.command);
  if (schema_it == schemas().end()) throw ConfigError("unknown command '" + cfg.command + "'");
  if (top.count("out_dir")) cfg.out_dir = top["out_dir"];
  if (top.count("seed")) {
    try {
      const double s = io::parse_double(top["seed"]);
      if (!(s >= 0.0) || s != static_cast<double>(static_cast<std::uint64_t>(s))) throw DomainError("");
      cfg.seed = static_cast<std::uint64_t>(s);
    } catch (const DomainError &) {
      throw ConfigError("key 'seed' must be a non-negative integer");
    }
  }
  if (top.count("format")) {
    if (top["format"] == "csv") cfg.format = Format::Csv;
    else if (top["format"] == "json") cfg.format = Format::Json;
    else throw ConfigError("key 'format' must be csv or json");
  }
  if (top.count("emit_svg")) cfg.emit_svg = ScenarioConfig::parse_bool("emit_svg", top["emit_svg"]);

  for (const auto &[name, body] : sections)
    if (name != cfg.command) throw ConfigError("unknown section '" + name + "'");

  const Schema &schema = schema_it->second;
  const auto &given = sections[cfg.command];
  for (const auto &[k, v] : given)
    if (!schema.count(k)) throw ConfigError("unknown key '" + k + "'");
  for (const auto &[k, def] : schema) {
    if (auto it = given.find(k); it != given.end()) cfg.params[k] = it->second;
    else if (!def) throw ConfigError("missing required key '" + k + "'");
    else if (!def->empty()) cfg.params[k] = *def;
  }
  if (cfg.command == "imaging" && !cfg.has("S_prime")) {
    try {
      cfg.params["S_prime"] = io::format_double(imaging::thin_lens_conjugate(cfg.num("S"), cfg.num("f")).distance);
    } catch (const NumericFailure &e) {
      throw ConfigError(std::string("cannot fill 'S_prime': ") + e.what());
    }
  }
  return cfg;
}

} // namespace bohm::cli

#endif // BOHM_CLI_CONFIG_HPP
