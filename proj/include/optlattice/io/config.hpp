// Copyright 2026 The optlattice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTLATTICE_IO_CONFIG_HPP
#define OPTLATTICE_IO_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "optlattice/error.hpp"

namespace optlattice::io {

using nlohmann::json;

inline constexpr const char *kToolName = "optlattice";
inline constexpr const char *kToolVersion = "0.1.0";

enum class ParamType { number, integer, boolean, string, number_list };

inline const char *to_string(ParamType t) {
  switch (t) {
    case ParamType::number: return "number";
    case ParamType::integer: return "integer";
    case ParamType::boolean: return "boolean";
    case ParamType::string: return "string";
    case ParamType::number_list: return "list of numbers";
  }
  return "?";
}

struct ParamSpec {
  std::string name;
  ParamType type;
  bool required = false;
  json fallback;  // used when absent and not required; null means "unset"
  std::vector<std::string> choices;
  std::string help;
};

struct CommandSchema {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;

  const ParamSpec *find(const std::string &key) const {
    for (const auto &p : params) {
      if (p.name == key) return &p;
    }
    return nullptr;
  }
};

inline const std::vector<CommandSchema> &command_schemas() {
  using T = ParamType;
  constexpr double pi = std::numbers::pi;
  static const std::vector<CommandSchema> schemas = {
      {"lattice",
       "single-atom lattice formulas and a potential profile",
       {{"rabi_peak", T::number, true, {}, {}, "peak Rabi frequency Omega_0"},
        {"detuning", T::number, true, {}, {}, "detuning Delta (< 0 is blue)"},
        {"wavenumber", T::number, false, 1.0, {}, "laser wavenumber k"},
        {"mass", T::number, false, 1.0, {}, "atom mass"},
        {"linewidth", T::number, false, 0.0, {}, "excited-state linewidth"},
        {"x_min", T::number, false, 0.0, {}, "profile start"},
        {"x_max", T::number, false, pi, {}, "profile end"},
        {"points", T::integer, false, 101, {}, "profile samples"}}},
      {"ed",
       "exact diagonalization scan of a Bose-Hubbard ring or chain",
       {{"M", T::integer, true, {}, {}, "number of sites"},
        {"N", T::integer, true, {}, {}, "number of bosons"},
        {"U_over_J", T::number_list, true, {}, {}, "interaction grid"},
        {"J", T::number, false, 1.0, {}, "hopping"},
        {"mu", T::number, false, 0.0, {}, "chemical potential"},
        {"boundary", T::string, false, "periodic", {"periodic", "open"}, ""},
        {"dimension_cap", T::integer, false, 2'000'000, {}, "basis size cap"}}},
      {"phase-diagram",
       "Gutzwiller mean-field phase diagram",
       {{"mu_min", T::number, false, 0.0, {}, ""},
        {"mu_max", T::number, false, 3.0, {}, ""},
        {"mu_points", T::integer, false, 200, {}, ""},
        {"zJ_max", T::number, false, 0.25, {}, ""},
        {"zJ_points", T::integer, false, 200, {}, ""},
        {"n_max", T::integer, false, -1, {}, "occupation cutoff, -1 = auto"}}},
      {"butterfly",
       "Hofstadter spectra at rational flux",
       {{"q_max", T::integer, true, {}, {}, "largest flux denominator"},
        {"resolution", T::integer, false, 16, {}, "k points per axis"}}},
      {"gate-collisional",
       "collisional phase gate along a transport trajectory",
       {{"d_far", T::number, false, 8.0, {}, "separated displacement"},
        {"d_hold", T::number, false, 0.0, {}, "displacement during the hold"},
        {"move_time", T::number, false, 20.0, {}, "approach duration"},
        {"hold_time", T::number, false, json(), {}, "omit to solve for target"},
        {"target_phase", T::number, false, pi, {}, ""},
        {"scattering_length", T::number, false, 0.02, {}, ""},
        {"mass", T::number, false, 1.0, {}, ""},
        {"trap_frequency", T::number, false, 1.0, {}, ""},
        {"width", T::number, false, json(), {}, "default: ground-state width"}}},
      {"gate-rydberg",
       "Rydberg dipole gate truth table",
       {{"scheme", T::string, true, {}, {"fast", "blockade", "adiabatic"}, ""},
        {"rabi", T::number, false, 1.0, {}, "Omega, or the adiabatic peak"},
        {"interaction", T::number, false, 100.0, {}, "dipole shift u"},
        {"gate_phase", T::number, false, pi, {}, "fast scheme phase"},
        {"detuning", T::number, false, 1.0, {}, "adiabatic base detuning"},
        {"chirp", T::number, false, 0.0, {}, "adiabatic detuning chirp"},
        {"duration", T::number, false, 60.0, {}, "adiabatic pulse length"},
        {"target_phase", T::number, false, json(), {},
         "adiabatic: solve the peak Rabi frequency for this phase"},
        {"tolerance", T::number, false, 1e-10, {}, "ODE tolerance"},
        {"linewidth", T::number, false, 0.0, {}, "Rydberg decay rate"}}},
      {"ising-sweep",
       "adiabatic transverse-field sweep into a GHZ pair",
       {{"N", T::integer, true, {}, {}, "number of spins"},
        {"W", T::number, false, -1.0, {}, "zz coupling"},
        {"B0", T::number, false, 5.0, {}, "initial field"},
        {"T", T::number, false, 200.0, {}, "ramp duration"},
        {"boundary", T::string, false, "open", {"open", "periodic"}, ""},
        {"samples", T::integer, false, 101, {}, ""},
        {"tolerance", T::number, false, 1e-12, {}, "ODE tolerance"}}},
      {"trotter-bench",
       "first-order Trotter error of the Ising split",
       {{"N", T::integer, false, 6, {}, "number of spins"},
        {"B", T::number, false, 1.0, {}, "field"},
        {"W", T::number, false, 1.0, {}, "zz coupling"},
        {"horizon", T::number, false, 1.0, {}, "total evolution time"},
        {"dt", T::number_list, false, json::array({0.1, 0.05, 0.02, 0.01}),
         {}, "time steps"},
        {"boundary", T::string, false, "open", {"open", "periodic"}, ""}}},
  };
  return schemas;
}

inline const CommandSchema *find_schema(const std::string &command) {
  for (const auto &s : command_schemas()) {
    if (s.name == command) return &s;
  }
  return nullptr;
}

inline std::size_t edit_distance(const std::string &a, const std::string &b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      diag = up;
    }
  }
  return row[b.size()];
}

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(ErrorKind::config, join(violations)),
        violations_(std::move(violations)) {}
  const std::vector<std::string> &violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string> &v) {
    std::string s = "invalid configuration:";
    for (const auto &x : v) s += "\n  - " + x;
    return s;
  }
  std::vector<std::string> violations_;
};

struct RunConfig {
  std::string command;
  json params = json::object();  // every schema key, defaults filled in
  std::uint64_t seed = 0;

  double number(const std::string &k) const { return params.at(k).get<double>(); }
  long long integer(const std::string &k) const {
    return params.at(k).get<long long>();
  }
  std::string text(const std::string &k) const {
    return params.at(k).get<std::string>();
  }
  std::vector<double> numbers(const std::string &k) const {
    return params.at(k).get<std::vector<double>>();
  }
  bool has(const std::string &k) const {
    return params.contains(k) && !params.at(k).is_null();
  }

  // Canonical form: sorted keys, defaults included.
  json canonical() const {
    return json{{"command", command}, {"params", params}, {"seed", seed}};
  }
};

inline bool matches(const json &v, ParamType t) {
  switch (t) {
    case ParamType::number: return v.is_number();
    case ParamType::integer: return v.is_number_integer();
    case ParamType::boolean: return v.is_boolean();
    case ParamType::string: return v.is_string();
    case ParamType::number_list:
      return v.is_array() && !v.empty() &&
             std::all_of(v.begin(), v.end(),
                         [](const json &x) { return x.is_number(); });
  }
  return false;
}

// Validates a flat JSON object of parameters for `command`. Reserved keys:
// "command" (must name the same subcommand) and "seed". Every problem found
// is reported, not just the first.
inline RunConfig parse_config(const std::string &command, const std::string &text,
                              std::optional<std::uint64_t> seed_override = {}) {
  const CommandSchema *schema = find_schema(command);
  if (schema == nullptr) {
    std::string names;
    for (const auto &s : command_schemas()) names += " " + s.name;
    throw ConfigError({"unknown subcommand '" + command + "'; expected one of:" +
                       names});
  }
  json doc;
  const bool blank =
      std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
  if (blank) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error &e) {
      throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
  }
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});

  std::vector<std::string> problems;
  RunConfig cfg;
  cfg.command = command;

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string &key = it.key();
    if (key == "command") {
      if (!it->is_string() || it->get<std::string>() != command) {
        problems.push_back("key 'command' is " + it->dump() +
                           " but the subcommand is '" + command + "'");
      }
      continue;
    }
    if (key == "seed") {
      if (!it->is_number_unsigned() && !(it->is_number_integer() && *it >= 0)) {
        problems.push_back("key 'seed' must be a nonnegative integer");
      } else {
        cfg.seed = it->get<std::uint64_t>();
      }
      continue;
    }
    if (schema->find(key) == nullptr) {
      std::string nearest = "seed";
      std::size_t best = edit_distance(key, "seed");
      for (const auto &p : schema->params) {
        const auto d = edit_distance(key, p.name);
        if (d < best) {
          best = d;
          nearest = p.name;
        }
      }
      problems.push_back("unknown key '" + key + "' (did you mean '" + nearest +
                         "'?)");
    }
  }

  for (const auto &p : schema->params) {
    if (!doc.contains(p.name)) {
      if (p.required) {
        problems.push_back("missing required key '" + p.name + "' (" +
                           to_string(p.type) + ")");
      } else {
        cfg.params[p.name] = p.fallback;
      }
      continue;
    }
    const json &v = doc.at(p.name);
    if (!matches(v, p.type)) {
      problems.push_back("key '" + p.name + "' must be a " + to_string(p.type) +
                         ", got " + v.dump());
      continue;
    }
    if (!p.choices.empty() &&
        std::find(p.choices.begin(), p.choices.end(), v.get<std::string>()) ==
            p.choices.end()) {
      std::string allowed;
      for (const auto &c : p.choices) allowed += (allowed.empty() ? "" : ", ") + c;
      problems.push_back("key '" + p.name + "' must be one of {" + allowed +
                         "}, got " + v.dump());
      continue;
    }
    cfg.params[p.name] = v;
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  if (seed_override) cfg.seed = *seed_override;
  return cfg;
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string &s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_digest(const RunConfig &cfg) {
  static const char *hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(cfg.canonical().dump());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
  return "fnv1a64:" + out;
}

}  // namespace optlattice::io

#endif  // OPTLATTICE_IO_CONFIG_HPP
