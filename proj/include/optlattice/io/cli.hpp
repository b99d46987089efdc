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

#ifndef OPTLATTICE_IO_CLI_HPP
#define OPTLATTICE_IO_CLI_HPP

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "optlattice/io/commands.hpp"

namespace optlattice::io {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitCapacity = 3,
  kExitInvalidArgument = 4,
  kExitConvergence = 5,
  kExitIo = 6,
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return kExitConfig;
    case ErrorKind::capacity: return kExitCapacity;
    case ErrorKind::invalid_argument: return kExitInvalidArgument;
    case ErrorKind::convergence: return kExitConvergence;
    case ErrorKind::io: return kExitIo;
  }
  return kExitOther;
}

// Folds a --scheme flag into the config text.
inline std::string with_scheme(const std::string &text, const std::string &scheme) {
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  json doc = blank ? json::object() : json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return text;  // reported later
  if (doc.contains("scheme") && doc["scheme"] != scheme) {
    throw ConfigError({"--scheme " + scheme + " contradicts config scheme " +
                       doc["scheme"].dump()});
  }
  doc["scheme"] = scheme;
  return doc.dump();
}

// Parses argv, runs one subcommand and writes its output. Returns the process
// exit code; diagnostics go to `err`, and to `out` when no --out is given.
inline int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout,
                   std::ostream &err = std::cerr) {
  CLI::App app{"Optical-lattice quantum simulation toolkit", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::string scheme;

  auto common = [&](CLI::App *sc) {
    sc->add_option("--config", config_path, "JSON parameter file")
        ->check(CLI::ExistingFile);
    sc->add_option("--out", out_path, "output path (default: stdout)");
    sc->add_option("--threads", threads, "worker threads, 0 = all cores");
    sc->add_option("--seed", seed, "random seed");
  };

  std::vector<std::pair<CLI::App *, std::string>> leaves;
  for (const auto &s : command_schemas()) {
    if (s.name.rfind("gate-", 0) == 0) continue;
    auto *sc = app.add_subcommand(s.name, s.summary);
    common(sc);
    leaves.emplace_back(sc, s.name);
  }
  auto *gate = app.add_subcommand("gate", "two-qubit gate simulations");
  gate->require_subcommand(1);
  auto *coll = gate->add_subcommand("collisional", find_schema("gate-collisional")->summary);
  common(coll);
  leaves.emplace_back(coll, "gate-collisional");
  auto *ryd = gate->add_subcommand("rydberg", find_schema("gate-rydberg")->summary);
  common(ryd);
  ryd->add_option("--scheme", scheme, "fast | blockade | adiabatic")
      ->check(CLI::IsMember({"fast", "blockade", "adiabatic"}));
  leaves.emplace_back(ryd, "gate-rydberg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  for (const auto &[sc, name] : leaves) {
    if (sc->parsed()) command = name;
  }

  try {
    std::string text = config_path.empty() ? std::string() : read_file(config_path);
    if (!scheme.empty()) text = with_scheme(text, scheme);
    const RunConfig cfg = parse_config(command, text, seed);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const RunOutput result = run(cfg, threads);
    if (out_path.empty()) {
      out << result.text;
    } else {
      write_atomically(out_path, result.text);
    }
    return kExitOk;
  } catch (const Error &e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace optlattice::io

#endif  // OPTLATTICE_IO_CLI_HPP
