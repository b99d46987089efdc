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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "optlattice/io/cli.hpp"

namespace {

using namespace optlattice;
using namespace optlattice::io;
namespace fs = std::filesystem;

std::vector<std::string> violations_of(const std::string &command,
                                       const std::string &text) {
  try {
    parse_config(command, text);
  } catch (const ConfigError &e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string> &v, const std::string &needle) {
  for (const auto &s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("optlattice_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string &name) const { return path_ / name; }

 private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "optlattice");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_config(const TempDir &dir, const std::string &name,
                         const std::string &text) {
  const auto path = dir / name;
  write_atomically(path, text);
  return path.string();
}

// ---------------------------------------------------------------------------
// Configuration

TEST(Config, MinimalButterfly) {
  const auto cfg = parse_config("butterfly", R"({"q_max": 10})");
  EXPECT_EQ(cfg.integer("q_max"), 10);
  EXPECT_EQ(cfg.integer("resolution"), 16);
}

TEST(Config, UnknownKeySuggestsNearest) {
  const auto v = violations_of("butterfly", R"({"q_mx": 10})");
  EXPECT_TRUE(mentions(v, "'q_mx'"));
  EXPECT_TRUE(mentions(v, "did you mean 'q_max'"));
  EXPECT_TRUE(mentions(v, "missing required key 'q_max'"));
}

TEST(Config, MissingRequiredKeyIsListed) {
  const auto v = violations_of("ed", R"({"M": 4, "U_over_J": [1]})");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(mentions(v, "'N'"));
}

TEST(Config, EveryViolationReported) {
  const auto v = violations_of(
      "ed", R"({"M": 4.5, "N": "four", "U_over_J": [], "boundary": "twisted", "extra": 1})");
  EXPECT_EQ(v.size(), 5u);
  EXPECT_TRUE(mentions(v, "'M' must be"));
  EXPECT_TRUE(mentions(v, "'boundary' must be one of"));
  EXPECT_TRUE(mentions(v, "'extra'"));
}

TEST(Config, MalformedJson) {
  EXPECT_TRUE(mentions(violations_of("butterfly", "{q_max: 10"), "malformed JSON"));
  EXPECT_TRUE(mentions(violations_of("butterfly", "[1, 2]"), "JSON object"));
}

TEST(Config, CommandKeyMustMatch) {
  EXPECT_TRUE(mentions(violations_of("butterfly", R"({"command": "ed", "q_max": 3})"),
                       "'command'"));
  EXPECT_TRUE(violations_of("butterfly", R"({"command": "butterfly", "q_max": 3})").empty());
}

TEST(Config, UnknownSubcommand) {
  EXPECT_TRUE(mentions(violations_of("spectra", "{}"), "unknown subcommand"));
}

TEST(Config, SeedOverride) {
  const auto a = parse_config("phase-diagram", R"({"seed": 5})");
  EXPECT_EQ(a.seed, 5u);
  const auto b = parse_config("phase-diagram", R"({"seed": 5})", 9);
  EXPECT_EQ(b.seed, 9u);
  EXPECT_TRUE(mentions(violations_of("phase-diagram", R"({"seed": -1})"), "'seed'"));
}

TEST(Config, DigestTracksContent) {
  const auto a = parse_config("butterfly", R"({"q_max": 10})");
  const auto b = parse_config("butterfly", R"({"resolution": 16, "q_max": 10})");
  const auto c = parse_config("butterfly", R"({"q_max": 11})");
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_NE(config_digest(a), config_digest(c));
  EXPECT_EQ(config_digest(a).rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(config_digest(a).size(), 8u + 16u);
}

TEST(Config, FnvReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

// ---------------------------------------------------------------------------
// Tables

TEST(Table, DoublesRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 10000; ++i) {
    double v;
    const std::uint64_t b = bits(rng);
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_TRUE(std::isnan(parse_double(format_double(std::nan("")))));
  EXPECT_THROW(parse_double("1.5x"), Error);
}

TEST(Table, CsvRoundTrip) {
  ResultTable t;
  t.metadata = {{"tool", "x"}, {"note", "a=b"}};
  t.columns = {"a", "b", "c"};
  t.add_row({1.25, 7LL, std::string("SF")});
  t.add_row({-3e-300, -1LL, std::string("MI(2)")});
  EXPECT_THROW(t.add_row({1.0}), Error);
  const auto doc = parse_csv(to_csv(t));
  EXPECT_EQ(doc.meta("note"), "a=b");
  EXPECT_EQ(doc.columns, t.columns);
  EXPECT_EQ(doc.number(1, "a"), -3e-300);
  EXPECT_EQ(doc.rows[0][2], "SF");
  EXPECT_THROW(parse_csv("a,b\n1\n"), Error);
}

TEST(Table, AtomicWriteLeavesNoTemporary) {
  TempDir dir;
  const auto path = dir / "out.csv";
  write_atomically(path, "hello\n");
  EXPECT_EQ(read_file(path), "hello\n");
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  EXPECT_THROW(write_atomically(dir / "missing" / "x.csv", "x"), Error);
}

// ---------------------------------------------------------------------------
// Commands

struct CommandCase {
  std::string command;
  std::string config;
  std::vector<std::string> columns;
};

const std::vector<CommandCase> &csv_cases() {
  static const std::vector<CommandCase> cases = {
      {"lattice", R"({"rabi_peak": 10, "detuning": -50, "linewidth": 1, "points": 5})",
       {"x", "V0", "V_harmonic"}},
      {"ed", R"({"M": 4, "N": 4, "U_over_J": [0, 20]})",
       {"U_over_J", "E0", "gap", "S0_over_N", "dn2_site0", "degenerate_flag"}},
      {"phase-diagram", R"({"mu_points": 4, "zJ_points": 3})",
       {"mu_over_U", "zJ_over_U", "abs_psi", "label"}},
      {"butterfly", R"({"q_max": 3, "resolution": 4})",
       {"p", "q", "alpha", "kx_index", "ky_index", "energy_over_eps0"}},
      {"ising-sweep", R"({"N": 4, "T": 20, "samples": 5})",
       {"t", "B_t", "energy", "subspace_fidelity", "parity_leak"}},
      {"trotter-bench", R"({"N": 4})", {"dt", "steps", "error"}},
  };
  return cases;
}

TEST(Commands, CsvOutputsParseWithDocumentedColumns) {
  for (const auto &c : csv_cases()) {
    const auto out = run(parse_config(c.command, c.config));
    EXPECT_FALSE(out.is_json);
    const auto doc = parse_csv(out.text);
    EXPECT_EQ(doc.columns, c.columns) << c.command;
    EXPECT_FALSE(doc.rows.empty()) << c.command;
    EXPECT_EQ(doc.meta("command"), c.command);
    EXPECT_EQ(doc.meta("tool"), "optlattice 0.1.0");
    EXPECT_EQ(doc.meta("config_digest"), config_digest(parse_config(c.command, c.config)));
  }
}

TEST(Commands, ButterflyRowCount) {
  const auto doc = parse_csv(run(parse_config("butterfly", R"({"q_max": 3, "resolution": 4})")).text);
  // Fractions 0/1, 1/1, 1/2, 1/3, 2/3 carry 1, 1, 2, 3, 3 bands.
  EXPECT_EQ(doc.rows.size(), 16u * 10u);
}

TEST(Commands, GateOutputsAreJson) {
  const auto coll = run(parse_config("gate-collisional", "{}"));
  ASSERT_TRUE(coll.is_json);
  const auto c = json::parse(coll.text);
  EXPECT_NEAR(c["result"]["phase_ab"].get<double>(), std::numbers::pi, 1e-6);
  EXPECT_EQ(c["command"], "gate-collisional");

  const auto ryd = run(parse_config("gate-rydberg", R"({"scheme": "blockade"})"));
  const auto r = json::parse(ryd.text);
  EXPECT_EQ(r["result"]["truth_table"]["phases"].size(), 4u);
  EXPECT_TRUE(r["result"].contains("blockade_shift"));
}

TEST(Commands, ByteIdenticalReruns) {
  for (const auto &c : csv_cases()) {
    const auto cfg = parse_config(c.command, c.config);
    EXPECT_EQ(run(cfg, 1).text, run(cfg, 1).text) << c.command;
    EXPECT_EQ(run(cfg, 1).text, run(cfg, 3).text) << c.command;
  }
}

TEST(Commands, TrotterBenchLimits) {
  try {
    run(parse_config("trotter-bench", R"({"N": 11})"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::capacity);
  }
  EXPECT_THROW(run(parse_config("trotter-bench", R"({"dt": [0.3]})")), Error);
}

TEST(Commands, EdMatchesGoldenFile) {
  const auto golden =
      parse_csv(read_file(fs::path(OPTLATTICE_GOLDEN_DIR) / "ed_m4_n4.csv"));
  const auto cfg = parse_config("ed", R"({"M": 4, "N": 4, "U_over_J": [0, 20]})");
  const auto doc = parse_csv(run(cfg).text);
  ASSERT_EQ(doc.columns, golden.columns);
  ASSERT_EQ(doc.rows.size(), golden.rows.size());
  for (std::size_t i = 0; i < doc.rows.size(); ++i)
    for (const auto &col : golden.columns)
      EXPECT_NEAR(doc.number(i, col), golden.number(i, col), 1e-9) << col << " row " << i;
  for (const auto *key : {"tool", "command", "config_digest", "seed", "config"})
    EXPECT_NO_THROW(doc.meta(key)) << key;
}

// ---------------------------------------------------------------------------
// Command line

TEST(Cli, WritesOutputFile) {
  TempDir dir;
  const auto cfg = write_config(dir, "b.json", R"({"q_max": 2, "resolution": 4})");
  const auto out = (dir / "b.csv").string();
  const auto r = cli({"butterfly", "--config", cfg, "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(parse_csv(read_file(out)).columns.size(), 6u);
}

TEST(Cli, ConfigErrorExitCode) {
  TempDir dir;
  const auto cfg = write_config(dir, "b.json", R"({"q_mx": 10})");
  const auto r = cli({"butterfly", "--config", cfg});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("q_max"), std::string::npos);
}

TEST(Cli, CapacityExitCodeLeavesNoFile) {
  TempDir dir;
  const auto cfg = write_config(dir, "ed.json", R"({"M": 20, "N": 20, "U_over_J": [1]})");
  const auto out = (dir / "ed.csv").string();
  const auto r = cli({"ed", "--config", cfg, "--out", out});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("capacity"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST(Cli, InvalidArgumentExitCode) {
  TempDir dir;
  const auto cfg = write_config(dir, "l.json", R"({"rabi_peak": 1, "detuning": 0})");
  EXPECT_EQ(cli({"lattice", "--config", cfg}).code, 4);
}

TEST(Cli, BadArgumentsExitCode) {
  EXPECT_EQ(cli({"nonsense"}).code, 2);
  EXPECT_EQ(cli({"butterfly", "--config", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(cli({"gate", "rydberg", "--scheme", "slow"}).code, 2);
}

TEST(Cli, SchemeFlag) {
  const auto r = cli({"gate", "rydberg", "--scheme", "fast"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["config"]["scheme"], "fast");
  TempDir dir;
  const auto cfg = write_config(dir, "r.json", R"({"scheme": "blockade"})");
  EXPECT_EQ(cli({"gate", "rydberg", "--scheme", "fast", "--config", cfg}).code, 2);
}

TEST(Cli, SeedFlagReachesMetadata) {
  const auto r = cli({"phase-diagram", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out).meta("seed"), "42");
}

TEST(Cli, ThreadsDoNotChangeBytes) {
  TempDir dir;
  const auto cfg = write_config(dir, "p.json", R"({"mu_points": 7, "zJ_points": 7})");
  EXPECT_EQ(cli({"phase-diagram", "--config", cfg, "--threads", "1"}).out,
            cli({"phase-diagram", "--config", cfg, "--threads", "0"}).out);
}

int exit_status(const std::string &command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodesFromTheInstalledTool) {
  TempDir dir;
  const std::string tool = OPTLATTICE_CLI_PATH;
  const auto ok = write_config(dir, "b.json", R"({"q_max": 2, "resolution": 4})");
  const auto cap = write_config(dir, "ed.json", R"({"M": 20, "N": 20, "U_over_J": [1]})");
  const auto out = (dir / "x.csv").string();
  EXPECT_EQ(exit_status(tool + " butterfly --config " + ok + " --out " + out), 0);
  EXPECT_TRUE(fs::exists(out));
  const auto out2 = (dir / "y.csv").string();
  EXPECT_EQ(exit_status(tool + " ed --config " + cap + " --out " + out2 + " 2>/dev/null"), 3);
  EXPECT_FALSE(fs::exists(out2));
  EXPECT_EQ(exit_status(tool + " --version >/dev/null"), 0);
}

}  // namespace
