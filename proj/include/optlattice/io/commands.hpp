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

#ifndef OPTLATTICE_IO_COMMANDS_HPP
#define OPTLATTICE_IO_COMMANDS_HPP

#include <climits>
#include <cmath>
#include <string>
#include <vector>

#include "optlattice/bose_hubbard.hpp"
#include "optlattice/gates.hpp"
#include "optlattice/hofstadter.hpp"
#include "optlattice/io/config.hpp"
#include "optlattice/io/table.hpp"
#include "optlattice/lattice_physics.hpp"
#include "optlattice/meanfield.hpp"
#include "optlattice/spin_chain.hpp"

namespace optlattice::io {

// Rendered output of one run: CSV text or pretty-printed JSON.
struct RunOutput {
  std::string text;
  bool is_json = false;
};

inline std::vector<std::pair<std::string, std::string>> provenance(
    const RunConfig &cfg) {
  return {{"tool", std::string(kToolName) + " " + kToolVersion},
          {"command", cfg.command},
          {"config_digest", config_digest(cfg)},
          {"seed", std::to_string(cfg.seed)},
          {"config", cfg.params.dump()}};
}

inline int int_param(const RunConfig &cfg, const std::string &key, long long lo,
                     long long hi = INT_MAX) {
  const long long v = cfg.integer(key);
  if (v < lo || v > hi) {
    throw Error(ErrorKind::invalid_argument,
                key + " = " + std::to_string(v) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return int(v);
}

inline ResultTable run_lattice(const RunConfig &cfg) {
  lattice::LatticeParams p;
  p.rabi_peak = cfg.number("rabi_peak");
  p.detuning = cfg.number("detuning");
  p.wavenumber = cfg.number("wavenumber");
  p.mass = cfg.number("mass");
  p.linewidth = cfg.number("linewidth");
  p.validate();
  const int points = int_param(cfg, "points", 2, 10'000'000);
  const double x0 = cfg.number("x_min"), x1 = cfg.number("x_max");
  require(x1 >= x0, "lattice: x_max must be >= x_min");

  ResultTable t;
  t.metadata = provenance(cfg);
  t.metadata.emplace_back("lattice_constant",
                          format_double(lattice::lattice_constant(p)));
  t.metadata.emplace_back("trap_frequency", format_double(lattice::trap_frequency(p)));
  t.metadata.emplace_back("ground_state_width",
                          format_double(lattice::ground_state_width(p)));
  t.metadata.emplace_back("recoil_energy", format_double(lattice::recoil_energy(p)));
  t.metadata.emplace_back("validity_ratio", format_double(p.validity_ratio()));
  if (p.detuning < 0.0) {
    t.metadata.emplace_back("spontaneous_rate",
                            format_double(lattice::spontaneous_rate_blue(p)));
  }
  t.columns = {"x", "V0", "V_harmonic"};
  for (int i = 0; i < points; ++i) {
    const double x = x0 + (x1 - x0) * i / (points - 1);
    t.add_row({x, lattice::optical_potential(x, p), lattice::harmonic_potential(x, p)});
  }
  return t;
}

inline ResultTable run_ed(const RunConfig &cfg, unsigned threads) {
  const int M = int_param(cfg, "M", 1);
  const int N = int_param(cfg, "N", 0, 65535);
  const long long cap = cfg.integer("dimension_cap");
  require(cap >= 1, "dimension_cap must be >= 1");
  const auto basis = fock::FockBasis::build(M, N, std::uint64_t(cap));
  const auto boundary =
      cfg.text("boundary") == "open" ? bh::Boundary::open : bh::Boundary::periodic;
  const auto model = bh::BHModel::chain(M, boundary, cfg.number("J"), 0.0,
                                        cfg.number("mu"));
  const auto rows = bh::crossover_scan(model, cfg.numbers("U_over_J"), basis, threads);

  ResultTable t;
  t.metadata = provenance(cfg);
  t.columns = {"U_over_J", "E0", "gap", "S0_over_N", "dn2_site0", "degenerate_flag"};
  for (const auto &r : rows) {
    t.add_row({r.u_over_j, r.energy, r.gap, r.peak_fraction, r.site0_fluctuation,
               (long long)(r.degenerate)});
  }
  return t;
}

inline ResultTable run_phase_diagram(const RunConfig &cfg, unsigned threads) {
  meanfield::PhaseGrid g;
  g.mu_min = cfg.number("mu_min");
  g.mu_max = cfg.number("mu_max");
  g.mu_points = int_param(cfg, "mu_points", 1, 100'000);
  g.zj_max = cfg.number("zJ_max");
  g.zj_points = int_param(cfg, "zJ_points", 1, 100'000);
  g.cutoff = int_param(cfg, "n_max", -1, 1000);
  g.seed = cfg.seed;
  g.threads = threads;
  const auto pd = meanfield::phase_diagram(g);

  ResultTable t;
  t.metadata = provenance(cfg);
  t.columns = {"mu_over_U", "zJ_over_U", "abs_psi", "label"};
  for (const auto &p : pd.points) {
    t.add_row({p.mu_over_u, p.zj_over_u, p.abs_psi, p.label()});
  }
  return t;
}

inline ResultTable run_butterfly(const RunConfig &cfg, unsigned threads) {
  const int q_max = int_param(cfg, "q_max", 1, 1000);
  const int res = int_param(cfg, "resolution", 4, 4096);
  const auto spectra = hofstadter::butterfly(q_max, res, threads);

  ResultTable t;
  t.metadata = provenance(cfg);
  t.columns = {"p", "q", "alpha", "kx_index", "ky_index", "energy_over_eps0"};
  for (const auto &s : spectra) {
    for (int i = 0; i < res; ++i) {
      for (int j = 0; j < res; ++j) {
        for (int b = 0; b < s.q; ++b) {
          t.rows.push_back({(long long)s.p, (long long)s.q, s.alpha(), (long long)i,
                            (long long)j, s.level(i, j, b)});
        }
      }
    }
  }
  return t;
}

inline json truth_table_json(const gates::TruthTable &t) {
  return json{{"inputs", {"00", "01", "10", "11"}},
              {"phases", t.phases},
              {"populations", t.populations},
              {"leakage", t.leakage}};
}

inline json envelope_json(const RunConfig &cfg, json result) {
  json out;
  out["tool"] = std::string(kToolName) + " " + kToolVersion;
  out["command"] = cfg.command;
  out["config_digest"] = config_digest(cfg);
  out["seed"] = cfg.seed;
  out["config"] = cfg.params;
  out["result"] = std::move(result);
  return out;
}

inline json run_gate_collisional(const RunConfig &cfg) {
  auto setup = gates::CollisionalSetup::standard();
  setup.scattering_length = cfg.number("scattering_length");
  setup.mass = cfg.number("mass");
  setup.trap_frequency = cfg.number("trap_frequency");
  require(setup.mass > 0.0 && setup.trap_frequency > 0.0,
          "mass and trap_frequency must be > 0");
  const double w = cfg.has("width")
                       ? cfg.number("width")
                       : std::sqrt(1.0 / (2.0 * setup.mass * setup.trap_frequency));
  setup.well_a.width_x = setup.well_a.width_y = setup.well_a.width_z = w;
  setup.well_b = setup.well_a;

  gates::TrajectoryTemplate shape;
  shape.d_far = cfg.number("d_far");
  shape.d_hold = cfg.number("d_hold");
  shape.move_time = cfg.number("move_time");
  const bool solved = !cfg.has("hold_time");
  shape.hold_time = solved
                        ? gates::solve_hold_time(shape, setup, cfg.number("target_phase"))
                        : cfg.number("hold_time");
  const auto report = gates::collisional_phase(shape.make(), setup);
  const auto table = gates::collisional_truth_table(report.phase_ab);
  json r{{"hold_time", shape.hold_time},
         {"hold_time_solved", solved},
         {"phase_ab", report.phase_ab},
         {"phase_a", report.phase_a},
         {"phase_b", report.phase_b},
         {"total_phase", report.total},
         {"max_shift", report.max_shift},
         {"adiabaticity_ratio", report.adiabaticity_ratio},
         {"truth_table", truth_table_json(table)},
         {"entangling_phase", table.entangling_phase()}};
  return envelope_json(cfg, std::move(r));
}

inline json run_gate_rydberg(const RunConfig &cfg, unsigned threads) {
  gates::RydbergParams p;
  const auto scheme = cfg.text("scheme");
  p.scheme = scheme == "fast"       ? gates::RydbergScheme::fast
             : scheme == "blockade" ? gates::RydbergScheme::blockade
                                    : gates::RydbergScheme::adiabatic;
  p.rabi = cfg.number("rabi");
  p.interaction = cfg.number("interaction");
  p.gate_phase = cfg.number("gate_phase");
  p.detuning = cfg.number("detuning");
  p.chirp = cfg.number("chirp");
  p.duration = cfg.number("duration");
  p.tolerance = cfg.number("tolerance");
  json r;
  if (cfg.has("target_phase")) {
    require(p.scheme == gates::RydbergScheme::adiabatic,
            "target_phase applies to the adiabatic scheme only");
    p.rabi = gates::solve_adiabatic_amplitude(p, cfg.number("target_phase"));
    r["solved_rabi"] = p.rabi;
  }
  const auto rep = gates::rydberg_truth_table(p, threads);
  r["scheme"] = scheme;
  r["truth_table"] = truth_table_json(rep.table);
  r["entangling_phase"] = rep.entangling_phase;
  r["leakage"] = rep.table.leakage;
  r["max_rr_population"] = rep.max_rr_population;
  r["rydberg_dwell"] = rep.rydberg_dwell;
  r["loss_estimate"] = rep.loss_estimate(cfg.number("linewidth"));
  r["norm_drift"] = rep.norm_drift;
  r["validity_ratio"] = p.validity_ratio();
  if (p.scheme == gates::RydbergScheme::blockade) {
    r["blockade_shift"] = gates::blockade_shift(rep.table);
    r["blockade_shift_estimate"] =
        gates::blockade_shift_estimate(p.rabi, p.interaction);
  }
  if (p.scheme == gates::RydbergScheme::adiabatic) {
    r["adiabatic_formula_phase"] = gates::adiabatic_gate_phase(p);
  }
  return envelope_json(cfg, std::move(r));
}

inline spin::Boundary spin_boundary(const RunConfig &cfg) {
  return cfg.text("boundary") == "periodic" ? spin::Boundary::periodic
                                            : spin::Boundary::open;
}

inline ResultTable run_ising_sweep(const RunConfig &cfg) {
  spin::IsingParams p;
  p.qubits = int_param(cfg, "N", 2);
  p.coupling = cfg.number("W");
  p.boundary = spin_boundary(cfg);
  const spin::RaisedCosineRamp ramp{cfg.number("B0"), cfg.number("T")};
  const auto res = spin::adiabatic_sweep(p, ramp, cfg.number("tolerance"),
                                         int_param(cfg, "samples", 2, 1'000'000));
  ResultTable t;
  t.metadata = provenance(cfg);
  t.metadata.emplace_back("pair", p.coupling < 0.0 ? "uniform" : "neel");
  t.metadata.emplace_back("alpha_population",
                          format_double(res.report.alpha_population));
  t.metadata.emplace_back("beta_population", format_double(res.report.beta_population));
  t.metadata.emplace_back("relative_phase", format_double(res.report.relative_phase));
  t.metadata.emplace_back("norm_drift", format_double(res.stats.norm_drift));
  t.columns = {"t", "B_t", "energy", "subspace_fidelity", "parity_leak"};
  for (const auto &s : res.samples) {
    t.add_row({s.t, s.field, s.energy, s.subspace_fidelity, s.parity_leak});
  }
  return t;
}

inline constexpr int kTrotterBenchMaxQubits = 10;

inline ResultTable run_trotter_bench(const RunConfig &cfg) {
  spin::IsingParams p;
  p.qubits = int_param(cfg, "N", 2);
  if (p.qubits > kTrotterBenchMaxQubits) {
    throw Error(ErrorKind::capacity,
                "trotter-bench: N = " + std::to_string(p.qubits) +
                    " exceeds the dense reference limit of 10");
  }
  p.coupling = cfg.number("W");
  p.boundary = spin_boundary(cfg);
  const double horizon = cfg.number("horizon");
  require(horizon > 0.0 && std::isfinite(horizon), "horizon must be > 0");
  const auto terms = spin::ising_terms(p, cfg.number("B"));
  spin::StateVector psi = spin::StateVector::Zero(p.dimension());
  psi(0) = 1.0;
  const auto exact = spin::exact_evolve(psi, terms, horizon);

  ResultTable t;
  t.metadata = provenance(cfg);
  t.columns = {"dt", "steps", "error"};
  for (double dt : cfg.numbers("dt")) {
    require(dt > 0.0, "dt values must be > 0");
    const double n = std::round(horizon / dt);
    if (n < 1.0 || std::abs(n * dt - horizon) > 1e-9 * horizon) {
      throw Error(ErrorKind::invalid_argument,
                  "dt = " + format_double(dt) + " does not divide the horizon");
    }
    const auto approx = spin::trotter_evolve(psi, terms, dt, int(n));
    t.add_row({dt, (long long)n, (approx - exact).norm()});
  }
  return t;
}

// Runs a validated configuration.
inline RunOutput run(const RunConfig &cfg, unsigned threads = 1) {
  const auto &c = cfg.command;
  if (c == "lattice") return {to_csv(run_lattice(cfg))};
  if (c == "ed") return {to_csv(run_ed(cfg, threads))};
  if (c == "phase-diagram") return {to_csv(run_phase_diagram(cfg, threads))};
  if (c == "butterfly") return {to_csv(run_butterfly(cfg, threads))};
  if (c == "gate-collisional") return {run_gate_collisional(cfg).dump(2) + "\n", true};
  if (c == "gate-rydberg") return {run_gate_rydberg(cfg, threads).dump(2) + "\n", true};
  if (c == "ising-sweep") return {to_csv(run_ising_sweep(cfg))};
  if (c == "trotter-bench") return {to_csv(run_trotter_bench(cfg))};
  throw Error(ErrorKind::config, "unknown subcommand '" + c + "'");
}

}  // namespace optlattice::io

#endif  // OPTLATTICE_IO_COMMANDS_HPP
