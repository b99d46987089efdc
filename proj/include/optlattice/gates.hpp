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

#ifndef OPTLATTICE_GATES_HPP
#define OPTLATTICE_GATES_HPP

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "optlattice/core/evolve.hpp"
#include "optlattice/core/parallel.hpp"
#include "optlattice/core/quadrature.hpp"
#include "optlattice/lattice_physics.hpp"

namespace optlattice::gates {

using numerics::cplx;
using numerics::StateVector;

// Maps an angle to (-pi, pi].
inline double wrap_phase(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double y = std::remainder(x, two_pi);
  if (y <= -std::numbers::pi) y += two_pi;
  return y;
}

// Diagonal gate on the logical inputs, ordered 00, 01, 10, 11 (first digit is
// atom 1).
struct TruthTable {
  std::array<double, 4> phases{};
  std::array<double, 4> populations{1.0, 1.0, 1.0, 1.0};
  double leakage = 0.0;

  // phi_11 - phi_10 - phi_01 + phi_00. Single-atom phase offsets cancel.
  double entangling_phase() const {
    return wrap_phase(phases[3] - phases[2] - phases[1] + phases[0]);
  }
};

inline TruthTable make_truth_table(const std::array<double, 4> &phases,
                                   const std::array<double, 4> &populations) {
  TruthTable t;
  for (int i = 0; i < 4; ++i) t.phases[i] = wrap_phase(phases[i]);
  t.populations = populations;
  t.leakage = 1.0 - *std::min_element(populations.begin(), populations.end());
  return t;
}

// Applies `first` then `second`.
inline TruthTable compose(const TruthTable &first, const TruthTable &second) {
  std::array<double, 4> phases{}, pops{};
  for (int i = 0; i < 4; ++i) {
    phases[i] = first.phases[i] + second.phases[i];
    pops[i] = first.populations[i] * second.populations[i];
  }
  return make_truth_table(phases, pops);
}

// ---------------------------------------------------------------------------
// Collisional gate

// Relative displacement d(t) = x_a(t) - x_b(t) of the two traps on
// [-half_duration, half_duration].
struct Trajectory {
  std::function<double(double)> displacement;
  double half_duration = 0.0;
  std::vector<double> breakpoints;  // kinks or jumps of d(t)
};

// Approach over move_time with a raised-cosine profile, hold at d_hold, then
// the mirror-image return. move_time = 0 gives the square-pulse limit.
struct TrajectoryTemplate {
  double d_far = 8.0;
  double d_hold = 0.0;
  double move_time = 20.0;
  double hold_time = 0.0;

  Trajectory make() const {
    require(move_time >= 0.0 && hold_time >= 0.0,
            "TrajectoryTemplate: times must be >= 0");
    require(std::isfinite(d_far) && std::isfinite(d_hold),
            "TrajectoryTemplate: displacements must be finite");
    Trajectory t;
    const double half_hold = 0.5 * hold_time;
    const double far = d_far, hold = d_hold, move = move_time;
    t.half_duration = half_hold + move;
    t.displacement = [=](double time) {
      const double s = std::abs(time);
      if (s < half_hold) return hold;
      if (move == 0.0 || s >= half_hold + move) return far;
      const double x = (s - half_hold) / move;
      return hold + (far - hold) * 0.5 * (1.0 - std::cos(std::numbers::pi * x));
    };
    if (half_hold > 0.0) t.breakpoints = {-half_hold, half_hold};
    return t;
  }
};

struct CollisionalSetup {
  lattice::GaussianWell well_a;
  lattice::GaussianWell well_b;
  double scattering_length = 0.02;
  double mass = 1.0;
  double trap_frequency = 1.0;

  // Harmonic ground states of isotropic traps at omega_T = 1, m = 1.
  static CollisionalSetup standard() {
    CollisionalSetup s;
    const double w = std::sqrt(0.5);
    s.well_a = {w, w, w, [](double) { return 0.0; }};
    s.well_b = s.well_a;
    return s;
  }

  double shift(double displacement) const {
    return lattice::interaction_shift(scattering_length, well_a, well_b,
                                      displacement, mass);
  }
  // exp(-d^2 / 4 w_x^2), the overlap factor of the shift.
  double overlap(double displacement) const {
    return std::exp(-displacement * displacement /
                    (4.0 * well_a.width_x * well_a.width_x));
  }
};

struct GatePhaseReport {
  double total = 0.0;
  double phase_a = 0.0;  // kinematic single-particle phases, 0 by convention
  double phase_b = 0.0;
  double phase_ab = 0.0;
  double max_shift = 0.0;
  double adiabaticity_ratio = 0.0;  // max |Delta E| / omega_T
};

inline constexpr double kEndpointOverlapLimit = 1e-12;

// phi_ab = integral of Delta E(d(t)) dt.
inline GatePhaseReport collisional_phase(const Trajectory &traj,
                                         const CollisionalSetup &setup,
                                         double tolerance = 1e-12) {
  require(bool(traj.displacement), "collisional_phase: empty trajectory");
  require(traj.half_duration >= 0.0,
          "collisional_phase: negative trajectory duration");
  require(setup.trap_frequency > 0.0,
          "collisional_phase: trap frequency must be > 0");
  const double tau = traj.half_duration;
  for (double t : {-tau, tau}) {
    const double ov = setup.overlap(traj.displacement(t));
    if (!(ov < kEndpointOverlapLimit)) {
      throw Error(ErrorKind::invalid_argument,
                  "collisional_phase: overlap " + std::to_string(ov) +
                      " at t = " + std::to_string(t) +
                      " exceeds 1e-12; the atoms must start and end separated");
    }
  }
  GatePhaseReport r;
  numerics::QuadratureOptions qopt;
  qopt.breakpoints = traj.breakpoints;
  qopt.breakpoints.push_back(0.0);
  r.phase_ab = numerics::quadrature(
      [&](double t) { return setup.shift(traj.displacement(t)); }, -tau, tau,
      tolerance, qopt);
  r.total = r.phase_a + r.phase_b + r.phase_ab;

  constexpr int samples = 4001;
  std::vector<double> times;
  for (int i = 0; i < samples; ++i) {
    times.push_back(-tau + 2.0 * tau * i / (samples - 1));
  }
  for (double b : traj.breakpoints) {
    times.push_back(std::nextafter(b, -tau));
    times.push_back(std::nextafter(b, tau));
  }
  for (double t : times) {
    r.max_shift =
        std::max(r.max_shift, std::abs(setup.shift(traj.displacement(t))));
  }
  r.adiabaticity_ratio =
      lattice::adiabaticity_ratio(r.max_shift, setup.trap_frequency);
  return r;
}

// Hold time that makes phi_ab equal `target`. The hold segment contributes
// Delta E(d_hold) per unit time, so the answer is linear in the target.
inline double solve_hold_time(const TrajectoryTemplate &shape,
                              const CollisionalSetup &setup, double target) {
  require(target > 0.0, "solve_hold_time: target must be > 0");
  const double hold_shift = setup.shift(shape.d_hold);
  if (!(hold_shift > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                "solve_hold_time: Delta E at the hold point is " +
                    std::to_string(hold_shift) + "; target unreachable");
  }
  TrajectoryTemplate transport = shape;
  transport.hold_time = 0.0;
  const double base = collisional_phase(transport.make(), setup).phase_ab;
  const double hold = (target - base) / hold_shift;
  if (hold < 0.0) {
    throw Error(ErrorKind::invalid_argument,
                "solve_hold_time: transport alone accumulates " +
                    std::to_string(base) + " rad, above the target");
  }
  return hold;
}

// Ideal adiabatic gate: only |01> (atom a in 0, atom b in 1) collides.
inline TruthTable collisional_truth_table(double phase_ab) {
  return make_truth_table({0.0, phase_ab, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0});
}

// ---------------------------------------------------------------------------
// Rydberg gate

// Two-atom internal basis index 3 * level1 + level2, levels 0, 1, r = 2.
inline constexpr int kLevelR = 2;

inline int logical_index(int label) {
  require(label >= 0 && label < 4, "logical label must be in 0..3");
  return 3 * (label >> 1) + (label & 1);
}

using Envelope = std::function<double(double)>;

inline Envelope constant(double v) {
  return [v](double) { return v; };
}

struct PulseSchedule {
  Envelope rabi1 = constant(0.0);
  Envelope rabi2 = constant(0.0);
  Envelope detuning1 = constant(0.0);
  Envelope detuning2 = constant(0.0);
  double interaction = 0.0;  // u
  double duration = 0.0;
  std::vector<double> breakpoints;

  void validate() const {
    require(rabi1 && rabi2 && detuning1 && detuning2,
            "PulseSchedule: envelopes must be set");
    require(std::isfinite(interaction), "PulseSchedule: u must be finite");
    require(duration >= 0.0 && std::isfinite(duration),
            "PulseSchedule: duration must be finite and >= 0");
  }
};

// H = sum_j [delta_j |r><r| - Omega_j / 2 (|1><r| + h.c.)]_j + u |rr><rr|.
inline void apply_rydberg(const PulseSchedule &s, double t, const StateVector &in,
                          StateVector &out) {
  const double o1 = -0.5 * s.rabi1(t), o2 = -0.5 * s.rabi2(t);
  const double d1 = s.detuning1(t), d2 = s.detuning2(t);
  out.setZero(9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const int i = 3 * a + b;
      const cplx v = in(i);
      double diag = 0.0;
      if (a == kLevelR) diag += d1;
      if (b == kLevelR) diag += d2;
      if (a == kLevelR && b == kLevelR) diag += s.interaction;
      out(i) += diag * v;
      if (a == 1) out(3 * kLevelR + b) += o1 * v;
      if (a == kLevelR) out(3 * 1 + b) += o1 * v;
      if (b == 1) out(3 * a + kLevelR) += o2 * v;
      if (b == kLevelR) out(3 * a + 1) += o2 * v;
    }
  }
}

struct RydbergRun {
  StateVector final_state;
  double phase = 0.0;       // arg of the amplitude on the input state
  double population = 0.0;  // |that amplitude|^2
  double max_rr_population = 0.0;
  double rydberg_dwell = 0.0;  // integral of the Rydberg population
  numerics::EvolveStats stats;
};

inline RydbergRun rydberg_evolve(const PulseSchedule &schedule, int label,
                                 double tolerance = 1e-10) {
  schedule.validate();
  const int idx = logical_index(label);
  StateVector psi = StateVector::Zero(9);
  psi(idx) = 1.0;

  RydbergRun run;
  double last_t = 0.0, last_pr = 0.0;
  auto observe = [&](double t, const StateVector &y) {
    double pr = 0.0;
    for (int k = 0; k < 3; ++k) {
      pr += std::norm(y(3 * kLevelR + k));
      if (k != kLevelR) pr += std::norm(y(3 * k + kLevelR));
    }
    run.max_rr_population =
        std::max(run.max_rr_population, std::norm(y(3 * kLevelR + kLevelR)));
    if (t > last_t) run.rydberg_dwell += 0.5 * (pr + last_pr) * (t - last_t);
    last_t = t;
    last_pr = pr;
  };
  numerics::EvolveOptions opt;
  opt.tolerance = tolerance;
  opt.breakpoints = schedule.breakpoints;
  run.final_state = numerics::evolve(
      psi,
      [&](double t, const StateVector &in, StateVector &out) {
        apply_rydberg(schedule, t, in, out);
      },
      0.0, schedule.duration, opt, observe, &run.stats);
  run.phase = std::arg(run.final_state(idx));
  run.population = std::norm(run.final_state(idx));
  return run;
}

enum class RydbergScheme { fast, blockade, adiabatic };

inline std::string to_string(RydbergScheme s) {
  switch (s) {
    case RydbergScheme::fast: return "fast";
    case RydbergScheme::blockade: return "blockade";
    case RydbergScheme::adiabatic: return "adiabatic";
  }
  return "unknown";
}

struct RydbergParams {
  RydbergScheme scheme = RydbergScheme::blockade;
  double rabi = 1.0;           // square-pulse Omega, or the adiabatic peak
  double interaction = 100.0;  // u
  double gate_phase = std::numbers::pi;  // fast scheme: hold for phi / u
  double detuning = 1.0;       // adiabatic: delta(t) = detuning + chirp sin^2
  double chirp = 0.0;
  double duration = 60.0;      // adiabatic pulse length
  double tolerance = 1e-10;

  void validate() const {
    require(std::isfinite(rabi) && rabi > 0.0, "RydbergParams: rabi must be > 0");
    require(std::isfinite(interaction), "RydbergParams: u must be finite");
    require(std::isfinite(gate_phase) && gate_phase >= 0.0,
            "RydbergParams: gate_phase must be >= 0");
    require(std::isfinite(detuning) && std::isfinite(chirp),
            "RydbergParams: detuning must be finite");
    require(std::isfinite(duration) && duration > 0.0,
            "RydbergParams: duration must be > 0");
    require(tolerance > 0.0, "RydbergParams: tolerance must be > 0");
  }

  // Figure of merit for the scheme's working regime: Omega/u for the square
  // schemes (fast wants it large, blockade small), 1/(Omega tau) for the
  // adiabatic one (wants it small).
  double validity_ratio() const {
    if (scheme == RydbergScheme::adiabatic) return 1.0 / (rabi * duration);
    return interaction == 0.0 ? std::numeric_limits<double>::infinity()
                              : rabi / std::abs(interaction);
  }
};

namespace detail {

// Piecewise-constant envelope with values[i] on [edges[i], edges[i+1]).
inline Envelope steps(std::vector<double> edges, std::vector<double> values) {
  return [edges = std::move(edges), values = std::move(values)](double t) {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (t < edges[i + 1]) return values[i];
    }
    return values.back();
  };
}

}  // namespace detail

inline PulseSchedule make_schedule(const RydbergParams &p) {
  p.validate();
  PulseSchedule s;
  s.interaction = p.interaction;
  const double pi_time = std::numbers::pi / p.rabi;
  const double om = p.rabi;
  switch (p.scheme) {
    case RydbergScheme::blockade: {
      // pi on atom 1, 2 pi on atom 2, pi on atom 1.
      const std::vector<double> e{0.0, pi_time, 3.0 * pi_time, 4.0 * pi_time};
      s.rabi1 = detail::steps(e, {om, 0.0, om});
      s.rabi2 = detail::steps(e, {0.0, om, 0.0});
      s.duration = e.back();
      s.breakpoints = {e[1], e[2]};
      break;
    }
    case RydbergScheme::fast: {
      // Both atoms to |r>, wait phi / u, both back.
      const double hold =
          p.interaction == 0.0 ? 0.0 : p.gate_phase / std::abs(p.interaction);
      const std::vector<double> e{0.0, pi_time, pi_time + hold,
                                  2.0 * pi_time + hold};
      s.rabi1 = detail::steps(e, {om, 0.0, om});
      s.rabi2 = s.rabi1;
      s.duration = e.back();
      s.breakpoints = {e[1], e[2]};
      break;
    }
    case RydbergScheme::adiabatic: {
      const double tau = p.duration, d0 = p.detuning, dc = p.chirp;
      auto shape = [tau](double t) {
        const double x = std::sin(std::numbers::pi * t / tau);
        return x * x;
      };
      s.rabi1 = [=](double t) { return om * shape(t); };
      s.rabi2 = s.rabi1;
      s.detuning1 = [=](double t) { return d0 + dc * shape(t); };
      s.detuning2 = s.detuning1;
      s.duration = tau;
      break;
    }
  }
  return s;
}

struct RydbergGateReport {
  TruthTable table;
  double entangling_phase = 0.0;
  double max_rr_population = 0.0;
  double rydberg_dwell = 0.0;  // largest over the four inputs
  double norm_drift = 0.0;     // largest over the four inputs

  // gamma * (time spent in |r>), the loss probability to first order.
  double loss_estimate(double linewidth) const { return linewidth * rydberg_dwell; }
};

inline RydbergGateReport rydberg_truth_table(const PulseSchedule &schedule,
                                             double tolerance = 1e-10,
                                             unsigned threads = 1) {
  std::array<RydbergRun, 4> runs;
  numerics::parallel_for(4, threads, [&](std::size_t i) {
    runs[i] = rydberg_evolve(schedule, int(i), tolerance);
  });
  std::array<double, 4> phases{}, pops{};
  RydbergGateReport r;
  for (int i = 0; i < 4; ++i) {
    phases[i] = runs[i].phase;
    pops[i] = runs[i].population;
    r.max_rr_population = std::max(r.max_rr_population, runs[i].max_rr_population);
    r.rydberg_dwell = std::max(r.rydberg_dwell, runs[i].rydberg_dwell);
    r.norm_drift = std::max(r.norm_drift, runs[i].stats.norm_drift);
  }
  r.table = make_truth_table(phases, pops);
  r.entangling_phase = r.table.entangling_phase();
  return r;
}

inline RydbergGateReport rydberg_truth_table(const RydbergParams &p,
                                             unsigned threads = 1) {
  return rydberg_truth_table(make_schedule(p), p.tolerance, threads);
}

// Residual phase on |11> in the blockade scheme, |phi_11 - pi| modulo 2 pi.
inline double blockade_shift(const TruthTable &t) {
  return std::abs(wrap_phase(t.phases[3] - std::numbers::pi));
}

// Perturbative estimate of that residual, pi Omega_2 / 2u.
inline double blockade_shift_estimate(double rabi2, double interaction) {
  require(interaction != 0.0, "blockade_shift_estimate: u must be nonzero");
  return std::numbers::pi * rabi2 / (2.0 * std::abs(interaction));
}

// Adiabatic two-atom phase
//   phi = integral of [sgn(dt)(|dt| - sqrt(dt^2 + 2 W^2)) / 2
//                      - sgn(d)(|d| - sqrt(d^2 + W^2))] dt
// with dt = d - W^2 / (4 d + 2 u). In terms of the dressed energies this is
// the integral of E_11 - 2 E_1, so under exp(-iHt) it equals minus the
// entangling phase.
inline double adiabatic_gate_phase(const Envelope &rabi, const Envelope &detuning,
                                   double interaction, double t0, double tau,
                                   double tolerance = 1e-12) {
  require(bool(rabi) && bool(detuning),
          "adiabatic_gate_phase: envelopes must be set");
  require(tau >= 0.0 && std::isfinite(t0) && std::isfinite(tau),
          "adiabatic_gate_phase: invalid time window");
  auto sgn = [](double x) { return double((x > 0.0) - (x < 0.0)); };
  auto guard = [&](double t) {
    const double d = detuning(t);
    const double den = 4.0 * d + 2.0 * interaction;
    return std::min(std::abs(d), std::abs(den));
  };
  auto reject = [](double t) {
    throw Error(ErrorKind::invalid_argument,
                "adiabatic_gate_phase: integrand singular near t = " +
                    std::to_string(t) + " (delta = 0 or 4 delta + 2u = 0)");
  };
  // Scan for zeros of delta and 4 delta + 2u, which are sign changes here.
  constexpr int samples = 4001;
  double prev_d = 0.0, prev_den = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + tau * i / (samples - 1);
    const double d = detuning(t);
    const double den = 4.0 * d + 2.0 * interaction;
    if (d == 0.0 || den == 0.0) reject(t);
    if (i > 0 && (sgn(d) != sgn(prev_d) || sgn(den) != sgn(prev_den))) reject(t);
    prev_d = d;
    prev_den = den;
  }
  auto integrand = [&](double t) {
    if (guard(t) == 0.0) reject(t);
    const double w = rabi(t), d = detuning(t);
    const double dt = d - w * w / (4.0 * d + 2.0 * interaction);
    return sgn(dt) * (std::abs(dt) - std::sqrt(dt * dt + 2.0 * w * w)) / 2.0 -
           sgn(d) * (std::abs(d) - std::sqrt(d * d + w * w));
  };
  return numerics::quadrature(integrand, t0, t0 + tau, tolerance);
}

inline double adiabatic_gate_phase(const RydbergParams &p) {
  RydbergParams q = p;
  q.scheme = RydbergScheme::adiabatic;
  const auto s = make_schedule(q);
  return adiabatic_gate_phase(s.rabi1, s.detuning1, p.interaction, 0.0,
                              p.duration);
}

// Peak Rabi frequency for which the adiabatic formula gives `target`, found
// by bracketing on a doubling grid and refining with TOMS 748.
inline double solve_adiabatic_amplitude(RydbergParams p, double target,
                                        double max_rabi = 1e3) {
  require(target > 0.0, "solve_adiabatic_amplitude: target must be > 0");
  auto f = [&](double rabi) {
    p.rabi = rabi;
    return adiabatic_gate_phase(p) - target;
  };
  double lo = 1e-3, flo = f(lo);
  double hi = lo, fhi = flo;
  while (fhi * flo > 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    if (hi > max_rabi) {
      throw Error(ErrorKind::convergence,
                  "solve_adiabatic_amplitude: no amplitude below " +
                      std::to_string(max_rabi) + " reaches the target");
    }
    fhi = f(hi);
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48),
      iterations);
  return 0.5 * (a + b);
}

}  // namespace optlattice::gates

#endif  // OPTLATTICE_GATES_HPP
