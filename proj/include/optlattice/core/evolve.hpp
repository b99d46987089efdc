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

#ifndef OPTLATTICE_CORE_EVOLVE_HPP
#define OPTLATTICE_CORE_EVOLVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "optlattice/core/hermitian_matrix.hpp"

namespace optlattice::numerics {

struct EvolveOptions {
  // Bound on the 2-norm of the local error estimate per step.
  double tolerance = 1e-10;
  double initial_step = 0.0;  // 0 picks one from |H psi0|
  double max_step = 0.0;      // 0 means unbounded
  // Times inside (t0, t1) where the generator may jump; steps never cross
  // them.
  std::vector<double> breakpoints;
  std::size_t max_steps = 50'000'000;
};

struct EvolveStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  // |<psi|psi> - 1| at t1. Nothing renormalizes the state, so this measures
  // integration error directly.
  double norm_drift = 0.0;
};

struct NoObserver {
  void operator()(double, const StateVector &) const {}
};

// Integrates i d(psi)/dt = H(t) psi (hbar = 1) from t0 to t1 with the
// Dormand-Prince 5(4) pair and adaptive step control.
//
// `apply_h(t, in, out)` must write H(t) * in into out. `observer(t, psi)` is
// called at t0 and after every accepted step.
template <class Generator, class Observer = NoObserver>
StateVector evolve(const StateVector &psi0, Generator &&apply_h, double t0,
                   double t1, const EvolveOptions &opt = {},
                   Observer &&observer = {}, EvolveStats *stats = nullptr) {
  if (!(opt.tolerance > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "evolve: tolerance must be > 0");
  }
  require(t1 >= t0, "evolve: t1 must not precede t0");
  require(psi0.size() >= 1, "evolve: empty state");
  require(is_normalized(psi0), "evolve: initial state is not normalized");

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  EvolveStats local;
  const Index n = psi0.size();
  const cplx minus_i(0.0, -1.0);

  auto deriv = [&](double t, const StateVector &y, StateVector &out) {
    apply_h(t, y, out);
    ++local.evaluations;
    if (!out.allFinite()) {
      throw Error(ErrorKind::invalid_argument,
                  "evolve: non-finite generator value at t = " +
                      std::to_string(t));
    }
    out *= minus_i;
  };

  std::vector<double> stops;
  for (double b : opt.breakpoints) {
    if (b > t0 && b < t1) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end());
  stops.push_back(t1);

  StateVector y = psi0;
  StateVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  observer(t0, y);

  double t = t0;
  double h = opt.initial_step;
  for (double stop : stops) {
    if (stop <= t) continue;
    deriv(t, y, k1);
    if (!(h > 0.0)) {
      const double f = k1.norm();
      h = f > 0.0 ? 0.01 / f : stop - t;
    }
    while (t < stop) {
      if (local.accepted + local.rejected >= opt.max_steps) {
        throw Error(ErrorKind::convergence,
                    "evolve: step budget exhausted at t = " + std::to_string(t));
      }
      if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
      const double h_proposed = h;
      bool last = false;
      if (t + h >= stop || stop - (t + h) < 1e-12 * std::abs(stop)) {
        h = stop - t;
        last = true;
      }
      if (!(h > 1e-15 * std::max(1.0, std::abs(t)))) {
        throw Error(ErrorKind::convergence,
                    "evolve: step size underflow at t = " + std::to_string(t));
      }

      tmp = y + h * (a21 * k1);
      deriv(t + c2 * h, tmp, k2);
      tmp = y + h * (a31 * k1 + a32 * k2);
      deriv(t + c3 * h, tmp, k3);
      tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      deriv(t + c4 * h, tmp, k4);
      tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      deriv(t + c5 * h, tmp, k5);
      tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      // The final stages of a segment are sampled one ulp before the stop so
      // a generator that jumps at a breakpoint is never read past it.
      const double t_end = last ? std::nextafter(stop, t0) : t + h;
      deriv(t_end, tmp, k6);
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      deriv(t_end, ynew, k7);
      tmp = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double err = tmp.norm() / opt.tolerance;
      if (err <= 1.0) {
        t = last ? stop : t + h;
        y.swap(ynew);
        k1.swap(k7);
        ++local.accepted;
        observer(t, y);
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = std::max(h, last ? h_proposed : h) * std::clamp(grow, 0.2, 5.0);
      } else {
        ++local.rejected;
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
  }

  local.norm_drift = std::abs(y.squaredNorm() - 1.0);
  if (stats != nullptr) *stats = local;
  return y;
}

// Convenience form for generators that hand back a whole matrix per call.
inline StateVector evolve_matrix(
    const StateVector &psi0,
    const std::function<HermitianMatrix(double)> &hamiltonian, double t0,
    double t1, const EvolveOptions &opt = {}, EvolveStats *stats = nullptr) {
  return evolve(
      psi0,
      [&](double t, const StateVector &in, StateVector &out) {
        hamiltonian(t).apply(in, out);
      },
      t0, t1, opt, NoObserver{}, stats);
}

}  // namespace optlattice::numerics

#endif  // OPTLATTICE_CORE_EVOLVE_HPP
