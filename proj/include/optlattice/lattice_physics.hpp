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

#ifndef OPTLATTICE_LATTICE_PHYSICS_HPP
#define OPTLATTICE_LATTICE_PHYSICS_HPP

#include <cmath>
#include <functional>
#include <numbers>

#include "optlattice/error.hpp"

// Single-atom formulas for a far-detuned standing-wave lattice. Units are
// hbar = 1 throughout: energies and angular frequencies share one unit.
namespace optlattice::lattice {

struct LatticeParams {
  double rabi_peak = 1.0;   // Omega_0
  double detuning = -1.0;   // Delta; negative is blue detuned
  double wavenumber = 1.0;  // k = 2 pi / lambda
  double mass = 1.0;
  double linewidth = 0.0;   // gamma of the excited level

  void validate() const {
    require(detuning != 0.0, "LatticeParams: detuning must be nonzero");
    require(rabi_peak > 0.0, "LatticeParams: rabi_peak must be > 0");
    require(wavenumber > 0.0, "LatticeParams: wavenumber must be > 0");
    require(mass > 0.0, "LatticeParams: mass must be > 0");
    require(linewidth >= 0.0, "LatticeParams: linewidth must be >= 0");
  }

  // Omega_0 / |Delta|. Adiabatic elimination of the excited state wants this
  // small; it is reported, not enforced.
  double validity_ratio() const { return rabi_peak / std::abs(detuning); }
};

// Lattice period a = lambda / 2.
inline double lattice_constant(const LatticeParams &p) {
  p.validate();
  return std::numbers::pi / p.wavenumber;
}

// V0(x) = -Omega(x)^2 / (4 Delta) with Omega(x) = Omega_0 sin(k x).
inline double optical_potential(double x, const LatticeParams &p) {
  p.validate();
  const double omega = p.rabi_peak * std::sin(p.wavenumber * x);
  return -omega * omega / (4.0 * p.detuning);
}

inline double trap_frequency(const LatticeParams &p) {
  p.validate();
  return std::abs(p.rabi_peak * p.wavenumber) /
         std::sqrt(2.0 * std::abs(p.detuning) * p.mass);
}

// Effective photon scattering rate of an atom trapped at an intensity node.
// Only the blue-detuned lattice traps atoms at nodes.
inline double spontaneous_rate_blue(const LatticeParams &p) {
  p.validate();
  if (p.detuning >= 0.0) {
    throw Error(ErrorKind::invalid_argument,
                "spontaneous_rate_blue: requires Delta < 0; the red-detuned "
                "regime (Delta > 0) is unsupported");
  }
  return p.linewidth / (4.0 * std::abs(p.detuning)) * trap_frequency(p);
}

// E_R = k^2 / 2m. Diagnostic only.
inline double recoil_energy(const LatticeParams &p) {
  p.validate();
  return p.wavenumber * p.wavenumber / (2.0 * p.mass);
}

// Position of the potential minimum closest to x. Blue lattices trap at the
// nodes k x = n pi, red lattices at the antinodes k x = (n + 1/2) pi.
inline double nearest_minimum(double x, const LatticeParams &p) {
  p.validate();
  const double a = lattice_constant(p);
  const double offset = p.detuning < 0.0 ? 0.0 : 0.5 * a;
  return offset + a * std::round((x - offset) / a);
}

// Harmonic approximation 1/2 m omega_T^2 (x - x_min)^2 about the nearest
// minimum, shifted to the potential value there.
inline double harmonic_potential(double x, const LatticeParams &p) {
  const double x0 = nearest_minimum(x, p);
  const double w = trap_frequency(p);
  return optical_potential(x0, p) + 0.5 * p.mass * w * w * (x - x0) * (x - x0);
}

// RMS width of the harmonic ground-state density, sqrt(1 / (2 m omega_T)).
inline double ground_state_width(const LatticeParams &p) {
  return std::sqrt(1.0 / (2.0 * p.mass * trap_frequency(p)));
}

// Gaussian ground state of one trap. Widths are the RMS widths of |psi|^2 per
// axis; the centre moves along x only.
struct GaussianWell {
  double width_x = 1.0;
  double width_y = 1.0;
  double width_z = 1.0;
  std::function<double(double)> center = [](double) { return 0.0; };

  void validate() const {
    require(width_x > 0.0 && width_y > 0.0 && width_z > 0.0,
            "GaussianWell: widths must be > 0");
  }
};

// Interaction energy of two atoms in overlapping Gaussian wells displaced by
// d along x:
//   (4 pi a_s / m) * prod_nu (2 sqrt(pi) w_nu)^-1 * exp(-d^2 / (4 w_x^2)).
inline double interaction_shift(double scattering_length, const GaussianWell &a,
                                const GaussianWell &b, double displacement,
                                double mass) {
  a.validate();
  b.validate();
  require(a.width_x == b.width_x && a.width_y == b.width_y &&
              a.width_z == b.width_z,
          "interaction_shift: wells must share widths per axis");
  require(mass > 0.0, "interaction_shift: mass must be > 0");
  const double norm = 2.0 * std::sqrt(std::numbers::pi);
  const double volume =
      1.0 / (norm * a.width_x * norm * a.width_y * norm * a.width_z);
  const double overlap =
      std::exp(-displacement * displacement / (4.0 * a.width_x * a.width_x));
  return 4.0 * std::numbers::pi * scattering_length / mass * volume * overlap;
}

// Shift at time t from the wells' centre trajectories.
inline double interaction_shift_at(double scattering_length,
                                   const GaussianWell &a, const GaussianWell &b,
                                   double t, double mass) {
  return interaction_shift(scattering_length, a, b, a.center(t) - b.center(t),
                           mass);
}

// |Delta E| / omega_T; the transport is adiabatic when this is small.
inline double adiabaticity_ratio(double shift, double trap_freq) {
  require(trap_freq > 0.0, "adiabaticity_ratio: trap frequency must be > 0");
  return std::abs(shift) / trap_freq;
}

}  // namespace optlattice::lattice

#endif  // OPTLATTICE_LATTICE_PHYSICS_HPP
