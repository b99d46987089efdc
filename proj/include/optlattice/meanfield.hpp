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

#ifndef OPTLATTICE_MEANFIELD_HPP
#define OPTLATTICE_MEANFIELD_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "optlattice/core/parallel.hpp"
#include "optlattice/error.hpp"

// Single-site decoupling of the Bose-Hubbard model. All energies are in units
// of U; the hopping enters only through zJ/U.
namespace optlattice::meanfield {

// |psi| below this labels a point Mott insulating.
inline constexpr double kOrderParameterTolerance = 1e-6;

// Second-order boundary of Mott lobe n:
//   (zJ/U)^-1 = (n + 1) / (n - mu/U) + n / (mu/U - (n - 1)).
// Empty outside n - 1 < mu/U < n.
inline std::optional<double> lobe_boundary(int filling, double mu_over_u) {
  require(filling >= 1, "lobe_boundary: filling must be >= 1");
  const double n = filling;
  if (!(mu_over_u > n - 1.0 && mu_over_u < n)) return std::nullopt;
  const double inv = (n + 1.0) / (n - mu_over_u) + n / (mu_over_u - (n - 1.0));
  return 1.0 / inv;
}

// Maximum of lobe_boundary over mu/U: (2n + 1) - 2 sqrt(n (n + 1)).
inline double lobe_tip(int filling) {
  require(filling >= 1, "lobe_tip: filling must be >= 1");
  const double n = filling;
  return (2.0 * n + 1.0) - 2.0 * std::sqrt(n * (n + 1.0));
}

// mu/U at which lobe n is widest in zJ/U.
inline double lobe_tip_mu(int filling) {
  require(filling >= 1, "lobe_tip_mu: filling must be >= 1");
  const double n = filling;
  const double s = std::sqrt(n / (n + 1.0));
  return (s * n + n - 1.0) / (1.0 + s);
}

// Product-state site amplitudes f_n, real and nonnegative in the gauge
// psi >= 0.
struct GutzwillerState {
  std::vector<double> amplitudes;
  double order_parameter = 0.0;  // psi = <a>
  int cutoff = 0;                // n_max
  double energy = 0.0;           // per site, units of U
  double mean_occupation = 0.0;
  double residual = 0.0;         // |<a>(psi) - psi| at return
  int iterations = 0;

  double cutoff_weight() const {
    return amplitudes.empty() ? 0.0 : amplitudes.back() * amplitudes.back();
  }
  // Filling of the Fock state a Mott point sits in.
  int filling() const { return int(std::lround(mean_occupation)); }
};

struct GutzwillerOptions {
  // n_max; values < 0 pick a cutoff automatically and grow it until the top
  // occupation carries less than 1e-12 weight.
  int cutoff = -1;
  double damping = 0.5;
  int max_iterations = 10'000;
  int restarts = 3;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
};

namespace detail {

struct LocalSolution {
  Eigen::VectorXd f;
  double site_energy;  // lowest eigenvalue of h(psi)
  double expect_a;
  double occupation;
};

// Ground state of h = -zJ psi (a + a^dag) + n(n-1)/2 - mu n on 0..n_max.
inline LocalSolution solve_site(double mu, double zj, double psi, int n_max) {
  const int dim = n_max + 1;
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd off(std::max(dim - 1, 0));
  for (int n = 0; n < dim; ++n) diag(n) = 0.5 * n * (n - 1) - mu * n;
  for (int n = 0; n + 1 < dim; ++n) off(n) = -zj * psi * std::sqrt(n + 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  LocalSolution out;
  out.f = es.eigenvectors().col(0);
  if (out.f.sum() < 0.0) out.f = -out.f;
  out.site_energy = es.eigenvalues()(0);
  out.expect_a = 0.0;
  out.occupation = 0.0;
  for (int n = 0; n < dim; ++n) {
    out.occupation += n * out.f(n) * out.f(n);
    if (n > 0) out.expect_a += std::sqrt(double(n)) * out.f(n - 1) * out.f(n);
  }
  return out;
}

struct FixedPoint {
  double psi;
  double energy;
  double residual;
  int iterations;
  bool converged;
};

// Damped iteration psi <- (1 - d) psi + d <a>(psi), with an Aitken
// extrapolation every third step.
inline FixedPoint iterate(double mu, double zj, double start, int n_max,
                          const GutzwillerOptions &opt) {
  double psi = start;
  double history[3] = {0, 0, 0};
  int filled = 0;
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    const auto local = solve_site(mu, zj, psi, n_max);
    residual = std::abs(local.expect_a - psi);
    if (residual < opt.tolerance) {
      return {psi, local.site_energy + zj * psi * psi, residual, it, true};
    }
    psi = (1.0 - opt.damping) * psi + opt.damping * local.expect_a;
    history[filled++] = psi;
    if (filled == 3) {
      const double d = history[2] - 2.0 * history[1] + history[0];
      if (std::abs(d) > 1e-300) {
        const double step = history[2] - history[1];
        const double accelerated = history[2] - step * step / d;
        // An overshoot to psi <= 0 would land on the trivial fixed point.
        if (std::isfinite(accelerated) && accelerated > 0.0) psi = accelerated;
      }
      filled = 0;
    }
  }
  return {psi, 0.0, residual, opt.max_iterations, false};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline GutzwillerState solve_with_cutoff(double mu, double zj, int n_max,
                                         const GutzwillerOptions &opt) {
  std::vector<double> starts{0.0};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const double scale = std::sqrt(std::max(mu, 0.0) + 1.0);
  for (int r = 0; r < opt.restarts; ++r) {
    starts.push_back(scale * (1.0 - dist(rng)));  // in (0, scale]
  }

  std::optional<FixedPoint> best;
  for (double s : starts) {
    const auto fp = iterate(mu, zj, s, n_max, opt);
    if (!fp.converged) {
      throw Error(ErrorKind::convergence,
                  "gutzwiller_ground: no convergence at mu/U=" +
                      std::to_string(mu) + ", zJ/U=" + std::to_string(zj) +
                      ", last residual " + std::to_string(fp.residual));
    }
    if (!best || fp.energy < best->energy) best = fp;
  }

  const auto local = solve_site(mu, zj, best->psi, n_max);
  GutzwillerState out;
  out.amplitudes.assign(local.f.data(), local.f.data() + local.f.size());
  out.order_parameter = best->psi;
  out.cutoff = n_max;
  out.energy = best->energy;
  out.mean_occupation = local.occupation;
  out.residual = best->residual;
  out.iterations = best->iterations;
  return out;
}

}  // namespace detail

// Mean-field energy per site, E(psi) = e_0(h(psi)) + zJ psi^2. Its stationary
// points in psi are exactly the self-consistent solutions psi = <a>.
inline double meanfield_energy(double mu_over_u, double zj_over_u, double psi,
                               int n_max) {
  return detail::solve_site(mu_over_u, zj_over_u, psi, n_max).site_energy +
         zj_over_u * psi * psi;
}

// Self-consistent single-site ground state. The trivial start psi = 0 (always
// a fixed point) competes with `restarts` random starts; the converged fixed
// point of lowest energy wins.
inline GutzwillerState gutzwiller_ground(double mu_over_u, double zj_over_u,
                                         const GutzwillerOptions &opt = {}) {
  require(std::isfinite(mu_over_u) && std::isfinite(zj_over_u),
          "gutzwiller_ground: parameters must be finite");
  require(zj_over_u >= 0.0, "gutzwiller_ground: zJ/U must be >= 0");
  require(opt.damping > 0.0 && opt.damping <= 1.0,
          "gutzwiller_ground: damping must be in (0, 1]");
  const int min_cutoff = int(std::ceil(std::max(mu_over_u, 0.0))) + 3;
  if (opt.cutoff >= 0) {
    require(opt.cutoff >= min_cutoff,
            "gutzwiller_ground: n_max must be >= ceil(mu/U) + 3 = " +
                std::to_string(min_cutoff));
    return detail::solve_with_cutoff(mu_over_u, zj_over_u, opt.cutoff, opt);
  }
  int n_max = std::max(min_cutoff + 3, 8);
  for (;;) {
    auto state = detail::solve_with_cutoff(mu_over_u, zj_over_u, n_max, opt);
    if (state.cutoff_weight() <= 1e-12 || n_max >= 256) return state;
    n_max += 4;
  }
}

struct PhasePoint {
  double mu_over_u = 0.0;
  double zj_over_u = 0.0;
  double abs_psi = 0.0;
  int filling = 0;

  bool superfluid() const { return abs_psi >= kOrderParameterTolerance; }
  std::string label() const {
    return superfluid() ? std::string("SF")
                        : "MI(" + std::to_string(filling) + ")";
  }
};

struct PhaseGrid {
  double mu_min = 0.0;
  double mu_max = 3.0;
  int mu_points = 200;
  double zj_max = 0.25;
  int zj_points = 200;
  int cutoff = -1;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  double mu_at(int i) const {
    return mu_points == 1 ? mu_min
                          : mu_min + (mu_max - mu_min) * i / (mu_points - 1);
  }
  double zj_at(int j) const {
    return zj_points == 1 ? 0.0 : zj_max * j / (zj_points - 1);
  }
  double zj_step() const { return zj_points > 1 ? zj_max / (zj_points - 1) : 0.0; }
};

struct PhaseDiagram {
  PhaseGrid grid;
  // Row-major in mu: points[i * zj_points + j].
  std::vector<PhasePoint> points;

  const PhasePoint &at(int mu_index, int zj_index) const {
    return points[std::size_t(mu_index) * grid.zj_points + zj_index];
  }
};

// Seed of grid point i, derived from the run seed.
inline std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
  return detail::splitmix64(seed ^ detail::splitmix64(index));
}

inline PhaseDiagram phase_diagram(const PhaseGrid &grid) {
  require(grid.mu_points >= 1 && grid.zj_points >= 1,
          "phase_diagram: grid needs at least one point per axis");
  require(std::isfinite(grid.mu_min) && std::isfinite(grid.mu_max) &&
              std::isfinite(grid.zj_max),
          "phase_diagram: grid bounds must be finite");
  require(grid.mu_max >= grid.mu_min && grid.zj_max >= 0.0,
          "phase_diagram: empty grid range");
  PhaseDiagram out;
  out.grid = grid;
  out.points.resize(std::size_t(grid.mu_points) * grid.zj_points);
  numerics::parallel_for(out.points.size(), grid.threads, [&](std::size_t k) {
    const int i = int(k / grid.zj_points);
    const int j = int(k % grid.zj_points);
    GutzwillerOptions opt;
    opt.cutoff = grid.cutoff;
    opt.seed = point_seed(grid.seed, k);
    const double mu = grid.mu_at(i);
    const double zj = grid.zj_at(j);
    const auto state = gutzwiller_ground(mu, zj, opt);
    out.points[k] = {mu, zj, std::abs(state.order_parameter), state.filling()};
  });
  return out;
}

struct BoundaryEstimate {
  double mu_over_u = 0.0;
  int first_superfluid = -1;  // zJ index; -1 if the row never turns SF
  double zj_over_u = std::numeric_limits<double>::quiet_NaN();
};

// MI/SF contour per mu row. The crossing is refined inside the first SF cell
// by extrapolating |psi|^2, which is linear in zJ near a second-order
// boundary.
inline std::vector<BoundaryEstimate> extract_boundary(const PhaseDiagram &pd) {
  const auto &g = pd.grid;
  std::vector<BoundaryEstimate> out;
  for (int i = 0; i < g.mu_points; ++i) {
    BoundaryEstimate b;
    b.mu_over_u = g.mu_at(i);
    for (int j = 0; j < g.zj_points; ++j) {
      if (pd.at(i, j).superfluid()) {
        b.first_superfluid = j;
        break;
      }
    }
    const int j = b.first_superfluid;
    if (j > 0) {
      const double z0 = g.zj_at(j), p0 = std::pow(pd.at(i, j).abs_psi, 2);
      double estimate = z0 - 0.5 * g.zj_step();
      if (j + 1 < g.zj_points && pd.at(i, j + 1).superfluid()) {
        const double z1 = g.zj_at(j + 1);
        const double p1 = std::pow(pd.at(i, j + 1).abs_psi, 2);
        if (p1 > p0) estimate = z0 - p0 * (z1 - z0) / (p1 - p0);
      }
      b.zj_over_u = std::clamp(estimate, g.zj_at(j - 1), z0);
    } else if (j == 0) {
      b.zj_over_u = 0.0;
    }
    out.push_back(b);
  }
  return out;
}

// Largest contour value of zJ/U among rows inside lobe n.
inline double contour_tip(const PhaseDiagram &pd, int filling) {
  double tip = std::numeric_limits<double>::quiet_NaN();
  for (const auto &b : extract_boundary(pd)) {
    if (b.mu_over_u > filling - 1 && b.mu_over_u < filling &&
        !std::isnan(b.zj_over_u)) {
      tip = std::isnan(tip) ? b.zj_over_u : std::max(tip, b.zj_over_u);
    }
  }
  return tip;
}

}  // namespace optlattice::meanfield

#endif  // OPTLATTICE_MEANFIELD_HPP
