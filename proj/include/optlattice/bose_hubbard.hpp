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

#ifndef OPTLATTICE_BOSE_HUBBARD_HPP
#define OPTLATTICE_BOSE_HUBBARD_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "optlattice/core/eigensolve.hpp"
#include "optlattice/core/hermitian_matrix.hpp"
#include "optlattice/core/parallel.hpp"
#include "optlattice/fock_basis.hpp"

namespace optlattice::bh {

using numerics::cplx;
using numerics::StateVector;
using CorrelationMatrix = Eigen::MatrixXcd;

enum class Boundary { open, periodic };

// Energy gap below which the two lowest levels are flagged as degenerate.
inline constexpr double kDegeneracyThreshold = 1e-10;

// H = -J sum_<l,m> (a_l^dag a_m + h.c.) + U/2 sum_l n_l (n_l - 1) - mu sum_l n_l
struct BHModel {
  double hopping = 1.0;
  double interaction = 0.0;
  double chemical_potential = 0.0;
  int sites = 1;
  // Undirected bonds, each listed once.
  std::vector<std::pair<int, int>> edges;
  Boundary boundary = Boundary::periodic;
  int dimensionality = 1;

  // 1D chain or ring. A two-site ring has a single bond.
  static BHModel chain(int sites, Boundary boundary, double hopping,
                       double interaction, double chemical_potential = 0.0) {
    require(sites >= 1, "BHModel::chain: sites must be >= 1");
    BHModel m;
    m.hopping = hopping;
    m.interaction = interaction;
    m.chemical_potential = chemical_potential;
    m.sites = sites;
    m.boundary = boundary;
    for (int l = 0; l + 1 < sites; ++l) m.edges.emplace_back(l, l + 1);
    if (boundary == Boundary::periodic && sites > 2) {
      m.edges.emplace_back(0, sites - 1);
    }
    return m;
  }

  int coordination() const { return 2 * dimensionality; }

  void validate() const {
    require(sites >= 1, "BHModel: sites must be >= 1");
    require(hopping >= 0.0, "BHModel: hopping J must be >= 0");
    require(std::isfinite(hopping) && std::isfinite(interaction) &&
                std::isfinite(chemical_potential),
            "BHModel: parameters must be finite");
    std::set<std::pair<int, int>> seen;
    for (auto [l, m] : edges) {
      require(l >= 0 && l < sites && m >= 0 && m < sites,
              "BHModel: edge site index out of range");
      require(l != m, "BHModel: self-loop edge");
      require(seen.insert(std::minmax(l, m)).second,
              "BHModel: duplicate edge");
    }
  }
};

inline double diagonal_energy(const BHModel &model, const fock::FockState &s) {
  double e = 0.0;
  for (int n : s.occupations) {
    e += 0.5 * model.interaction * n * (n - 1) - model.chemical_potential * n;
  }
  return e;
}

inline numerics::HermitianMatrix build_hamiltonian(const BHModel &model,
                                                   const fock::FockBasis &basis) {
  model.validate();
  if (basis.sites() != model.sites) {
    throw Error(ErrorKind::invalid_argument,
                "build_hamiltonian: basis has " + std::to_string(basis.sites()) +
                    " sites but geometry has " + std::to_string(model.sites));
  }
  std::vector<numerics::Triplet> entries;
  entries.reserve(basis.size() * (1 + 2 * model.edges.size()));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto &s = basis.state(col);
    entries.emplace_back(col, col, diagonal_energy(model, s));
    if (model.hopping == 0.0) continue;
    for (auto [l, m] : model.edges) {
      for (auto [to, from] : {std::pair{l, m}, std::pair{m, l}}) {
        if (auto hop = fock::apply_hop(s, to, from)) {
          entries.emplace_back(basis.rank(hop->state), col,
                               -model.hopping * hop->amplitude);
        }
      }
    }
  }
  return numerics::HermitianMatrix::from_triplets(numerics::Index(basis.size()),
                                                  entries);
}

// rho_{l,m} = <a_l^dag a_m>.
inline CorrelationMatrix correlation_matrix(const fock::FockBasis &basis,
                                            const StateVector &psi) {
  require(psi.size() == numerics::Index(basis.size()),
          "correlation_matrix: state/basis size mismatch");
  const int M = basis.sites();
  CorrelationMatrix rho = CorrelationMatrix::Zero(M, M);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto &s = basis.state(i);
    const cplx amp = psi(numerics::Index(i));
    if (amp == cplx(0.0)) continue;
    for (int l = 0; l < M; ++l) {
      rho(l, l) += std::norm(amp) * double(s.occupations[l]);
      for (int m = 0; m < M; ++m) {
        if (m == l) continue;
        // <psi| a_l^dag a_m |s> picks up conj(psi(target)).
        if (auto hop = fock::apply_hop(s, l, m)) {
          rho(l, m) +=
              std::conj(psi(numerics::Index(basis.rank(hop->state)))) * amp *
              hop->amplitude;
        }
      }
    }
  }
  return rho;
}

// (Delta n_l)^2 = <n_l^2> - <n_l>^2 per site.
inline std::vector<double> number_fluctuations(const fock::FockBasis &basis,
                                               const StateVector &psi) {
  const int M = basis.sites();
  std::vector<double> mean(M, 0.0), second(M, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double w = std::norm(psi(numerics::Index(i)));
    const auto &s = basis.state(i);
    for (int l = 0; l < M; ++l) {
      mean[l] += w * s.occupations[l];
      second[l] += w * double(s.occupations[l]) * s.occupations[l];
    }
  }
  std::vector<double> out(M);
  for (int l = 0; l < M; ++l) out[l] = second[l] - mean[l] * mean[l];
  return out;
}

// <sum_l n_l> in psi.
inline double total_number(const fock::FockBasis &basis, const StateVector &psi) {
  double n = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    n += std::norm(psi(numerics::Index(i))) * basis.state(i).particles();
  }
  return n;
}

// <U/2 sum_l n_l (n_l - 1)> in psi, summed over all sites.
inline double interaction_energy(const fock::FockBasis &basis,
                                 const StateVector &psi, double interaction) {
  double e = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double site_sum = 0.0;
    for (int n : basis.state(i).occupations) site_sum += n * (n - 1);
    e += std::norm(psi(numerics::Index(i))) * 0.5 * interaction * site_sum;
  }
  return e;
}

struct GroundObservables {
  double energy = 0.0;
  double first_excited = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  StateVector ground_state;
  CorrelationMatrix correlations;
  std::vector<double> fluctuations;
};

inline GroundObservables ground_observables(const BHModel &model,
                                            const fock::FockBasis &basis) {
  const auto h = build_hamiltonian(model, basis);
  const numerics::Index k = std::min<numerics::Index>(2, h.dimension());
  const auto pairs = numerics::eigensolve(h, k);
  GroundObservables out;
  out.energy = pairs.values[0];
  out.first_excited = k > 1 ? pairs.values[1] : pairs.values[0];
  out.gap = out.first_excited - out.energy;
  out.degenerate = k > 1 && out.gap < kDegeneracyThreshold;
  out.ground_state = pairs.vectors[0];
  out.correlations = correlation_matrix(basis, out.ground_state);
  out.fluctuations = number_fluctuations(basis, out.ground_state);
  return out;
}

struct QuasimomentumDistribution {
  std::vector<double> k;       // grid on [-pi, pi)
  std::vector<double> weight;  // S(k)
  double dk = 0.0;
};

inline void check_correlations(const CorrelationMatrix &rho) {
  require(rho.rows() >= 1 && rho.rows() == rho.cols(),
          "quasimomentum_distribution: rho must be square");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= 1e-10 * std::max(1.0, rho.cwiseAbs().maxCoeff()),
          "quasimomentum_distribution: rho is not Hermitian");
}

// S(k) = (1/M) sum_{l,m} exp(i k (l - m)) rho_{l,m}, lattice constant 1.
inline double quasimomentum_weight(const CorrelationMatrix &rho, double k) {
  const auto M = rho.rows();
  cplx sum = 0.0;
  for (numerics::Index l = 0; l < M; ++l) {
    for (numerics::Index m = 0; m < M; ++m) {
      sum += std::polar(1.0, k * double(l - m)) * rho(l, m);
    }
  }
  return sum.real() / double(M);
}

// S(k) on `points` equally spaced momenta starting at -pi. With points >= M
// the sum rule sum_k S(k) dk M / 2pi = N holds exactly.
inline QuasimomentumDistribution quasimomentum_distribution(
    const CorrelationMatrix &rho, int points) {
  check_correlations(rho);
  require(points >= rho.rows(),
          "quasimomentum_distribution: need at least M momentum points");
  QuasimomentumDistribution out;
  out.dk = 2.0 * std::numbers::pi / points;
  for (int j = 0; j < points; ++j) {
    const double k = -std::numbers::pi + j * out.dk;
    out.k.push_back(k);
    // rho is PSD, so S(k) >= 0 up to rounding.
    out.weight.push_back(std::max(0.0, quasimomentum_weight(rho, k)));
  }
  return out;
}

struct CrossoverRow {
  double u_over_j = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double peak_fraction = 0.0;  // S(0) / N
  double site0_fluctuation = 0.0;
  bool degenerate = false;
};

// Ground-state diagnostics along a U/J grid. J comes from the template; the
// template's U is ignored.
inline std::vector<CrossoverRow> crossover_scan(
    const BHModel &model_template, const std::vector<double> &u_over_j,
    const fock::FockBasis &basis, unsigned threads = 1) {
  require(model_template.hopping > 0.0, "crossover_scan: J must be > 0");
  for (double r : u_over_j) {
    require(std::isfinite(r), "crossover_scan: non-finite U/J value");
  }
  require(basis.particles() > 0, "crossover_scan: N must be > 0");
  std::vector<CrossoverRow> rows(u_over_j.size());
  numerics::parallel_for(u_over_j.size(), threads, [&](std::size_t i) {
    BHModel m = model_template;
    m.interaction = u_over_j[i] * m.hopping;
    const auto obs = ground_observables(m, basis);
    CrossoverRow row;
    row.u_over_j = u_over_j[i];
    row.energy = obs.energy;
    row.gap = obs.gap;
    row.degenerate = obs.degenerate;
    row.peak_fraction =
        quasimomentum_weight(obs.correlations, 0.0) / basis.particles();
    row.site0_fluctuation = obs.fluctuations[0];
    rows[i] = row;
  });
  return rows;
}

}  // namespace optlattice::bh

#endif  // OPTLATTICE_BOSE_HUBBARD_HPP
