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

#ifndef OPTLATTICE_HOFSTADTER_HPP
#define OPTLATTICE_HOFSTADTER_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "optlattice/core/hermitian_matrix.hpp"
#include "optlattice/core/parallel.hpp"

// Square-lattice tight binding at rational flux alpha = p/q per plaquette,
// Landau gauge. Energies are in units of the hopping modulus eps0.
namespace optlattice::hofstadter {

using numerics::cplx;

inline void check_fraction(int p, int q) {
  require(q >= 1, "flux: q must be >= 1");
  require(p >= 0 && p <= q, "flux: p must lie in [0, q]");
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorKind::invalid_argument,
                "flux: " + std::to_string(p) + "/" + std::to_string(q) +
                    " is not in lowest terms");
  }
}

// q x q magnetic Bloch matrix: diagonal 2 cos(ky + 2 pi alpha m), unit
// nearest-neighbour entries, and the wrap-around pair e^{-+ i q kx} closing the
// magnetic unit cell. The canonical zone is kx in [0, 2pi/q), ky in [0, 2pi).
inline numerics::DenseMatrix harper_dense(int p, int q, double kx, double ky) {
  check_fraction(p, q);
  require(std::isfinite(kx) && std::isfinite(ky),
          "harper_matrix: momenta must be finite");
  const double alpha = double(p) / q;
  numerics::DenseMatrix h = numerics::DenseMatrix::Zero(q, q);
  for (int m = 0; m < q; ++m) {
    h(m, m) = 2.0 * std::cos(ky + 2.0 * std::numbers::pi * alpha * m);
  }
  for (int m = 0; m + 1 < q; ++m) {
    h(m, m + 1) += 1.0;
    h(m + 1, m) += 1.0;
  }
  const cplx corner = std::polar(1.0, q * kx);
  h(q - 1, 0) += corner;
  h(0, q - 1) += std::conj(corner);
  return h;
}

inline numerics::HermitianMatrix harper_matrix(int p, int q, double kx, double ky) {
  return numerics::HermitianMatrix::from_dense(harper_dense(p, q, kx, ky));
}

// Physical energies -eigenvalues, ascending.
inline std::vector<double> harper_energies(int p, int q, double kx, double ky) {
  Eigen::SelfAdjointEigenSolver<numerics::DenseMatrix> es(
      harper_dense(p, q, kx, ky), Eigen::EigenvaluesOnly);
  std::vector<double> e(q);
  for (int i = 0; i < q; ++i) e[i] = -es.eigenvalues()(q - 1 - i);
  return e;
}

struct FluxSpectrum {
  int p = 0;
  int q = 1;
  int resolution = 0;
  // q ascending energies per k point, k points ordered kx index then ky index.
  std::vector<double> energies;

  double alpha() const { return double(p) / q; }
  double kx(int i) const { return 2.0 * std::numbers::pi / q * i / resolution; }
  double ky(int j) const { return 2.0 * std::numbers::pi * j / resolution; }
  double level(int i, int j, int band) const {
    return energies[(std::size_t(i) * resolution + j) * q + band];
  }
  std::vector<double> sorted() const {
    auto s = energies;
    std::sort(s.begin(), s.end());
    return s;
  }
};

inline FluxSpectrum flux_spectrum(int p, int q, int resolution) {
  check_fraction(p, q);
  require(resolution >= 4, "flux_spectrum: resolution must be >= 4");
  FluxSpectrum s{p, q, resolution, {}};
  s.energies.reserve(std::size_t(resolution) * resolution * q);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const auto e = harper_energies(p, q, s.kx(i), s.ky(j));
      s.energies.insert(s.energies.end(), e.begin(), e.end());
    }
  }
  return s;
}

// Reduced fractions p/q with 1 <= q <= q_max and 0 <= p <= q, ordered by q
// then p. Only q = 1 contributes alpha = 0 and alpha = 1.
inline std::vector<std::pair<int, int>> reduced_fractions(int q_max) {
  require(q_max >= 1, "reduced_fractions: q_max must be >= 1");
  std::vector<std::pair<int, int>> out;
  for (int q = 1; q <= q_max; ++q) {
    for (int p = 0; p <= q; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

inline std::vector<FluxSpectrum> butterfly(int q_max, int resolution,
                                           unsigned threads = 1) {
  require(resolution >= 4, "butterfly: resolution must be >= 4");
  const auto fractions = reduced_fractions(q_max);
  std::vector<FluxSpectrum> out(fractions.size());
  numerics::parallel_for(fractions.size(), threads, [&](std::size_t k) {
    out[k] = flux_spectrum(fractions[k].first, fractions[k].second, resolution);
  });
  return out;
}

struct SpectralGap {
  double lower = 0.0;  // top of the band below
  double upper = 0.0;  // bottom of the band above
  double width() const { return upper - lower; }
};

// Gaps between consecutive bands, each band taken as the range of its level
// over the k grid. Overlapping bands give no gap.
inline std::vector<SpectralGap> spectral_gaps(const FluxSpectrum &s,
                                              double min_width = 1e-9) {
  std::vector<double> lo(s.q, 1e300), hi(s.q, -1e300);
  const std::size_t points = std::size_t(s.resolution) * s.resolution;
  for (std::size_t k = 0; k < points; ++k) {
    for (int b = 0; b < s.q; ++b) {
      lo[b] = std::min(lo[b], s.energies[k * s.q + b]);
      hi[b] = std::max(hi[b], s.energies[k * s.q + b]);
    }
  }
  std::vector<SpectralGap> gaps;
  double top = hi[0];
  for (int b = 1; b < s.q; ++b) {
    if (lo[b] - top > min_width) gaps.push_back({top, lo[b]});
    top = std::max(top, hi[b]);
  }
  return gaps;
}

}  // namespace optlattice::hofstadter

#endif  // OPTLATTICE_HOFSTADTER_HPP
