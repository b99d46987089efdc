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

#ifndef OPTLATTICE_CORE_EIGENSOLVE_HPP
#define OPTLATTICE_CORE_EIGENSOLVE_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "optlattice/core/hermitian_matrix.hpp"

namespace optlattice::numerics {

// The k lowest eigenpairs in ascending order. Within a degenerate
// eigenspace the vectors are some orthonormal basis of that space.
struct Eigenpairs {
  std::vector<double> values;
  std::vector<StateVector> vectors;
};

struct LanczosOptions {
  Index krylov_dimension = 160;
  int max_restarts = 400;
  // Locking threshold on ||Hx - theta x|| relative to the spectral radius
  // estimate.
  double tolerance = 1e-11;
  std::uint64_t seed = 0x5eed1a2c05;
};

namespace detail {

inline Eigenpairs dense_lowest(const DenseMatrix &m, Index k, bool real) {
  Eigenpairs out;
  if (real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::convergence, "dense eigensolver failed");
    }
    for (Index i = 0; i < k; ++i) {
      out.values.push_back(es.eigenvalues()(i));
      out.vectors.emplace_back(es.eigenvectors().col(i).cast<cplx>());
    }
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::convergence, "dense eigensolver failed");
    }
    for (Index i = 0; i < k; ++i) {
      out.values.push_back(es.eigenvalues()(i));
      out.vectors.emplace_back(es.eigenvectors().col(i));
    }
  }
  return out;
}

inline void orthogonalize(StateVector &w, const std::vector<StateVector> &basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto &q : basis) w -= q * q.dot(w);
  }
}

}  // namespace detail

// Lowest k eigenpairs of the Hermitian operator `apply(in, out)` (out = H in)
// by explicitly restarted Lanczos with full reorthogonalization. Converged
// vectors are locked one at a time and later starts are kept orthogonal to
// them, so degenerate eigenspaces are resolved in full.
template <class Apply>
Eigenpairs lanczos_lowest(Apply &&apply, Index dimension, Index k,
                          const LanczosOptions &opt = {}) {
  require(dimension >= 1, "lanczos: dimension must be >= 1");
  require(k >= 1 && k <= dimension, "lanczos: k out of range");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<StateVector> locked;
  std::vector<double> locked_values;
  double scale = 0.0;
  StateVector w(dimension);
  StateVector hv(dimension);

  while (Index(locked.size()) < k) {
    StateVector v(dimension);
    for (Index i = 0; i < dimension; ++i) v(i) = gauss(rng);
    detail::orthogonalize(v, locked);
    v.normalize();

    const Index room = dimension - Index(locked.size());
    const Index m_max = std::max<Index>(1, std::min(opt.krylov_dimension, room));
    DenseMatrix basis(dimension, m_max);
    Eigen::VectorXd alpha(m_max);
    Eigen::VectorXd beta(m_max);

    bool converged = false;
    double last_residual = 0.0;
    for (int restart = 0; restart <= opt.max_restarts && !converged; ++restart) {
      basis.col(0) = v;
      Index m = 0;
      bool invariant = false;
      for (Index j = 0; j < m_max; ++j) {
        apply(basis.col(j).eval(), w);
        alpha(j) = basis.col(j).dot(w).real();
        m = j + 1;
        // Full reorthogonalization against the Krylov basis and locked set.
        for (int pass = 0; pass < 2; ++pass) {
          const StateVector coeff = basis.leftCols(j + 1).adjoint() * w;
          w.noalias() -= basis.leftCols(j + 1) * coeff;
          for (const auto &q : locked) w -= q * q.dot(w);
        }
        const double b = w.norm();
        scale = std::max(scale, std::abs(alpha(j)) + b);
        if (j + 1 == m_max) break;
        if (b <= 1e-13 * std::max(scale, 1e-300)) {
          invariant = true;
          break;
        }
        beta(j) = b;
        basis.col(j + 1) = w / b;
      }

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(m), beta.head(std::max<Index>(m - 1, 0)),
                                 Eigen::ComputeEigenvectors);
      const Eigen::VectorXd &theta = tri.eigenvalues();
      scale = std::max({scale, std::abs(theta(0)), std::abs(theta(m - 1))});

      StateVector x = basis.leftCols(m) * tri.eigenvectors().col(0).cast<cplx>();
      detail::orthogonalize(x, locked);
      x.normalize();
      apply(x, hv);
      const double rayleigh = x.dot(hv).real();
      last_residual = (hv - rayleigh * x).norm();
      if (last_residual <= opt.tolerance * std::max(scale, 1e-300) || invariant) {
        locked.push_back(x);
        locked_values.push_back(rayleigh);
        converged = true;
      } else {
        v = x;
      }
    }
    if (!converged) {
      throw Error(ErrorKind::convergence,
                  "lanczos: no convergence, last residual " +
                      std::to_string(last_residual));
    }
  }

  // Rayleigh-Ritz on the locked subspace to straighten out near-degenerate
  // pairs and order the result.
  const Index n = Index(locked.size());
  DenseMatrix q(dimension, n);
  for (Index i = 0; i < n; ++i) q.col(i) = locked[i];
  DenseMatrix hq(dimension, n);
  for (Index i = 0; i < n; ++i) {
    apply(q.col(i).eval(), hv);
    hq.col(i) = hv;
  }
  DenseMatrix small = q.adjoint() * hq;
  small = 0.5 * (small + small.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(small);
  Eigenpairs out;
  for (Index i = 0; i < n; ++i) {
    out.values.push_back(es.eigenvalues()(i));
    StateVector vec = q * es.eigenvectors().col(i);
    vec.normalize();
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

// k lowest eigenpairs of h. Dense matrices up to kDenseDimension use a direct
// solver; larger ones go through Lanczos.
inline Eigenpairs eigensolve(const HermitianMatrix &h, Index k,
                             const LanczosOptions &opt = {}) {
  const Index dim = h.dimension();
  if (k < 1 || k > dim) {
    throw Error(ErrorKind::invalid_argument,
                "eigensolve: k = " + std::to_string(k) +
                    " outside [1, " + std::to_string(dim) + "]");
  }
  if (dim <= kDenseDimension) {
    return detail::dense_lowest(h.to_dense(), k, h.is_real());
  }
  return lanczos_lowest(
      [&h](const StateVector &in, StateVector &out) { h.apply(in, out); }, dim,
      k, opt);
}

// Full spectrum in ascending order (dense path only).
inline std::vector<double> eigenvalues(const HermitianMatrix &h) {
  const DenseMatrix m = h.to_dense();
  std::vector<double> out;
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(),
                                                     Eigen::EigenvaluesOnly);
    out.assign(es.eigenvalues().data(),
               es.eigenvalues().data() + es.eigenvalues().size());
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
    out.assign(es.eigenvalues().data(),
               es.eigenvalues().data() + es.eigenvalues().size());
  }
  return out;
}

}  // namespace optlattice::numerics

#endif  // OPTLATTICE_CORE_EIGENSOLVE_HPP
