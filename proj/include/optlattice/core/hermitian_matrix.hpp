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

#ifndef OPTLATTICE_CORE_HERMITIAN_MATRIX_HPP
#define OPTLATTICE_CORE_HERMITIAN_MATRIX_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "optlattice/error.hpp"

namespace optlattice::numerics {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<cplx>;
using Index = Eigen::Index;

// Largest dimension routed to the dense eigensolver.
inline constexpr Index kDenseDimension = 512;

inline constexpr double kHermitianTolerance = 1e-12;

// Immutable Hermitian operator, stored either dense or as a compressed
// row-major sparse matrix built from coordinate triplets.
class HermitianMatrix {
 public:
  static HermitianMatrix from_dense(DenseMatrix m,
                                    double tol = kHermitianTolerance) {
    require(m.rows() >= 1 && m.rows() == m.cols(),
            "HermitianMatrix: matrix must be square with dimension >= 1");
    require(m.allFinite(), "HermitianMatrix: non-finite entry");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) {
      throw Error(ErrorKind::invalid_argument,
                  "HermitianMatrix: not Hermitian (max |H - H^dagger| = " +
                      std::to_string(asym) + ")");
    }
    return HermitianMatrix(std::move(m));
  }

  // Duplicate coordinates are summed. Storage is sorted by (row, col).
  static HermitianMatrix from_triplets(Index dimension,
                                       const std::vector<Triplet> &entries,
                                       double tol = kHermitianTolerance) {
    require(dimension >= 1, "HermitianMatrix: dimension must be >= 1");
    for (const auto &t : entries) {
      require(t.row() >= 0 && t.row() < dimension && t.col() >= 0 &&
                  t.col() < dimension,
              "HermitianMatrix: triplet index out of range");
      require(std::isfinite(t.value().real()) &&
                  std::isfinite(t.value().imag()),
              "HermitianMatrix: non-finite entry");
    }
    SparseMatrix s(dimension, dimension);
    s.setFromTriplets(entries.begin(), entries.end());
    s.makeCompressed();
    SparseMatrix adj = s.adjoint();
    SparseMatrix diff = s - adj;
    double asym = 0.0;
    double scale = 1.0;
    for (Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
        asym = std::max(asym, std::abs(it.value()));
      }
    }
    for (Index k = 0; k < s.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
        scale = std::max(scale, std::abs(it.value()));
      }
    }
    if (asym > tol * scale) {
      throw Error(ErrorKind::invalid_argument,
                  "HermitianMatrix: not Hermitian (max |H - H^dagger| = " +
                      std::to_string(asym) + ")");
    }
    return HermitianMatrix(std::move(s));
  }

  Index dimension() const {
    return std::visit([](const auto &m) { return Index(m.rows()); }, storage_);
  }

  bool is_sparse() const {
    return std::holds_alternative<SparseMatrix>(storage_);
  }

  const DenseMatrix *dense() const { return std::get_if<DenseMatrix>(&storage_); }
  const SparseMatrix *sparse() const {
    return std::get_if<SparseMatrix>(&storage_);
  }

  // out = H * in. `out` is resized as needed and must not alias `in`.
  void apply(const StateVector &in, StateVector &out) const {
    std::visit([&](const auto &m) { out.noalias() = m * in; }, storage_);
  }

  StateVector operator*(const StateVector &v) const {
    StateVector out(dimension());
    apply(v, out);
    return out;
  }

  DenseMatrix to_dense() const {
    if (const auto *d = dense()) return *d;
    return DenseMatrix(*sparse());
  }

  cplx entry(Index i, Index j) const {
    if (const auto *d = dense()) return (*d)(i, j);
    return sparse()->coeff(i, j);
  }

  // Maximum absolute row sum; an upper bound on the spectral norm.
  double norm_bound() const {
    if (const auto *d = dense()) {
      return d->cwiseAbs().rowwise().sum().maxCoeff();
    }
    const auto &s = *sparse();
    double best = 0.0;
    for (Index k = 0; k < s.outerSize(); ++k) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
        row += std::abs(it.value());
      }
      best = std::max(best, row);
    }
    return best;
  }

  // True if every entry has zero imaginary part.
  bool is_real() const {
    if (const auto *d = dense()) return d->imag().isZero(0.0);
    const auto &s = *sparse();
    for (Index k = 0; k < s.nonZeros(); ++k) {
      if (s.valuePtr()[k].imag() != 0.0) return false;
    }
    return true;
  }

 private:
  explicit HermitianMatrix(DenseMatrix m) : storage_(std::move(m)) {}
  explicit HermitianMatrix(SparseMatrix m) : storage_(std::move(m)) {}

  std::variant<DenseMatrix, SparseMatrix> storage_;
};

inline bool is_normalized(const StateVector &v, double tol = 1e-9) {
  return std::abs(v.squaredNorm() - 1.0) <= tol;
}

}  // namespace optlattice::numerics

#endif  // OPTLATTICE_CORE_HERMITIAN_MATRIX_HPP
