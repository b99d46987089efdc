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

#ifndef OPTLATTICE_SPIN_CHAIN_HPP
#define OPTLATTICE_SPIN_CHAIN_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "optlattice/core/eigensolve.hpp"
#include "optlattice/core/evolve.hpp"
#include "optlattice/core/hermitian_matrix.hpp"

// Qubit j is bit j of the basis index. Bit value 0 is |up_z> (= |a>), 1 is
// |down_z> (= |b>), so sigma_z has eigenvalue +1 on a cleared bit.
namespace optlattice::spin {

using numerics::cplx;
using numerics::Index;
using numerics::StateVector;

inline constexpr int kDefaultQubitCap = 20;
// Above this many qubits only the matrix-free operator is built.
inline constexpr int kSparseQubitLimit = 14;

enum class Boundary { open, periodic };

inline int qubit_count(const StateVector &psi) {
  const auto n = psi.size();
  require(n >= 2 && (n & (n - 1)) == 0,
          "spin chain state size must be a power of two >= 2");
  return int(std::countr_zero(std::uint64_t(n)));
}

inline int bit(Index i, int q) { return int((i >> q) & 1); }

// H = B sum_j sigma_x^j + W sum_<j,j+1> sigma_z^j sigma_z^{j+1}.
struct IsingParams {
  int qubits = 2;
  double coupling = -1.0;  // W
  Boundary boundary = Boundary::open;
  int cap = kDefaultQubitCap;

  void validate() const {
    require(qubits >= 2, "IsingParams: N must be >= 2");
    require(std::isfinite(coupling), "IsingParams: W must be finite");
    if (qubits > cap) {
      throw Error(ErrorKind::capacity,
                  "IsingParams: N = " + std::to_string(qubits) +
                      " exceeds the qubit cap " + std::to_string(cap));
    }
  }

  std::vector<std::pair<int, int>> bonds() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j + 1 < qubits; ++j) out.emplace_back(j, j + 1);
    if (boundary == Boundary::periodic && qubits > 2) {
      out.emplace_back(qubits - 1, 0);
    }
    return out;
  }

  Index dimension() const { return Index(1) << qubits; }
};

// Matrix-free H at fixed field B.
class IsingOperator {
 public:
  IsingOperator(const IsingParams &p, double field) : qubits_(p.qubits), field_(field) {
    p.validate();
    require(std::isfinite(field), "IsingOperator: field must be finite");
    diagonal_.resize(p.dimension());
    const auto bonds = p.bonds();
    for (Index i = 0; i < p.dimension(); ++i) {
      double e = 0.0;
      for (auto [a, b] : bonds) e += bit(i, a) == bit(i, b) ? 1.0 : -1.0;
      diagonal_[i] = p.coupling * e;
    }
  }

  Index dimension() const { return Index(diagonal_.size()); }
  double field() const { return field_; }
  void set_field(double b) { field_ = b; }

  void apply(const StateVector &in, StateVector &out) const {
    const Index dim = dimension();
    out.resize(dim);
    for (Index i = 0; i < dim; ++i) {
      cplx acc = diagonal_[i] * in(i);
      if (field_ != 0.0) {
        cplx flips = 0.0;
        for (int q = 0; q < qubits_; ++q) flips += in(i ^ (Index(1) << q));
        acc += field_ * flips;
      }
      out(i) = acc;
    }
  }

  double expectation(const StateVector &psi) const {
    StateVector h;
    apply(psi, h);
    return psi.dot(h).real();
  }

 private:
  int qubits_;
  double field_;
  std::vector<double> diagonal_;
};

// Sparse H for N <= kSparseQubitLimit.
inline numerics::HermitianMatrix build_ising(const IsingParams &p, double field) {
  p.validate();
  if (p.qubits > kSparseQubitLimit) {
    throw Error(ErrorKind::capacity,
                "build_ising: N = " + std::to_string(p.qubits) +
                    " is above the sparse limit; use IsingOperator");
  }
  const IsingOperator op(p, field);
  std::vector<numerics::Triplet> entries;
  StateVector e = StateVector::Zero(p.dimension()), col;
  for (Index i = 0; i < p.dimension(); ++i) {
    e(i) = 1.0;
    op.apply(e, col);
    e(i) = 0.0;
    for (Index r = 0; r < p.dimension(); ++r) {
      if (col(r) != cplx(0.0)) entries.emplace_back(r, i, col(r));
    }
  }
  return numerics::HermitianMatrix::from_triplets(p.dimension(), entries);
}

inline numerics::Eigenpairs ising_lowest(const IsingParams &p, double field,
                                         Index k) {
  p.validate();
  if (p.dimension() <= numerics::kDenseDimension) {
    return numerics::eigensolve(build_ising(p, field), k);
  }
  const IsingOperator op(p, field);
  return numerics::lanczos_lowest(
      [&op](const StateVector &in, StateVector &out) { op.apply(in, out); },
      p.dimension(), k);
}

// prod_j sigma_x^j flips every bit.
inline StateVector apply_parity(const StateVector &psi) {
  const Index mask = psi.size() - 1;
  StateVector out(psi.size());
  for (Index i = 0; i < psi.size(); ++i) out(i) = psi(i ^ mask);
  return out;
}

// Sign of <psi| prod sigma_x |psi>; +1 for the even sector.
inline int parity_sector(const StateVector &psi) {
  return psi.dot(apply_parity(psi)).real() >= 0.0 ? 1 : -1;
}

// Population outside parity sector `sector`.
inline double parity_leak(const StateVector &psi, int sector) {
  return 0.25 * (psi - double(sector) * apply_parity(psi)).squaredNorm();
}

// Two lowest energies inside one parity sector, found by pushing the other
// sector up by a shift larger than the spectral width.
inline std::pair<double, double> sector_levels(const IsingParams &p, double field,
                                               int sector) {
  const IsingOperator op(p, field);
  const double shift =
      4.0 * (std::abs(field) * p.qubits + std::abs(p.coupling) * p.qubits) + 1.0;
  auto apply = [&](const StateVector &in, StateVector &out) {
    op.apply(in, out);
    out += 0.5 * shift * (in - double(sector) * apply_parity(in));
  };
  if (p.dimension() <= numerics::kDenseDimension) {
    numerics::DenseMatrix m(p.dimension(), p.dimension());
    StateVector e = StateVector::Zero(p.dimension()), col;
    for (Index i = 0; i < p.dimension(); ++i) {
      e(i) = 1.0;
      apply(e, col);
      e(i) = 0.0;
      m.col(i) = col;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(),
                                                     Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
  }
  const auto pairs = numerics::lanczos_lowest(apply, p.dimension(), 2);
  return {pairs.values[0], pairs.values[1]};
}

enum class PairKind { uniform, neel };

// Basis indices (alpha, beta) of the pair: |up up ...>, |down down ...> or
// |up down up ...>, |down up down ...>.
inline std::pair<Index, Index> pair_indices(int qubits, PairKind kind) {
  const Index all = (Index(1) << qubits) - 1;
  if (kind == PairKind::uniform) return {0, all};
  Index odd = 0;
  for (int j = 1; j < qubits; j += 2) odd |= Index(1) << j;
  return {odd, all ^ odd};
}

struct GHZReport {
  double alpha_population = 0.0;
  double beta_population = 0.0;
  double relative_phase = 0.0;  // arg(beta / alpha)
  double fidelity = 0.0;        // |alpha|^2 + |beta|^2
};

inline GHZReport ghz_report(const StateVector &psi, PairKind kind) {
  const auto [ia, ib] = pair_indices(qubit_count(psi), kind);
  GHZReport r;
  r.alpha_population = std::norm(psi(ia));
  r.beta_population = std::norm(psi(ib));
  r.relative_phase = std::arg(psi(ib) * std::conj(psi(ia)));
  r.fidelity = r.alpha_population + r.beta_population;
  return r;
}

// Pair that the B = 0 ground space of coupling W is spanned by.
inline PairKind pair_for(double coupling) {
  return coupling < 0.0 ? PairKind::uniform : PairKind::neel;
}

// B(t) = B0 (1 + cos(pi t / T)) / 2.
struct RaisedCosineRamp {
  double initial_field = 5.0;
  double duration = 200.0;

  double field(double t) const {
    if (duration == 0.0) return 0.0;
    return initial_field * 0.5 * (1.0 + std::cos(std::numbers::pi * t / duration));
  }
};

struct SweepSample {
  double t = 0.0;
  double field = 0.0;
  double energy = 0.0;  // <H(t)>
  double subspace_fidelity = 0.0;
  double parity_leak = 0.0;
};

struct SweepResult {
  StateVector initial_state;
  StateVector final_state;
  GHZReport report;
  std::vector<SweepSample> samples;
  double max_parity_leak = 0.0;
  numerics::EvolveStats stats;
};

// Starts in the exact ground state at B0 and follows the raised-cosine ramp
// to B = 0. The state is recorded at `samples` evenly spaced times. Norm drift
// grows roughly as (number of steps) x tolerance, hence the tight default.
inline SweepResult adiabatic_sweep(const IsingParams &p,
                                   const RaisedCosineRamp &ramp,
                                   double tolerance = 1e-12, int samples = 101) {
  p.validate();
  require(p.coupling != 0.0, "adiabatic_sweep: W must be nonzero");
  require(ramp.initial_field > 0.0 && std::isfinite(ramp.initial_field),
          "adiabatic_sweep: B0 must be > 0");
  require(ramp.duration >= 0.0 && std::isfinite(ramp.duration),
          "adiabatic_sweep: duration must be >= 0");
  require(samples >= 2, "adiabatic_sweep: need at least 2 samples");

  SweepResult out;
  out.initial_state = ising_lowest(p, ramp.initial_field, 1).vectors[0];
  const int sector = parity_sector(out.initial_state);
  const PairKind kind = pair_for(p.coupling);
  IsingOperator op(p, ramp.initial_field);

  auto record = [&](double t, const StateVector &psi) {
    op.set_field(ramp.field(t));
    SweepSample s;
    s.t = t;
    s.field = op.field();
    s.energy = op.expectation(psi);
    s.subspace_fidelity = ghz_report(psi, kind).fidelity;
    s.parity_leak = parity_leak(psi, sector);
    out.max_parity_leak = std::max(out.max_parity_leak, s.parity_leak);
    out.samples.push_back(s);
  };

  StateVector psi = out.initial_state;
  record(0.0, psi);
  if (ramp.duration > 0.0) {
    numerics::EvolveOptions opt;
    opt.tolerance = tolerance;
    std::vector<double> times;
    for (int k = 1; k < samples; ++k) {
      times.push_back(ramp.duration * k / (samples - 1));
    }
    // Steps end exactly on breakpoints, so every sample time is visited.
    opt.breakpoints.assign(times.begin(), times.end() - 1);
    std::size_t next = 0;
    IsingOperator moving(p, ramp.initial_field);
    auto gen = [&](double t, const StateVector &in, StateVector &res) {
      moving.set_field(ramp.field(t));
      moving.apply(in, res);
    };
    auto observe = [&](double t, const StateVector &y) {
      if (next < times.size() && t == times[next]) {
        record(t, y);
        ++next;
      }
    };
    psi = numerics::evolve(psi, gen, 0.0, ramp.duration, opt, observe, &out.stats);
  }
  out.final_state = psi;
  out.report = ghz_report(psi, kind);
  return out;
}

// exp(-i theta sigma_z / 2) on every qubit.
inline StateVector rotate_z(const StateVector &psi, double theta) {
  const int n = qubit_count(psi);
  StateVector out(psi.size());
  for (Index i = 0; i < psi.size(); ++i) {
    const int down = std::popcount(std::uint64_t(i));
    const double total_z = double(n - 2 * down);
    out(i) = std::polar(1.0, -0.5 * theta * total_z) * psi(i);
  }
  return out;
}

inline constexpr double kMinPairFidelity = 0.99;

// Change of arg(beta / alpha) under a uniform z rotation by theta per spin.
inline double interferometer_phase(const StateVector &psi, double theta,
                                   PairKind kind) {
  require(std::isfinite(theta), "interferometer_phase: theta must be finite");
  const auto before = ghz_report(psi, kind);
  if (before.fidelity < kMinPairFidelity) {
    throw Error(ErrorKind::invalid_argument,
                "interferometer_phase: pair fidelity " +
                    std::to_string(before.fidelity) +
                    " below 0.99; relative phase is ill-defined");
  }
  const auto after = ghz_report(rotate_z(psi, theta), kind);
  return std::remainder(after.relative_phase - before.relative_phase,
                        2.0 * std::numbers::pi);
}

// alpha |pair.first> + beta |pair.second>.
inline StateVector pair_state(int qubits, PairKind kind, cplx alpha, cplx beta) {
  require(qubits >= 1 && qubits <= kDefaultQubitCap,
          "pair_state: qubit count out of range");
  StateVector psi = StateVector::Zero(Index(1) << qubits);
  const auto [ia, ib] = pair_indices(qubits, kind);
  psi(ia) += alpha;
  psi(ib) += beta;
  return psi;
}

// ---------------------------------------------------------------------------
// Single- and two-qubit gates

using Unitary2 = Eigen::Matrix2cd;
using Unitary4 = Eigen::Matrix4cd;

// exp(-i H_R t) for H_R = (Omega_R |a><b| + h.c.) / 2 + delta |b><b| in the
// basis (a, b).
inline Unitary2 raman_unitary(cplx rabi, double detuning, double t) {
  // H_R = delta/2 I + n . sigma with n = (Re W / 2, -Im W / 2, -delta / 2).
  const double nx = 0.5 * rabi.real(), ny = -0.5 * rabi.imag(),
               nz = -0.5 * detuning;
  const double nu = std::sqrt(nx * nx + ny * ny + nz * nz);
  const cplx global = std::polar(1.0, -0.5 * detuning * t);
  const cplx I(0.0, 1.0);
  Unitary2 u;
  if (nu == 0.0) {
    u.setIdentity();
  } else {
    const double c = std::cos(nu * t), s = std::sin(nu * t) / nu;
    u(0, 0) = c - I * s * nz;
    u(1, 1) = c + I * s * nz;
    u(0, 1) = -I * s * cplx(nx, -ny);
    u(1, 0) = -I * s * cplx(nx, ny);
  }
  return global * u;
}

inline void check_qubit(const StateVector &psi, int q) {
  const int n = qubit_count(psi);
  if (q < 0 || q >= n) {
    throw Error(ErrorKind::invalid_argument,
                "qubit index " + std::to_string(q) + " outside [0, " +
                    std::to_string(n) + ")");
  }
}

// Local index is the bit value of q.
inline void apply_one_qubit(StateVector &psi, int q, const Unitary2 &u) {
  check_qubit(psi, q);
  const Index m = Index(1) << q;
  for (Index i = 0; i < psi.size(); ++i) {
    if (i & m) continue;
    const cplx a = psi(i), b = psi(i | m);
    psi(i) = u(0, 0) * a + u(0, 1) * b;
    psi(i | m) = u(1, 0) * a + u(1, 1) * b;
  }
}

// Local index is 2 * bit(q0) + bit(q1).
inline void apply_two_qubit(StateVector &psi, int q0, int q1, const Unitary4 &u) {
  check_qubit(psi, q0);
  check_qubit(psi, q1);
  require(q0 != q1, "apply_two_qubit: qubits must differ");
  const Index m0 = Index(1) << q0, m1 = Index(1) << q1;
  for (Index i = 0; i < psi.size(); ++i) {
    if (i & (m0 | m1)) continue;
    const Index idx[4] = {i, i | m1, i | m0, i | m0 | m1};
    Eigen::Vector4cd v(psi(idx[0]), psi(idx[1]), psi(idx[2]), psi(idx[3]));
    const Eigen::Vector4cd w = u * v;
    for (int k = 0; k < 4; ++k) psi(idx[k]) = w(k);
  }
}

inline StateVector raman_rotation(const StateVector &psi, int qubit, cplx rabi,
                                  double detuning, double t) {
  StateVector out = psi;
  apply_one_qubit(out, qubit, raman_unitary(rabi, detuning, t));
  return out;
}

// A Hermitian term on one or two qubits.
struct TrotterTerm {
  std::vector<int> qubits;
  Eigen::MatrixXcd hamiltonian;
};

inline TrotterTerm one_qubit_term(int q, const Eigen::Matrix2cd &h) {
  return {{q}, h};
}
inline TrotterTerm two_qubit_term(int q0, int q1, const Eigen::Matrix4cd &h) {
  return {{q0, q1}, h};
}

inline void validate_term(const TrotterTerm &t, int qubits) {
  const auto k = t.qubits.size();
  require(k == 1 || k == 2, "TrotterTerm: support must be 1 or 2 qubits");
  for (int q : t.qubits) {
    require(q >= 0 && q < qubits, "TrotterTerm: qubit index out of range");
  }
  require(k == 1 || t.qubits[0] != t.qubits[1],
          "TrotterTerm: repeated qubit in support");
  const Index dim = Index(1) << k;
  require(t.hamiltonian.rows() == dim && t.hamiltonian.cols() == dim,
          "TrotterTerm: matrix size does not match support");
  require(t.hamiltonian.allFinite(), "TrotterTerm: non-finite entries");
  require((t.hamiltonian - t.hamiltonian.adjoint()).cwiseAbs().maxCoeff() <=
              numerics::kHermitianTolerance *
                  std::max(1.0, t.hamiltonian.cwiseAbs().maxCoeff()),
          "TrotterTerm: matrix is not Hermitian");
}

// exp(-i h t) of a small Hermitian matrix.
inline Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd &h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline void apply_term_unitary(StateVector &psi, const TrotterTerm &t,
                               const Eigen::MatrixXcd &u) {
  if (t.qubits.size() == 1) {
    apply_one_qubit(psi, t.qubits[0], u);
  } else {
    apply_two_qubit(psi, t.qubits[0], t.qubits[1], u);
  }
}

// First-order product formula: each step applies exp(-i H_term dt) for every
// term in the given order.
inline StateVector trotter_evolve(const StateVector &psi0,
                                  const std::vector<TrotterTerm> &terms,
                                  double dt, int steps) {
  const int n = qubit_count(psi0);
  require(dt > 0.0 && std::isfinite(dt), "trotter_evolve: dt must be > 0");
  require(steps >= 0, "trotter_evolve: steps must be >= 0");
  std::vector<Eigen::MatrixXcd> unitaries;
  for (const auto &t : terms) {
    validate_term(t, n);
    unitaries.push_back(hermitian_exp(t.hamiltonian, dt));
  }
  StateVector psi = psi0;
  for (int s = 0; s < steps; ++s) {
    for (std::size_t k = 0; k < terms.size(); ++k) {
      apply_term_unitary(psi, terms[k], unitaries[k]);
    }
  }
  return psi;
}

// Sum of the terms as a dense 2^N matrix.
inline numerics::DenseMatrix terms_matrix(const std::vector<TrotterTerm> &terms,
                                          int qubits) {
  const Index dim = Index(1) << qubits;
  numerics::DenseMatrix h = numerics::DenseMatrix::Zero(dim, dim);
  for (const auto &t : terms) {
    validate_term(t, qubits);
    for (Index c = 0; c < dim; ++c) {
      StateVector e = StateVector::Zero(dim);
      e(c) = 1.0;
      // H_term e_c, using the gate kernels on a non-unitary matrix.
      apply_term_unitary(e, t, t.hamiltonian);
      h.col(c) += e;
    }
  }
  return h;
}

// exp(-i H t) psi0 by dense diagonalization of the summed terms.
inline StateVector exact_evolve(const StateVector &psi0,
                                const std::vector<TrotterTerm> &terms, double t) {
  const int n = qubit_count(psi0);
  return hermitian_exp(terms_matrix(terms, n), t) * psi0;
}

// The Ising Hamiltonian split as field terms B sigma_x followed by bond terms
// W sigma_z sigma_z.
inline std::vector<TrotterTerm> ising_terms(const IsingParams &p, double field) {
  p.validate();
  std::vector<TrotterTerm> out;
  Eigen::Matrix2cd sx;
  sx << 0, 1, 1, 0;
  for (int j = 0; j < p.qubits; ++j) out.push_back(one_qubit_term(j, field * sx));
  Eigen::Matrix4cd zz = Eigen::Matrix4cd::Zero();
  zz.diagonal() << 1, -1, -1, 1;
  for (auto [a, b] : p.bonds()) out.push_back(two_qubit_term(a, b, p.coupling * zz));
  return out;
}

}  // namespace optlattice::spin

#endif  // OPTLATTICE_SPIN_CHAIN_HPP
