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

#ifndef OPTLATTICE_FOCK_BASIS_HPP
#define OPTLATTICE_FOCK_BASIS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "optlattice/error.hpp"

namespace optlattice::fock {

inline constexpr std::uint64_t kDefaultDimensionCap = 2'000'000;

// Occupation numbers n_0 .. n_{M-1} of one number state.
struct FockState {
  std::vector<std::uint16_t> occupations;

  int sites() const { return int(occupations.size()); }
  int particles() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
  }
  bool operator==(const FockState &) const = default;
  auto operator<=>(const FockState &) const = default;
};

struct FockStateHash {
  std::size_t operator()(const FockState &s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto n : s.occupations) {
      h ^= n;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};

// C(N + M - 1, N), saturating at UINT64_MAX.
inline std::uint64_t basis_dimension(int sites, int particles) {
  require(sites >= 1, "basis_dimension: sites must be >= 1");
  require(particles >= 0, "basis_dimension: particles must be >= 0");
  const std::uint64_t n = std::uint64_t(particles) + std::uint64_t(sites) - 1;
  const std::uint64_t k = std::min<std::uint64_t>(particles, sites - 1);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t f = factor / (i / g);
    if (r != 0 && f > std::numeric_limits<std::uint64_t>::max() / r) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = r * f;
  }
  return result;
}

// Number states of N bosons on M sites in lexicographically descending order
// (|N,0,...,0> first), with a hash index for rank lookup.
class FockBasis {
 public:
  static FockBasis build(int sites, int particles,
                         std::uint64_t dimension_cap = kDefaultDimensionCap) {
    require(sites >= 1, "build_basis: M must be >= 1");
    require(particles >= 0, "build_basis: N must be >= 0");
    require(particles <= std::numeric_limits<std::uint16_t>::max(),
            "build_basis: N too large");
    const std::uint64_t dim = basis_dimension(sites, particles);
    if (dim > dimension_cap) {
      throw Error(ErrorKind::capacity,
                  "build_basis: dimension " +
                      (dim == std::numeric_limits<std::uint64_t>::max()
                           ? std::string("> 2^64")
                           : std::to_string(dim)) +
                      " for M=" + std::to_string(sites) +
                      ", N=" + std::to_string(particles) +
                      " exceeds cap " + std::to_string(dimension_cap));
    }
    FockBasis basis;
    basis.sites_ = sites;
    basis.particles_ = particles;
    basis.states_.reserve(dim);
    basis.index_.reserve(dim);
    FockState current{std::vector<std::uint16_t>(sites, 0)};
    basis.enumerate(current, 0, particles);
    return basis;
  }

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  std::size_t size() const { return states_.size(); }

  const FockState &state(std::size_t i) const { return states_.at(i); }
  const std::vector<FockState> &states() const { return states_; }

  std::optional<std::size_t> find(const FockState &s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t rank(const FockState &s) const {
    auto r = find(s);
    require(r.has_value(), "FockBasis::rank: state not in basis");
    return *r;
  }

 private:
  void enumerate(FockState &current, int site, int remaining) {
    if (site == sites_ - 1) {
      current.occupations[site] = std::uint16_t(remaining);
      index_.emplace(current, states_.size());
      states_.push_back(current);
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      current.occupations[site] = std::uint16_t(n);
      enumerate(current, site + 1, remaining - n);
    }
    current.occupations[site] = 0;
  }

  int sites_ = 0;
  int particles_ = 0;
  std::vector<FockState> states_;
  std::unordered_map<FockState, std::size_t, FockStateHash> index_;
};

inline int number_operator(const FockState &s, int site) {
  require(site >= 0 && site < s.sites(),
          "number_operator: invalid site " + std::to_string(site));
  return s.occupations[site];
}

struct HopResult {
  FockState state;
  double amplitude;
};

// a_to^dagger a_from |s>. Empty when site `from` is unoccupied.
inline std::optional<HopResult> apply_hop(const FockState &s, int to, int from) {
  require(to >= 0 && to < s.sites() && from >= 0 && from < s.sites(),
          "apply_hop: invalid site index");
  require(to != from, "apply_hop: sites must differ");
  const int n_from = s.occupations[from];
  if (n_from == 0) return std::nullopt;
  const int n_to = s.occupations[to];
  HopResult out{s, std::sqrt(double(n_to + 1)) * std::sqrt(double(n_from))};
  out.state.occupations[from] = std::uint16_t(n_from - 1);
  out.state.occupations[to] = std::uint16_t(n_to + 1);
  return out;
}

}  // namespace optlattice::fock

#endif  // OPTLATTICE_FOCK_BASIS_HPP
