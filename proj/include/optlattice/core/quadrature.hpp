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

#ifndef OPTLATTICE_CORE_QUADRATURE_HPP
#define OPTLATTICE_CORE_QUADRATURE_HPP

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "optlattice/error.hpp"

namespace optlattice::numerics {

struct QuadratureOptions {
  // Interior points where f may have a kink or a narrow feature.
  std::vector<double> breakpoints;
  unsigned max_depth = 30;
};

namespace detail {

template <class F>
double integrate_piece(const F &f, double a, double b, double tol,
                       unsigned max_depth) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  if (a == b) return 0.0;
  auto guarded = [&f](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw Error(ErrorKind::invalid_argument,
                  "quadrature: non-finite sample at x = " + std::to_string(x));
    }
    return y;
  };
  // Boost terminates on error <= rel_tol * L1. A coarse pass supplies L1 so
  // the requested absolute tolerance can be expressed as a relative one.
  double l1 = 0.0;
  double err = 0.0;
  const double coarse = Rule::integrate(guarded, a, b, 4, 1e-3, &err, &l1);
  if (l1 == 0.0) return coarse;
  const double rel = std::max(tol / l1, 1e-15);
  return Rule::integrate(guarded, a, b, max_depth, rel, &err, &l1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integral of f over [a, b]. The absolute tolerance is
// split evenly over the pieces delimited by the breakpoints.
template <class F>
double quadrature(const F &f, double a, double b, double tol,
                  const QuadratureOptions &opt = {}) {
  require(a <= b, "quadrature: requires a <= b");
  require(tol > 0.0, "quadrature: tolerance must be > 0");
  std::vector<double> edges{a};
  for (double p : opt.breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  std::sort(edges.begin(), edges.end());
  edges.push_back(b);
  const double piece_tol = tol / double(edges.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    sum += detail::integrate_piece(f, edges[i], edges[i + 1], piece_tol,
                                   opt.max_depth);
  }
  return sum;
}

}  // namespace optlattice::numerics

#endif  // OPTLATTICE_CORE_QUADRATURE_HPP
