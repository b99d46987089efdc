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


#ifndef OPTLATTICE_OPTLATTICE_HPP
#define OPTLATTICE_OPTLATTICE_HPP

#include "optlattice/bose_hubbard.hpp"
#include "optlattice/core/eigensolve.hpp"
#include "optlattice/core/evolve.hpp"
#include "optlattice/core/hermitian_matrix.hpp"
#include "optlattice/core/parallel.hpp"
#include "optlattice/core/quadrature.hpp"
#include "optlattice/error.hpp"
#include "optlattice/fock_basis.hpp"
#include "optlattice/gates.hpp"
#include "optlattice/hofstadter.hpp"
#include "optlattice/lattice_physics.hpp"
#include "optlattice/meanfield.hpp"
#include "optlattice/spin_chain.hpp"

#endif  // OPTLATTICE_OPTLATTICE_HPP
