#!/usr/bin/env python3
# Copyright 2026 The optlattice Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference Bose-Hubbard ring diagonalization used to produce the golden
tables under tests/golden. Independent of the C++ code: the basis comes from
stars-and-bars combinations and the spectrum from numpy/scipy.

usage: bose_hubbard_ed.py M N U1 [U2 ...] > table.csv
"""
import itertools
import sys

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as sla


def basis(m, n):
    states = []
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        edges = (-1,) + bars + (n + m - 1,)
        states.append(tuple(edges[i + 1] - edges[i] - 1 for i in range(m)))
    return states


def ring_hamiltonian(states, m, u, j=1.0):
    index = {s: i for i, s in enumerate(states)}
    bonds = [(l, (l + 1) % m) for l in range(m)] if m > 2 else [(0, 1)]
    rows, cols, vals = [], [], []
    for c, s in enumerate(states):
        rows.append(c)
        cols.append(c)
        vals.append(0.5 * u * sum(x * (x - 1) for x in s))
        for a, b in bonds:
            for to, frm in ((a, b), (b, a)):
                if s[frm] == 0:
                    continue
                t = list(s)
                amp = np.sqrt(t[to] + 1) * np.sqrt(t[frm])
                t[frm] -= 1
                t[to] += 1
                rows.append(index[tuple(t)])
                cols.append(c)
                vals.append(-j * amp)
    d = len(states)
    return sp.csr_matrix((vals, (rows, cols)), shape=(d, d))


def lowest_two(h):
    if h.shape[0] <= 600:
        w, v = np.linalg.eigh(h.toarray())
        return w[:2], v[:, 0]
    w, v = sla.eigsh(h, k=2, which="SA", tol=1e-14, maxiter=100000)
    order = np.argsort(w)
    return w[order], v[:, order[0]]


def observables(states, m, n, psi):
    occ = np.array(states, dtype=float)
    p = psi**2
    n0 = occ[:, 0]
    dn2 = p @ n0**2 - (p @ n0) ** 2
    index = {s: i for i, s in enumerate(states)}
    rho = np.zeros((m, m))
    for c, s in enumerate(states):
        for l in range(m):
            rho[l, l] += p[c] * s[l]
            for k in range(m):
                if k == l or s[k] == 0:
                    continue
                t = list(s)
                amp = np.sqrt(t[l] + 1) * np.sqrt(t[k])
                t[k] -= 1
                t[l] += 1
                rho[l, k] += psi[index[tuple(t)]] * psi[c] * amp
    s0 = rho.sum() / m
    return s0 / n, dn2


def main():
    m, n = int(sys.argv[1]), int(sys.argv[2])
    grid = [float(x) for x in sys.argv[3:]]
    states = basis(m, n)
    print("U_over_J,E0,gap,S0_over_N,dn2_site0,degenerate_flag")
    for u in grid:
        w, psi = lowest_two(ring_hamiltonian(states, m, u))
        s0, dn2 = observables(states, m, n, psi)
        gap = w[1] - w[0]
        print("%.17g,%.17g,%.17g,%.17g,%.17g,%d"
              % (u, w[0], gap, s0, dn2, int(gap < 1e-10)))


if __name__ == "__main__":
    main()
