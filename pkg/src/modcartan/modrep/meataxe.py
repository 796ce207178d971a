"""Composition factors by the MeatAxe.

A random algebra element ``theta`` is built from group elements reachable by
generator words of length at most 3.  For each irreducible factor ``f`` of its
characteristic polynomial a kernel vector of ``f(theta)`` is spun; a proper
result splits the module.  When ``nullity f(theta) = deg f`` the module is
certified irreducible by the Holt-Rees form of Norton's test: one kernel
vector spins to everything and one vector of the transposed kernel spins to
everything under the transposed action.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import IrreducibilityUndecided
from ..exactla.fp import charpoly_array, mat_pow_poly, nullspace_array
from ..exactla.poly import factor_list
from .module import RepModule, annihilator_rows, quotient, spin_echelon, submodule

ATTEMPTS = 64
FALLBACK_MAX_P = 3
FALLBACK_MAX_DIM = 12
WORD_LENGTH = 3


def short_word_elements(group, length: int = WORD_LENGTH) -> list[int]:
    """Group elements whose generator words have length at most ``length``."""
    return [x for x in range(group.order) if len(group.words[x]) <= length]


def _random_vector_in(rows, rng, p):
    while True:
        c = rng.integers(0, p, size=rows.shape[0])
        if np.any(c):
            return (c @ rows) % p


def _try_theta(m: RepModule, theta, rng):
    """``("split", basis)``, ``("irreducible", None)`` or ``None`` (inconclusive)."""
    p, d = m.p, m.dim
    for f, _ in factor_list(charpoly_array(theta, p), p):
        a = mat_pow_poly(f, theta, p)
        ker = nullspace_array(a, p)
        v = _random_vector_in(ker, rng, p)
        ech = spin_echelon(m.actions, [v], p, d)
        if ech.dim < d:
            return "split", ech.rows
        if ker.shape[0] == len(f) - 1:
            kert = nullspace_array(a.T, p)
            w = _random_vector_in(kert, rng, p)
            tr = [x.T for x in m.actions]
            echt = spin_echelon(tr, [w], p, d)
            if echt.dim < d:
                return "split", annihilator_rows(echt.rows, d, p)
            return "irreducible", None
    return None


def find_split(m: RepModule, rng):
    """A proper nonzero invariant subspace (RREF rows), or None if ``m`` is irreducible."""
    d, p = m.dim, m.p
    if d <= 1:
        return None
    elems = short_word_elements(m.group)
    E = m.element_matrices[elems]
    for _ in range(ATTEMPTS):
        c = rng.integers(0, p, size=len(elems))
        theta = np.tensordot(c, E, axes=1) % p
        res = _try_theta(m, theta, rng)
        if res is not None:
            return res[1]
    if p <= FALLBACK_MAX_P and d <= FALLBACK_MAX_DIM:
        for theta in _fallback_thetas(E, p):
            res = _try_theta(m, theta, rng)
            if res is not None:
                return res[1]
    raise IrreducibilityUndecided(m)


def _fallback_thetas(E, p):
    """Deterministic sweep: every combination with at most two nonzero coefficients."""
    n = E.shape[0]
    for i in range(n):
        for a in range(1, p):
            yield (a * E[i]) % p
    for i, j in itertools.combinations(range(n), 2):
        for a in range(1, p):
            for b in range(1, p):
                yield (a * E[i] + b * E[j]) % p


def composition_factors(m: RepModule, rng) -> list[RepModule]:
    """Certified-irreducible composition factors of ``m`` (with repetition)."""
    out = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.dim == 0:
            continue
        basis = find_split(x, rng)
        if basis is None:
            out.append(x)
            continue
        stack.append(quotient(x, basis))
        stack.append(submodule(x, basis).module)
    return out


def find_simple_submodule(m: RepModule, rng):
    """A simple submodule: ``(basis rows in m's coordinates, simple module)``."""
    p = m.p
    ambient = np.eye(m.dim, dtype=np.int64)
    cur = m
    while True:
        basis = find_split(cur, rng)
        if basis is None:
            return ambient, cur
        sub = submodule(cur, basis)
        ambient = (sub.basis @ ambient) % p
        cur = sub.module
