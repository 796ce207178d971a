"""Canonical catalogue of simple modules and composition multisets.

The registry of an algebra is filled once, by chopping the regular module with
seed 1 (every simple occurs there), and then ordered by dimension with ties
broken by discovery order.  Factors found later are identified against it.
"""

from __future__ import annotations

import threading

import numpy as np

from ..errors import ChopFailure
from ..exactla.fp import charpoly_array
from .meataxe import composition_factors
from .module import RepModule, endomorphism_dim, hom_space, regular_module

CANONICAL_SEED = 1


def _invariant(s: RepModule):
    """Characteristic polynomials of all group elements (equal for isomorphic modules)."""
    return tuple(tuple(charpoly_array(e, s.p)) for e in s.element_matrices)


class SimpleRegistry:
    """Pairwise non-isomorphic certified simples with canonical ids ``0..n-1``."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.simples: list[RepModule] = []
        self.end_dims: list[int] = []
        self._invariants: list = []
        self._lock = threading.Lock()

    def __len__(self):
        return len(self.simples)

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.simples]

    def _match(self, s: RepModule, inv):
        cands = [i for i, t in enumerate(self.simples) if t.dim == s.dim and self._invariants[i] == inv]
        for i in cands:
            if hom_space(s, self.simples[i]):
                return i
        return None

    def identify(self, s: RepModule) -> int:
        """Id of the registered simple isomorphic to ``s`` (registering it if new)."""
        inv = _invariant(s)
        i = self._match(s, inv)
        if i is not None:
            return i
        with self._lock:
            i = self._match(s, inv)
            if i is None:
                self.simples.append(s)
                self.end_dims.append(endomorphism_dim(s))
                self._invariants.append(inv)
                i = len(self.simples) - 1
            return i

    def _canonicalize(self):
        order = sorted(range(len(self.simples)), key=lambda i: (self.simples[i].dim, i))
        self.simples = [self.simples[i] for i in order]
        self.end_dims = [self.end_dims[i] for i in order]
        self._invariants = [self._invariants[i] for i in order]


_BUILD_LOCK = threading.Lock()


def registry_for(alg) -> SimpleRegistry:
    """The shared registry of a group algebra over a field."""
    reg = alg._cache.get("registry")
    if reg is not None:
        return reg
    with _BUILD_LOCK:
        reg = alg._cache.get("registry")
        if reg is None:
            reg = SimpleRegistry(alg)
            rng = np.random.default_rng(CANONICAL_SEED)
            for s in composition_factors(regular_module(alg), rng):
                reg.identify(s)
            reg._canonicalize()
            alg._cache["registry"] = reg
    return reg


class CompositionMultiset:
    """Multiplicities of registry simples, as a vector in canonical order."""

    def __init__(self, registry: SimpleRegistry, counts):
        self.registry = registry
        self.counts = tuple(int(c) for c in counts)

    @classmethod
    def from_ids(cls, registry, ids):
        counts = [0] * len(registry)
        for i in ids:
            counts[i] += 1
        return cls(registry, counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __add__(self, other):
        return CompositionMultiset(self.registry, [a + b for a, b in zip(self.counts, other.counts)])

    def scaled(self, k: int):
        return CompositionMultiset(self.registry, [k * a for a in self.counts])

    def total_dim(self) -> int:
        return sum(c * d for c, d in zip(self.counts, self.registry.dims))

    def as_dict(self) -> dict:
        return {i: c for i, c in enumerate(self.counts) if c}

    def __eq__(self, other):
        return isinstance(other, CompositionMultiset) and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    def __repr__(self):
        return f"CompositionMultiset({list(self.counts)})"


def chop(m: RepModule, seed: int = CANONICAL_SEED) -> CompositionMultiset:
    """Composition multiset of a module over a field, in registry coordinates."""
    reg = registry_for(m.algebra)
    rng = np.random.default_rng(seed)
    factors = composition_factors(m, rng)
    ids = [reg.identify(s) for s in factors]
    out = CompositionMultiset.from_ids(reg, ids)
    if out.total_dim() != m.dim:  # pragma: no cover - bookkeeping guard
        raise ChopFailure("composition factor dimensions do not add up")
    return out
