"""K0 and G0 as integer lattices, and the maps between them.

G0 of k[pi] has the simple modules as basis, in registry order; K0 has the
PIMs, aligned with G0 through their heads.  Every map is an
:class:`IntMatrix` acting on column vectors of coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .exactla.snf import IntMatrix, determinant, integer_kernel, smith_normal_form
from .groupalg import group_algebra
from .groups import Group, Subgroup, cyclic_subgroup_classes, cyclic_subgroups
from .modrep import (
    chop,
    decompose_projective,
    direct_sum,
    induce,
    pim_modules,
    registry_for,
    restrict,
    tensor_diagonal,
)


@dataclass(frozen=True)
class Lattice:
    """``kind`` is ``"G0"`` or ``"K0"``; ``dims`` lists the dimensions of the basis modules."""

    kind: str
    group_order: int
    field: str
    dims: tuple

    @property
    def rank(self) -> int:
        return len(self.dims)


def g0_lattice(alg) -> Lattice:
    return Lattice("G0", alg.group.order, alg.coeff.spec(), tuple(registry_for(alg).dims))


def k0_lattice(alg) -> Lattice:
    return Lattice("K0", alg.group.order, alg.coeff.spec(), tuple(P.module.dim for P in pim_modules(alg)))


@dataclass(frozen=True)
class LatticeMap:
    domain: Lattice
    codomain: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.codomain.rank, self.domain.rank):
            raise ValueError("matrix shape does not match the lattices")

    def __call__(self, x):
        return [sum(self.matrix[i, j] * x[j] for j in range(self.matrix.cols)) for i in range(self.matrix.rows)]


def _field_algebra(group: Group, field):
    if not getattr(field, "length", 1) == 1:
        raise UsageError("G0 lattices are built over a field")
    return group_algebra(group, field)


def cartan_rows(alg, seed: int = 1) -> list[list[int]]:
    """Row ``i`` holds the composition multiplicities of ``P_i``."""
    return [list(chop(P.module, seed)) for P in pim_modules(alg)]


def cartan_matrix(alg, seed: int = 1) -> LatticeMap:
    """The Cartan map K0 -> G0.  Its matrix is stored with rows indexed by PIMs
    (the usual ``(a_ij)`` layout); :attr:`LatticeMap.matrix` holds the transpose
    so that it acts on K0 coordinates."""
    rows = cartan_rows(alg, seed)
    mat = IntMatrix(rows, len(rows)).transpose()
    return LatticeMap(k0_lattice(alg), g0_lattice(alg), mat)


def cartan_table(alg, seed: int = 1) -> IntMatrix:
    """``(a_ij)`` with ``a_ij`` the multiplicity of ``S_j`` in ``P_i``."""
    rows = cartan_rows(alg, seed)
    return IntMatrix(rows, len(rows))


def cartan_injectivity(alg, seed: int = 1):
    """``(det, injective)`` for the Cartan map."""
    d = determinant(cartan_table(alg, seed))
    return d, d != 0


def restriction_map(alg, sub: Subgroup, seed: int = 1) -> LatticeMap:
    """G0(k pi) -> G0(k sub): column ``j`` is the class of ``S_j`` restricted."""
    if sub.parent != alg.group:
        raise UsageError("subgroup of another group")
    sub_alg = group_algebra(sub.as_group, alg.coeff)
    cols = [list(chop(restrict(s, sub), seed)) for s in registry_for(alg).simples]
    mat = IntMatrix(cols, len(registry_for(sub_alg))).transpose()
    return LatticeMap(g0_lattice(alg), g0_lattice(sub_alg), mat)


def induction_map(alg, sub: Subgroup, seed: int = 1) -> LatticeMap:
    """G0(k sub) -> G0(k pi): column ``j`` is the class of the induced simple ``S'_j``."""
    if sub.parent != alg.group:
        raise UsageError("subgroup of another group")
    sub_alg = group_algebra(sub.as_group, alg.coeff)
    cols = [list(chop(induce(s, sub), seed)) for s in registry_for(sub_alg).simples]
    mat = IntMatrix(cols, len(registry_for(alg))).transpose()
    return LatticeMap(g0_lattice(sub_alg), g0_lattice(alg), mat)


def k0_restriction_map(alg, sub: Subgroup, seed: int = 1) -> LatticeMap:
    """K0(k pi) -> K0(k sub): restricted PIMs decomposed into PIMs of the subgroup."""
    sub_alg = group_algebra(sub.as_group, alg.coeff)
    cols = [list(decompose_projective(restrict(P.module, sub), seed)) for P in pim_modules(alg)]
    mat = IntMatrix(cols, len(registry_for(sub_alg))).transpose()
    return LatticeMap(k0_lattice(alg), k0_lattice(sub_alg), mat)


def realize(alg, coords):
    """A module whose G0 class has the given nonnegative coordinates (sum of simples)."""
    if any(c < 0 for c in coords):
        raise UsageError("only nonnegative classes are realised by modules")
    simples = registry_for(alg).simples
    parts = [s for s, c in zip(simples, coords) for _ in range(c)]
    if not parts:
        raise UsageError("the zero class has no nonzero module")
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


def frobenius_identity_check(group: Group, sub: Subgroup, field, samples: int = 8, seed: int = 1):
    """Check ``ind(x) . y = ind(x . res(y))`` on sampled module classes.

    Returns a list of ``{"x", "y", "lhs", "rhs", "pass"}`` records.
    """
    alg = _field_algebra(group, field)
    sub_alg = group_algebra(sub.as_group, field)
    n_sub, n = len(registry_for(sub_alg)), len(registry_for(alg))
    rng = np.random.default_rng(seed)
    out = []
    for k in range(samples):
        if k == 0:
            x = [1] + [0] * (n_sub - 1)
            y = [1] + [0] * (n - 1)
        else:
            x = _sample_class(rng, n_sub)
            y = _sample_class(rng, n)
        xm, ym = realize(sub_alg, x), realize(alg, y)
        lhs = chop(tensor_diagonal(induce(xm, sub), ym), seed)
        rhs = chop(induce(tensor_diagonal(xm, restrict(ym, sub)), sub), seed)
        out.append({"x": x, "y": y, "lhs": list(lhs), "rhs": list(rhs), "pass": lhs == rhs})
    return out


def _sample_class(rng, n):
    """One or two simples (possibly equal)."""
    v = [0] * n
    for _ in range(int(rng.integers(1, 3))):
        v[int(rng.integers(0, n))] += 1
    return v


def _stacked_induction(alg, subgroups, seed):
    cols = []
    for h in subgroups:
        m = induction_map(alg, h, seed).matrix
        cols.extend(m.column(j) for j in range(m.cols))
    n = len(registry_for(alg))
    return IntMatrix([[c[i] for c in cols] for i in range(n)], len(cols))


@dataclass(frozen=True)
class ArtinResult:
    exponent: int  # 0 flags an infinite cokernel
    free_rank: int
    divisors: tuple
    bound_ok: bool
    invariant_under_conjugates: bool
    representatives: int
    all_cyclic: int


def artin_exponent_check(group: Group, field, seed: int = 1) -> ArtinResult:
    """Exponent of G0 modulo the images of induction from cyclic subgroups."""
    alg = _field_algebra(group, field)
    reps = cyclic_subgroup_classes(group)
    every = cyclic_subgroups(group)
    n = len(registry_for(alg))
    u = _stacked_induction(alg, reps, seed)
    d, _, _ = smith_normal_form(u)
    divs = tuple(x for x in d.diagonal() if x)
    free = n - len(divs)
    exponent = 0 if free else (max(divs) if divs else 1)
    bound = exponent != 0 and (group.order**2) % exponent == 0
    d_all, _, _ = smith_normal_form(_stacked_induction(alg, every, seed))
    divs_all = tuple(x for x in d_all.diagonal() if x)
    return ArtinResult(exponent, free, divs, bound, divs_all == divs, len(reps), len(every))


def class_kernel(basis: IntMatrix, maps) -> IntMatrix:
    """Intersection of ``ker(f)`` over ``maps``, inside the sublattice spanned by the columns of ``basis``.

    The result's columns are given in ambient coordinates.
    """
    maps = list(maps)
    if not maps:
        raise UsageError("class_kernel needs a nonempty class")
    if basis.cols == 0:
        return basis
    rows = []
    for f in maps:
        rows.extend((f.matrix @ basis).tolist())
    k = integer_kernel(IntMatrix(rows, basis.cols))
    if k.cols == 0:
        return IntMatrix([[] for _ in range(basis.rows)], 0)
    return basis @ k


def cartan_kernel(alg, seed: int = 1) -> IntMatrix:
    """Integer basis (columns) of the kernel of the Cartan map."""
    return integer_kernel(cartan_matrix(alg, seed).matrix)
