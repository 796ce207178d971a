"""Group algebras over the chain rings Z/p^n and F_p[t]/(t^m).

Modules here are free over the chain ring R, given by generator matrices over
R.  Their classes in G0 are read off from the layers ``u^i M / u^(i+1) M``,
which are computed as genuine subquotients with Howell forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidModule, SylowNotNormal, UsageError
from .exactla.fp import Echelon, rref_array
from .exactla.howell import HowellSpan, chain_inverse, chain_kernel
from .exactla.rings import is_field
from .exactla.snf import IntMatrix, determinant
from .groupalg import (
    IdealBasis,
    augmentation_ideal,
    group_algebra,
    lift_idempotent,
    maximal_ideal_extension,
    radical,
    radical_chain,
    ideal_sum,
    semisimple_primitive_idempotents,
)
from .groups import Group, quotient_group, sylow_subgroup
from .modrep import RepModule, chop, decompose_projective, registry_for
from .modrep.registry import CompositionMultiset


class ChainRepModule:
    """An R-free module over R[pi]: one invertible matrix over R per generator."""

    def __init__(self, group: Group, ring, actions, provenance: str = "derived", validate: bool = True, dim=None):
        if is_field(ring):
            raise UsageError("ChainRepModule needs a chain ring; use RepModule over a field")
        self.group = group
        self.ring = ring
        self.provenance = provenance
        acts = [ring.reduce(np.array(a, dtype=np.int64)) for a in actions]
        if len(acts) != len(group.generators):
            raise InvalidModule(f"expected {len(group.generators)} action matrices")
        shapes = {a.shape for a in acts}
        if len(shapes) > 1:
            raise InvalidModule("action matrices differ in shape")
        if dim is None:
            if not shapes:
                raise InvalidModule("dim must be given for a group without generators")
            dim = next(iter(shapes))[0]
        for shape in shapes:
            if shape != (dim, dim) + ring.suffix:
                raise InvalidModule(f"action matrices must be {dim}x{dim} with ring entries")
        self.dim = int(dim)
        for a in acts:
            a.flags.writeable = False
        self.actions = tuple(acts)
        self.pim_multiplicities = None
        if validate:
            self.validate()

    @property
    def algebra(self):
        return group_algebra(self.group, self.ring)

    @cached_property
    def element_matrices(self):
        R, d, n = self.ring, self.dim, self.group.order
        E = [None] * n
        E[0] = R.lift(np.eye(d, dtype=np.int64))
        for y, x, slot in self.group.bfs_steps:
            E[y] = R.matmul(E[x], self.actions[slot])
        return E

    def validate(self):
        R = self.ring
        E = self.element_matrices
        t = self.group.table
        for g in range(self.group.order):
            for h in range(self.group.order):
                if not np.array_equal(R.matmul(E[g], E[h]), E[t[g, h]]):
                    raise InvalidModule(f"relation fails for the pair ({g}, {h})")

    def __repr__(self):
        return f"ChainRepModule(rank={self.dim}, {self.ring.spec()}, {self.provenance})"


def chain_regular_module(alg) -> ChainRepModule:
    g, R = alg.group, alg.coeff
    n = g.order
    acts = []
    for gen in g.generators:
        m = np.zeros((n, n), dtype=np.int64)
        m[g.table[gen], np.arange(n)] = 1
        acts.append(R.lift(m))
    return ChainRepModule(g, R, acts, provenance="regular", validate=False, dim=n)


def chain_direct_sum(*mods: ChainRepModule) -> ChainRepModule:
    g, R = mods[0].group, mods[0].ring
    d = sum(m.dim for m in mods)
    acts = []
    for slot in range(len(g.generators)):
        a = R.zeros((d, d))
        off = 0
        for m in mods:
            a[off : off + m.dim, off : off + m.dim] = m.actions[slot]
            off += m.dim
        acts.append(a)
    return ChainRepModule(g, R, acts, validate=False, dim=d)


def chain_trivial_module(group: Group, ring) -> ChainRepModule:
    one = ring.lift(np.eye(1, dtype=np.int64))
    return ChainRepModule(group, ring, [one] * len(group.generators), validate=False, dim=1)


def chain_restrict(m: ChainRepModule, sub) -> ChainRepModule:
    h = sub.as_group
    E = m.element_matrices
    return ChainRepModule(h, m.ring, [E[sub.elements[gen]] for gen in h.generators], validate=False, dim=m.dim)


def chain_induce(n: ChainRepModule, sub) -> ChainRepModule:
    """Induction with the same coset-major basis as for field modules."""
    from .modrep.module import coset_representatives

    g, R = sub.parent, n.ring
    if n.group != sub.as_group:
        raise UsageError("module is not over the given subgroup")
    reps, which = coset_representatives(sub)
    pos = {e: i for i, e in enumerate(sub.elements)}
    En = n.element_matrices
    d, r = n.dim, len(reps)
    acts = []
    for gen in g.generators:
        a = R.zeros((r * d, r * d))
        for i, ti in enumerate(reps):
            x = g.mul(gen, ti)
            j = int(which[x])
            h = g.mul(g.inv(reps[j]), x)
            a[j * d : (j + 1) * d, i * d : (i + 1) * d] = En[pos[h]]
        acts.append(a)
    return ChainRepModule(g, R, acts, provenance="induced", validate=False, dim=r * d)


def chain_regular_mod_sum(alg) -> ChainRepModule:
    """``R[pi] / R u`` with ``u`` the sum of all group elements (R-free of rank ``|pi| - 1``).

    Basis: the images of the non-identity elements; the identity maps to minus their sum.
    """
    g, R = alg.group, alg.coeff
    n = g.order
    acts = []
    for gen in g.generators:
        plus = np.zeros((n - 1, n - 1), dtype=np.int64)
        minus = np.zeros((n - 1, n - 1), dtype=np.int64)
        for h in range(1, n):
            img = int(g.table[gen, h])
            if img == 0:
                minus[:, h - 1] = 1
            else:
                plus[img - 1, h - 1] = 1
        acts.append(R.sub(R.lift(plus), R.lift(minus)))
    return ChainRepModule(g, R, acts, validate=False, dim=n - 1)


def reduce_mod_max(m: ChainRepModule) -> RepModule:
    """``M / u M`` as a module over the residue field."""
    k = m.ring.residue_field
    return RepModule(m.group, k, [m.ring.residue(a) for a in m.actions], validate=False, dim=m.dim)


# ---------------------------------------------------------------------------
# layers


@dataclass
class GradedPieces:
    """``pieces[i] = u^i M / u^(i+1) M`` over the residue field."""

    pieces: list = field(default_factory=list)

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    @property
    def dims(self):
        return [p.dim for p in self.pieces]


def subquotient(m: ChainRepModule, upper, lower) -> RepModule:
    """The k[pi]-module ``U / W`` for invariant R-submodules with ``u U <= W <= U``.

    ``upper`` and ``lower`` are generating rows.  The relations among the Howell
    rows of ``U`` modulo ``W`` come from the Howell form of ``[U | I ; W | 0]``;
    a k-basis of ``U/W`` is the set of rows not made redundant by earlier ones.
    Coordinates are read off from the Howell form of ``[B | I ; W | 0]``.
    """
    R, d = m.ring, m.dim
    U = HowellSpan(R, upper, ncols=d)
    Wspan = HowellSpan(R, lower, ncols=d)
    nu, nw = U.rows.shape[0], Wspan.rows.shape[0]
    keep = []
    if nu:
        stacked = R.zeros((nu + nw, d + nu))
        stacked[:nu, :d] = U.rows
        stacked[:nu, d:] = R.lift(np.eye(nu, dtype=np.int64))
        stacked[nu:, :d] = Wspan.rows
        H = HowellSpan(R, stacked)
        rel = H.rows[~R.entry_nonzero(H.rows[:, :d]).any(axis=1)][:, d:]
        # reversed columns: a row is redundant iff some relation ends at it
        dependent = set()
        if rel.shape[0]:
            _, piv = rref_array(R.residue(rel)[:, ::-1], R.p)
            dependent = {nu - 1 - c for c in piv}
        keep = [j for j in range(nu) if j not in dependent]
    r = len(keep)
    if r == 0:
        return RepModule(m.group, R.residue_field, [np.zeros((0, 0), dtype=np.int64)] * len(m.actions), validate=False, dim=0)
    B = U.rows[keep]
    top = R.zeros((r, d + r))
    top[:, :d] = B
    top[:, d:] = R.lift(np.eye(r, dtype=np.int64))
    bottom = R.zeros((nw, d + r))
    bottom[:, :d] = Wspan.rows
    aug = HowellSpan(R, np.concatenate([top, bottom]), ncols=d + r)
    acts = []
    for a in m.actions:
        imgs = R.matmul(B, _transpose(a))  # rows: a applied to each basis vector
        if np.any(R.entry_nonzero(U.reduce_rows(imgs))):
            raise InvalidModule("upper submodule is not invariant")
        x = R.zeros((r, d + r))
        x[:, :d] = imgs
        rem = aug.reduce_rows(x)
        if np.any(R.entry_nonzero(rem[:, :d])):
            raise InvalidModule("image escapes the subquotient")
        acts.append(R.residue(R.neg(rem[:, d:])).T % R.p)
    return RepModule(m.group, R.residue_field, acts, validate=False, dim=r)


def _transpose(a):
    return np.swapaxes(a, 0, 1)


def graded_pieces(m: ChainRepModule) -> GradedPieces:
    """Layers ``u^i M / u^(i+1) M`` for ``i = 0 .. t-1``."""
    R, d = m.ring, m.dim
    eye = R.lift(np.eye(d, dtype=np.int64))
    out = []
    for i in range(R.length):
        upper = R.mul(R.uniformizer_power(i), eye)
        lower = R.mul(R.uniformizer_power(i + 1), eye)
        out.append(subquotient(m, upper, lower))
    return GradedPieces(out)


def chain_class(m: ChainRepModule, seed: int = 1) -> CompositionMultiset:
    """Class of ``m`` in G0: the sum of the composition multisets of its layers."""
    kalg = group_algebra(m.group, m.ring.residue_field)
    reg = registry_for(kalg)
    total = CompositionMultiset(reg, [0] * len(reg))
    for piece in graded_pieces(m):
        if piece.dim:
            total = total + chop(piece, seed)
    return total


# ---------------------------------------------------------------------------
# PIMs


@dataclass(frozen=True, eq=False)
class ChainPIM:
    idempotent: object
    module: ChainRepModule
    simple: int


def cyclic_left_module(alg, e) -> ChainRepModule:
    """``R[pi] e`` for an idempotent ``e``, with an R-basis chosen by Nakayama."""
    R, g = alg.coeff, alg.group
    span = np.stack([alg.left_mul_array(x, e.coeffs) for x in range(g.order)])
    ech = Echelon(g.order, R.p)
    picks = []
    for i, v in enumerate(span):
        if ech.add(R.residue(v)):
            picks.append(i)
    B = span[picks]
    _, piv = rref_array(R.residue(B), R.p)
    inv = chain_inverse(R, B[:, piv])
    acts = []
    for gen in g.generators:
        imgs = np.stack([alg.left_mul_array(gen, b) for b in B])
        coords = R.matmul(imgs[:, piv], inv)  # row j: coordinates of gen * b_j
        if not np.array_equal(R.matmul(coords, B), imgs):
            raise InvalidModule("left ideal is not free on the chosen basis")
        acts.append(_transpose(coords).copy())
    return ChainRepModule(g, R, acts, validate=False, dim=len(picks))


def chain_pims(alg, seed: int = 1) -> list[ChainPIM]:
    """One PIM of R[pi] per simple of k[pi], by lifting residue-field idempotents."""
    if alg.is_field:
        raise UsageError("chain_pims needs chain-ring coefficients")
    key = ("chain_pims", seed)
    if key in alg._cache:
        return alg._cache[key]
    R = alg.coeff
    kalg = group_algebra(alg.group, R.residue_field)
    nil = radical_chain(alg)
    chosen = {}
    for idem in semisimple_primitive_idempotents(kalg, seed):
        chosen.setdefault(idem.simple, idem)
    out = []
    for i in range(len(registry_for(kalg))):
        e0 = alg.element(R.lift(chosen[i].lifted.coeffs))
        e, _ = lift_idempotent(alg, e0, nil)
        mod = cyclic_left_module(alg, e)
        mod.provenance = "PIM"
        mod.pim_multiplicities = tuple(int(j == i) for j in range(len(chosen)))
        out.append(ChainPIM(e, mod, i))
    alg._cache[key] = out
    return out


def chain_pim_sum(alg, mults, seed: int = 1) -> ChainRepModule:
    """``sum_i P_i^(m_i)`` with its multiplicities recorded."""
    pims = chain_pims(alg, seed)
    parts = [P.module for P, c in zip(pims, mults) for _ in range(c)]
    if not parts:
        raise UsageError("empty sum of PIMs")
    m = chain_direct_sum(*parts)
    m.pim_multiplicities = tuple(int(c) for c in mults)
    return m


@dataclass(frozen=True)
class ChainCartan:
    table: IntMatrix  # rows: PIMs of R[pi], columns: simples
    field_table: IntMatrix
    length: int
    det: int
    field_det: int

    @property
    def scaling_ok(self) -> bool:
        t = self.length
        return self.table.tolist() == [[t * x for x in r] for r in self.field_table.tolist()]

    @property
    def det_relation_ok(self) -> bool:
        return self.det == self.length ** self.table.rows * self.field_det


def cartan_chain(alg, seed: int = 1) -> ChainCartan:
    """Cartan matrix of R[pi] computed from the layers of each chain PIM."""
    from .grothendieck import cartan_table

    kalg = group_algebra(alg.group, alg.coeff.residue_field)
    rows = [list(chain_class(P.module, seed)) for P in chain_pims(alg, seed)]
    table = IntMatrix(rows, len(rows))
    ftable = cartan_table(kalg, seed)
    return ChainCartan(table, ftable, alg.coeff.length, determinant(table), determinant(ftable))


# ---------------------------------------------------------------------------
# normal Sylow subgroups


def lemma46_suite(ring, group: Group) -> dict:
    """Checks for a normal Sylow subgroup ``S``: ``I = sum (l - 1) R[pi]`` over ``l in S`` is
    two-sided and nilpotent, ``R[pi]/I = R[pi/S]``, and ``rad R[pi] = I + rad(R) R[pi]``."""
    p = ring.p
    syl = sylow_subgroup(group, p)
    if not syl.is_normal():
        raise SylowNotNormal(f"the Sylow {p}-subgroup is not normal")
    alg = group_algebra(group, ring)
    I = augmentation_ideal(alg, syl)
    checks = {}
    checks["two_sided"] = I.is_two_sided()
    idx = I.nilpotency_index()
    checks["nilpotent"] = idx is not None
    qgroup, proj = quotient_group(group, syl)
    hom_ok = all(
        proj[group.mul(a, b)] == qgroup.mul(proj[a], proj[b]) for a in range(group.order) for b in range(group.order)
    )
    phi = ring.zeros((group.order, qgroup.order))
    for x in range(group.order):
        phi[x, proj[x]] = ring.one()
    kernel = _left_kernel(ring, phi)
    checks["quotient"] = hom_ok and IdealBasis(alg, kernel) == I
    if is_field(ring):
        rad = radical(alg)
        target = I
    else:
        rad = radical_chain(alg)
        target = ideal_sum(I, maximal_ideal_extension(alg))
    checks["radical"] = rad == target
    return {
        "sylow_order": syl.order,
        "quotient_order": qgroup.order,
        "nilpotency_index": idx,
        "ideal_rows": I.dim,
        "checks": checks,
    }


def _left_kernel(ring, m):
    """Rows spanning ``{x : x m = 0}``."""
    if is_field(ring):
        from .exactla.fp import nullspace_array

        return nullspace_array(np.asarray(m).T % ring.p, ring.p)
    return chain_kernel(ring, m)


# ---------------------------------------------------------------------------
# lifting isomorphisms through u


@dataclass(frozen=True)
class Lemma35Result:
    applicable: bool  # reductions isomorphic
    holds: bool
    reduced_p: tuple
    reduced_q: tuple

    def __bool__(self):
        return self.holds


def lemma35_check(alg, P: ChainRepModule, Q: ChainRepModule, seed: int = 1) -> Lemma35Result:
    """If ``P/uP = Q/uQ`` then ``P`` and ``Q`` have equal PIM multiplicities."""
    if P.pim_multiplicities is None or Q.pim_multiplicities is None:
        raise UsageError("lemma35_check needs modules built as sums of chain PIMs")
    rp = tuple(decompose_projective(reduce_mod_max(P), seed))
    rq = tuple(decompose_projective(reduce_mod_max(Q), seed))
    applicable = rp == rq
    holds = (not applicable) or P.pim_multiplicities == Q.pim_multiplicities
    return Lemma35Result(applicable, holds, rp, rq)


def load_chain_module(path) -> ChainRepModule:
    from .modrep.module import _read_json, parse_module_data

    group, coeff, dim, mats = parse_module_data(_read_json(path))
    if is_field(coeff):
        raise UsageError("expected chain-ring coefficients")
    acts = [np.array(m, dtype=np.int64).reshape((dim, dim) + coeff.suffix) for m in mats]
    return ChainRepModule(group, coeff, acts, provenance="file", dim=dim)
