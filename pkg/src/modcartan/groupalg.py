"""Group algebras R[pi] over a prime field or a finite chain ring.

Elements are coefficient vectors indexed by group elements.  Ideals are kept
as canonical generating sets: RREF over a field, Howell form over a chain
ring, so two ideals are equal iff their bases are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotApproxIdempotent, ParentMismatch, UsageError
from .exactla.fp import Echelon, reduce_mod_rows, row_basis, solve_array
from .exactla.howell import HowellSpan
from .exactla.rings import PrimeField, is_field
from .groups import Group, Subgroup


class GroupAlgebra:
    """The group ring ``coeff[group]`` with basis the group elements."""

    def __init__(self, group: Group, coeff):
        self.group = group
        self.coeff = coeff
        self.dim = group.order
        self._cache: dict = {}

    @property
    def is_field(self) -> bool:
        return is_field(self.coeff)

    @property
    def residue_field(self) -> PrimeField:
        return self.coeff.residue_field

    @property
    def p(self) -> int:
        return self.coeff.p

    # -- elements ---------------------------------------------------------

    def element(self, coeffs) -> "AlgElement":
        a = self.coeff.reduce(np.array(coeffs, dtype=np.int64))
        if a.shape != (self.dim,) + self.coeff.suffix:
            raise UsageError(f"coefficient vector has shape {a.shape}")
        return AlgElement(self, a)

    def zero(self) -> "AlgElement":
        return AlgElement(self, self.coeff.zeros((self.dim,)))

    def basis_element(self, g: int, scalar: int = 1) -> "AlgElement":
        a = self.coeff.zeros((self.dim,))
        a[g] = self.coeff.scalar(scalar)
        return AlgElement(self, a)

    def one(self) -> "AlgElement":
        return self.basis_element(0)

    def group_sum(self) -> "AlgElement":
        """``u = sum of all group elements``."""
        return AlgElement(self, self.coeff.lift(np.ones(self.dim, dtype=np.int64)))

    def mul_arrays(self, a, b):
        R = self.coeff
        t = self.group.table
        out = R.zeros((self.dim,))
        nz = np.flatnonzero(R.entry_nonzero(a))
        for g in nz:
            idx = t[g]
            out[idx] = R.add(out[idx], R.mul(a[g], b))
        return out

    def left_mul_array(self, g: int, b):
        """Coefficients of ``g * b`` (a permutation of ``b``)."""
        out = np.empty_like(b)
        out[self.group.table[g]] = b
        return out

    def right_mul_array(self, b, g: int):
        out = np.empty_like(b)
        out[self.group.table[:, g]] = b
        return out

    def __repr__(self):
        return f"GroupAlgebra(order={self.dim}, coeff={self.coeff.spec()})"


@lru_cache(maxsize=None)
def group_algebra(group: Group, coeff) -> GroupAlgebra:
    """Shared algebra instance (caches and simple registries live on it)."""
    return GroupAlgebra(group, coeff)


@dataclass(frozen=True, eq=False)
class AlgElement:
    parent: GroupAlgebra
    coeffs: np.ndarray

    def _check(self, other):
        if not isinstance(other, AlgElement) or other.parent is not self.parent:
            raise ParentMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.parent, self.parent.coeff.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.parent, self.parent.coeff.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return AlgElement(self.parent, self.parent.coeff.neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            R = self.parent.coeff
            return AlgElement(self.parent, R.mul(R.scalar(other), self.coeffs))
        self._check(other)
        return AlgElement(self.parent, self.parent.mul_arrays(self.coeffs, other.coeffs))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, AlgElement)
            and other.parent is self.parent
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def is_central(self) -> bool:
        alg = self.parent
        return all(
            np.array_equal(alg.left_mul_array(g, self.coeffs), alg.right_mul_array(self.coeffs, g))
            for g in alg.group.generators
        )

    def residue(self) -> np.ndarray:
        """Coefficients reduced to the residue field."""
        return self.parent.coeff.residue(self.coeffs)

    def __repr__(self):
        return f"AlgElement({self.coeffs.tolist()})"


def mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


# ---------------------------------------------------------------------------
# ideals


class IdealBasis:
    """An R-submodule of R[pi] held canonically (RREF or Howell form).

    ``sidedness`` records which closure was claimed; :meth:`is_left_ideal`
    and :meth:`is_right_ideal` verify it on the group generators.
    """

    def __init__(self, algebra: GroupAlgebra, generators, sidedness: str = "two-sided"):
        self.algebra = algebra
        self.sidedness = sidedness
        R = algebra.coeff
        gens = np.asarray(generators, dtype=np.int64).reshape((-1, algebra.dim) + R.suffix)
        if algebra.is_field:
            self.basis = row_basis(gens % R.p, R.p) if gens.shape[0] else np.zeros((0, algebra.dim), dtype=np.int64)
            self._ech = None
            self.pivots = _pivots_of(self.basis)
            self._span = None
        else:
            self._span = HowellSpan(R, gens, ncols=algebra.dim)
            self.basis = self._span.rows
            self.pivots = self._span.pivots

    @property
    def dim(self) -> int:
        """F_p-dimension (fields) or number of Howell rows (chain rings)."""
        return self.basis.shape[0]

    def size(self) -> int:
        if self.algebra.is_field:
            return self.algebra.p ** self.dim
        return self._span.size()

    def contains(self, x) -> bool:
        x = x.coeffs if isinstance(x, AlgElement) else np.asarray(x, dtype=np.int64)
        if self.algebra.is_field:
            return not np.any(reduce_mod_rows(x, self.basis, self.pivots, self.algebra.p))
        return self._span.contains(x)

    def reduce(self, x):
        """Canonical representative of ``x`` modulo the ideal (fields only)."""
        if not self.algebra.is_field:
            raise UsageError("reduce() is only defined over a field")
        return reduce_mod_rows(x, self.basis, self.pivots, self.algebra.p)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other):
        return (
            isinstance(other, IdealBasis)
            and other.algebra is self.algebra
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash(self.basis.tobytes())

    def contains_ideal(self, other: "IdealBasis") -> bool:
        return all(self.contains(r) for r in other.basis)

    def is_left_ideal(self) -> bool:
        alg = self.algebra
        return all(self.contains(alg.left_mul_array(g, r)) for g in alg.group.generators for r in self.basis)

    def is_right_ideal(self) -> bool:
        alg = self.algebra
        return all(self.contains(alg.right_mul_array(r, g)) for g in alg.group.generators for r in self.basis)

    def is_two_sided(self) -> bool:
        return self.is_left_ideal() and self.is_right_ideal()

    def product(self, other: "IdealBasis") -> "IdealBasis":
        """The R-span of all products ``a*b`` (the ideal product for ideals)."""
        alg = self.algebra
        prods = [alg.mul_arrays(a, b) for a in self.basis for b in other.basis]
        if not prods:
            return IdealBasis(alg, alg.coeff.zeros((0, alg.dim)), self.sidedness)
        return IdealBasis(alg, np.stack(prods), self.sidedness)

    def nilpotency_index(self, cap=None):
        """Least ``d`` with ``I^d = 0``; None if not reached by ``cap`` (default R-length of the algebra + 1)."""
        alg = self.algebra
        if cap is None:
            cap = alg.dim * alg.coeff.length + 1
        if self.is_zero():
            return 1 if alg.dim else 0
        power = self
        for d in range(2, cap + 1):
            power = power.product(self)
            if power.is_zero():
                return d
        return None

    def powers(self, k):
        out = [self]
        for _ in range(k - 1):
            out.append(out[-1].product(self))
        return out

    def __repr__(self):
        return f"IdealBasis(rows={self.dim}, {self.sidedness})"


def _pivots_of(rref_rows):
    piv = []
    for r in rref_rows:
        nz = np.flatnonzero(r)
        piv.append(int(nz[0]))
    return piv


def ideal_sum(a: IdealBasis, b: IdealBasis) -> IdealBasis:
    return IdealBasis(a.algebra, np.concatenate([a.basis, b.basis]), a.sidedness)


# ---------------------------------------------------------------------------
# radicals


def radical(alg: GroupAlgebra, seed: int = 1) -> IdealBasis:
    """Jacobson radical over a field: common kernel of all simple representations."""
    if not alg.is_field:
        raise UsageError("radical() needs field coefficients; use radical_chain()")
    if "radical" in alg._cache:
        return alg._cache["radical"]
    from .exactla.fp import nullspace_array
    from .modrep.registry import registry_for

    reg = registry_for(alg)
    p = alg.p
    cols = [s.element_matrices.reshape(alg.dim, -1) for s in reg.simples]
    big = np.concatenate(cols, axis=1) if cols else np.zeros((alg.dim, 0), dtype=np.int64)
    # a lies in the radical iff sum_g a_g rho(g) = 0 for every simple rho
    ker = nullspace_array(big.T % p, p) if big.shape[1] else np.eye(alg.dim, dtype=np.int64)
    J = IdealBasis(alg, ker, "two-sided")
    alg._cache["radical"] = J
    return J


def radical_chain(alg: GroupAlgebra) -> IdealBasis:
    """Radical over a chain ring: preimage of rad(k[pi]) under reduction mod the maximal ideal."""
    if alg.is_field:
        return radical(alg)
    if "radical" in alg._cache:
        return alg._cache["radical"]
    R = alg.coeff
    kalg = group_algebra(alg.group, R.residue_field)
    Jk = radical(kalg)
    lifted = R.lift(Jk.basis)
    u = R.uniformizer_power(1)
    mgens = R.mul(u, R.lift(np.eye(alg.dim, dtype=np.int64)))
    J = IdealBasis(alg, np.concatenate([lifted.reshape((-1, alg.dim) + R.suffix), mgens]), "two-sided")
    alg._cache["radical"] = J
    return J


def maximal_ideal_extension(alg: GroupAlgebra) -> IdealBasis:
    """``rad(R) * R[pi]``, spanned by ``u * g``."""
    R = alg.coeff
    if alg.is_field:
        return IdealBasis(alg, np.zeros((0, alg.dim), dtype=np.int64))
    u = R.uniformizer_power(1)
    return IdealBasis(alg, R.mul(u, R.lift(np.eye(alg.dim, dtype=np.int64))))


def augmentation_ideal(alg: GroupAlgebra, sub: Subgroup) -> IdealBasis:
    """``I = sum over lambda in sub of (lambda - 1) R[pi]`` (a right ideal; two-sided if sub is normal)."""
    R = alg.coeff
    one = alg.one().coeffs
    gens = []
    for lam in sub.elements:
        if lam == 0:
            continue
        d = R.sub(alg.basis_element(lam).coeffs, one)
        for g in range(alg.dim):
            gens.append(alg.right_mul_array(d, g))
    if not gens:
        return IdealBasis(alg, R.zeros((0, alg.dim)), "two-sided")
    side = "two-sided" if sub.is_normal() else "right"
    return IdealBasis(alg, np.stack(gens), side)


# ---------------------------------------------------------------------------
# idempotents


@dataclass(frozen=True)
class PrimitiveIdempotent:
    """A primitive idempotent of A/J and its exact lift to A.

    ``ebar`` is the canonical representative modulo J; ``simple`` is the
    registry id of the simple module ``(A/J) ebar``.
    """

    ebar: AlgElement
    lifted: AlgElement
    simple: int


def lift_idempotent(alg: GroupAlgebra, ebar, nil: IdealBasis, max_steps: int = 64):
    """Lift an idempotent modulo a nilpotent ideal with ``e <- 3e^2 - 2e^3``.

    Returns ``(e, steps)``; ``e`` is an exact idempotent congruent to ``ebar``.
    """
    e = ebar if isinstance(ebar, AlgElement) else alg.element(ebar)
    if e.parent is not alg:
        raise ParentMismatch("idempotent belongs to another algebra")
    e2 = e * e
    if not nil.contains((e2 - e).coeffs):
        raise NotApproxIdempotent("e^2 - e does not lie in the given ideal")
    steps = 0
    while not e2 == e:
        if steps >= max_steps:
            raise NotApproxIdempotent("lifting did not converge; ideal is not nilpotent")
        e = 3 * e2 - 2 * (e2 * e)
        e2 = e * e
        steps += 1
    return e, steps


def semisimple_primitive_idempotents(alg: GroupAlgebra, seed: int = 1) -> list[PrimitiveIdempotent]:
    """Complete orthogonal primitive idempotents of A/J, each with an exact lift.

    Simple left ideals are split off one at a time inside ``(A/J) f`` where
    ``f`` is the complement of the idempotents found so far; each new
    idempotent ``e`` is the right identity of its ideal, orthogonalised as
    ``f e``.
    """
    if not alg.is_field:
        raise UsageError("idempotents of A/J are computed over the residue field")
    key = ("idempotents", seed)
    if key in alg._cache:
        return alg._cache[key]
    from .modrep.meataxe import find_simple_submodule
    from .modrep.registry import registry_for

    p = alg.p
    J = radical(alg)
    reg = registry_for(alg)
    rng = np.random.default_rng(seed)
    red = J.reduce
    f = red(alg.one().coeffs)
    found = []
    while np.any(f):
        module, basis = _left_ideal_module(alg, f, red)
        sub_basis, simple = find_simple_submodule(module, rng)
        L = (sub_basis @ basis) % p  # rows: elements of A (reduced mod J)
        # right identity of L: e = sum c_j l_j with l_i e = l_i for all i
        k = L.shape[0]
        prods = np.array([[red(alg.mul_arrays(L[i], L[j])) for j in range(k)] for i in range(k)])
        # prods[i, j] is a vector; equations over all coordinates
        a = prods.transpose(0, 2, 1).reshape(k * alg.dim, k)
        b = L.reshape(k * alg.dim)
        c = solve_array(a, b, p)
        if c is None:  # pragma: no cover - impossible in a semisimple algebra
            raise RuntimeError("minimal left ideal has no right identity")
        e = red((c @ L) % p)
        e = red(alg.mul_arrays(f, e))
        sid = reg.identify(simple)
        found.append(e)
        f = red((f - e) % p)
        found[-1] = (e, sid)
    out = []
    for e, sid in found:
        lifted, _ = lift_idempotent(alg, alg.element(e), J)
        out.append(PrimitiveIdempotent(alg.element(e), lifted, sid))
    alg._cache[key] = out
    return out


def _left_ideal_module(alg, f, red):
    """The left ideal (A/J) f as a module: returns ``(RepModule, basis rows in A)``."""
    from .modrep.module import RepModule

    p = alg.p
    ech = Echelon(alg.dim, p)
    queue = [f]
    ech.add(f)
    gens = alg.group.generators
    while queue:
        v = queue.pop()
        for g in gens:
            w = red(alg.left_mul_array(g, v))
            if ech.add(w):
                queue.append(w)
    basis = ech.rows
    piv = ech.pivots
    actions = []
    for g in gens:
        imgs = np.array([red(alg.left_mul_array(g, r)) for r in basis])
        # column j of the action = coordinates of g * basis_j
        actions.append(imgs[:, piv].T % p)
    module = RepModule(alg.group, alg.coeff, actions, provenance="derived", validate=False, dim=basis.shape[0])
    return module, basis
