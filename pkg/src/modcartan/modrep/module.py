"""Finite-dimensional left modules over k[pi] given by generator matrices.

Vectors are columns and ``rho(gh) = rho(g) rho(h)``.  Matrices for arbitrary
group elements are built from the breadth-first generator words of the group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from ..errors import InvalidModule, UsageError
from ..exactla.fp import Echelon, nullspace_array, row_basis
from ..exactla.rings import is_field, parse_coeff_spec
from ..groups import Group, Subgroup, parse_group_spec

PROVENANCES = ("regular", "PIM", "induced", "file", "derived")


class RepModule:
    """A k[pi]-module: one invertible ``dim x dim`` matrix per group generator."""

    def __init__(self, group: Group, field, actions, provenance: str = "derived", validate: bool = True, dim=None):
        if not is_field(field):
            raise UsageError("RepModule needs field coefficients; use ChainRepModule over chain rings")
        if provenance not in PROVENANCES:
            raise UsageError(f"unknown provenance {provenance!r}")
        self.group = group
        self.field = field
        self.provenance = provenance
        acts = [np.array(a, dtype=np.int64) % field.p for a in actions]
        if len(acts) != len(group.generators):
            raise InvalidModule(f"expected {len(group.generators)} action matrices, got {len(acts)}")
        dims = {a.shape for a in acts}
        if len(dims) > 1 or any(len(s) != 2 or s[0] != s[1] for s in dims):
            raise InvalidModule("action matrices must be square and of equal size")
        if dim is None:
            if not acts:
                raise InvalidModule("dim must be given for a group without generators")
            dim = acts[0].shape[0]
        if acts and acts[0].shape[0] != dim:
            raise InvalidModule(f"action matrices are not {dim}x{dim}")
        self.dim = int(dim)
        for a in acts:
            a.flags.writeable = False
        self.actions = tuple(acts)
        if validate:
            self.validate()

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def algebra(self):
        from ..groupalg import group_algebra

        return group_algebra(self.group, self.field)

    @cached_property
    def element_matrices(self) -> np.ndarray:
        """``E[g] = rho(g)`` for every group element, shape ``(n, dim, dim)``."""
        n, d, p = self.group.order, self.dim, self.p
        E = np.zeros((n, d, d), dtype=np.int64)
        E[0] = np.eye(d, dtype=np.int64)
        for y, x, slot in self.group.bfs_steps:
            E[y] = (E[x] @ self.actions[slot]) % p
        E.flags.writeable = False
        return E

    def act(self, g: int) -> np.ndarray:
        return self.element_matrices[g]

    def algebra_action(self, coeffs) -> np.ndarray:
        """Matrix of ``sum_g c_g g``."""
        c = np.asarray(coeffs, dtype=np.int64)
        return np.tensordot(c, self.element_matrices, axes=1) % self.p

    def validate(self):
        """Check every Cayley relation ``rho(g) rho(h) = rho(gh)``."""
        E = self.element_matrices
        t = self.group.table
        p = self.p
        for slot, gen in enumerate(self.group.generators):
            if not np.array_equal(E[gen], self.actions[slot]):
                raise InvalidModule(f"generator {slot} disagrees with its word")
        for g in range(self.group.order):
            prod = np.matmul(E[g], E) % p
            bad = np.flatnonzero(np.any(prod != E[t[g]], axis=(1, 2)))
            if bad.size:
                raise InvalidModule(f"relation fails for the pair ({g}, {int(bad[0])})")

    def __eq__(self, other):
        return (
            isinstance(other, RepModule)
            and other.group == self.group
            and other.field == self.field
            and len(other.actions) == len(self.actions)
            and all(np.array_equal(a, b) for a, b in zip(self.actions, other.actions))
        )

    def __hash__(self):
        return hash((self.group, self.field, tuple(a.tobytes() for a in self.actions)))

    def __repr__(self):
        return f"RepModule(dim={self.dim}, group order={self.group.order}, {self.field.spec()}, {self.provenance})"


# ---------------------------------------------------------------------------
# constructions


def regular_module(alg) -> RepModule:
    """The left regular module of a group algebra over a field."""
    g = alg.group
    n = g.order
    acts = []
    for gen in g.generators:
        m = np.zeros((n, n), dtype=np.int64)
        m[g.table[gen], np.arange(n)] = 1
        acts.append(m)
    return RepModule(g, alg.coeff, acts, provenance="regular", validate=False, dim=n)


def trivial_module(group: Group, field) -> RepModule:
    return RepModule(group, field, [np.eye(1, dtype=np.int64)] * len(group.generators), validate=False, dim=1)


def zero_module(group: Group, field) -> RepModule:
    return RepModule(group, field, [np.zeros((0, 0), dtype=np.int64)] * len(group.generators), validate=False, dim=0)


@dataclass(frozen=True, eq=False)
class Submodule:
    """A submodule: RREF basis rows (ambient coordinates) and its own action."""

    basis: np.ndarray
    pivots: tuple
    module: RepModule

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def spin_echelon(mats, vectors, p: int, n: int) -> Echelon:
    """Closure of ``vectors`` under the matrices, as an incremental echelon basis."""
    ech = Echelon(n, p)
    queue = []
    for v in vectors:
        v = np.asarray(v, dtype=np.int64) % p
        if ech.add(v):
            queue.append(v)
    while queue and ech.dim < n:
        v = queue.pop()
        for a in mats:
            w = (a @ v) % p
            if ech.add(w):
                queue.append(w)
    return ech


def spin(m: RepModule, vectors) -> Submodule:
    """Smallest submodule containing ``vectors``."""
    vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, m.dim)
    ech = spin_echelon(m.actions, vecs, m.p, m.dim)
    return submodule(m, ech.rows, ech.pivots)


def submodule(m: RepModule, basis, pivots=None) -> Submodule:
    """Submodule spanned by ``basis`` rows (must be invariant; the basis is put in RREF)."""
    p = m.p
    basis = row_basis(np.asarray(basis, dtype=np.int64).reshape(-1, m.dim), p)
    piv = [int(np.flatnonzero(r)[0]) for r in basis]
    acts = [((a @ basis.T) % p)[piv, :] for a in m.actions]
    if basis.shape[0] == 0:
        acts = [np.zeros((0, 0), dtype=np.int64) for _ in m.actions]
    else:
        for a, c in zip(m.actions, acts):
            if np.any((a @ basis.T - basis.T @ c) % p):
                raise InvalidModule("basis does not span an invariant subspace")
    return Submodule(basis, tuple(piv), RepModule(m.group, m.field, acts, validate=False, dim=basis.shape[0]))


def quotient(m: RepModule, basis) -> RepModule:
    """``m / span(basis)`` with basis the unit vectors at the non-pivot columns."""
    p = m.p
    basis = row_basis(np.asarray(basis, dtype=np.int64).reshape(-1, m.dim), p)
    piv = [int(np.flatnonzero(r)[0]) for r in basis]
    free = [c for c in range(m.dim) if c not in set(piv)]
    acts = []
    for a in m.actions:
        x = a[:, free].T  # images of the free unit vectors, as rows
        if piv:
            x = (x - x[:, piv] @ basis) % p
        acts.append(x[:, free].T.copy())
    if not free:
        acts = [np.zeros((0, 0), dtype=np.int64) for _ in m.actions]
    return RepModule(m.group, m.field, acts, validate=False, dim=len(free))


def direct_sum(*mods: RepModule) -> RepModule:
    if not mods:
        raise UsageError("direct_sum needs at least one module")
    g, f = mods[0].group, mods[0].field
    for m in mods[1:]:
        if m.group != g or m.field != f:
            raise UsageError("direct_sum of modules over different algebras")
    d = sum(m.dim for m in mods)
    acts = []
    for slot in range(len(g.generators)):
        a = np.zeros((d, d), dtype=np.int64)
        off = 0
        for m in mods:
            a[off : off + m.dim, off : off + m.dim] = m.actions[slot]
            off += m.dim
        acts.append(a)
    return RepModule(g, f, acts, validate=False, dim=d)


def tensor_diagonal(m: RepModule, n: RepModule) -> RepModule:
    """``m (x) n`` with ``g`` acting by ``rho_m(g) (x) rho_n(g)``."""
    if m.group != n.group or m.field != n.field:
        raise UsageError("tensor product of modules over different algebras")
    acts = [np.kron(a, b) % m.p for a, b in zip(m.actions, n.actions)]
    return RepModule(m.group, m.field, acts, validate=False, dim=m.dim * n.dim)


def restrict(m: RepModule, sub: Subgroup) -> RepModule:
    """Restriction to ``sub`` (a module over ``sub.as_group``)."""
    if sub.parent != m.group:
        raise UsageError("subgroup of a different group")
    h = sub.as_group
    E = m.element_matrices
    acts = [E[sub.elements[gen]] for gen in h.generators]
    return RepModule(h, m.field, acts, validate=False, dim=m.dim)


def coset_representatives(sub: Subgroup):
    """Left coset representatives ``t_i`` (least element of each coset) and the coset index map."""
    g = sub.parent
    t = g.table
    which = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if which[x] < 0:
            which[t[x, list(sub.elements)]] = len(reps)
            reps.append(x)
    return reps, which


def induce(n: RepModule, sub: Subgroup) -> RepModule:
    """Induced module ``k[pi] (x)_{k[sub]} n`` with basis ``t_i (x) b_k`` (coset-major)."""
    g = sub.parent
    if n.group != sub.as_group:
        raise UsageError("module is not over the given subgroup")
    reps, which = coset_representatives(sub)
    pos = {e: i for i, e in enumerate(sub.elements)}
    En = n.element_matrices
    d, r = n.dim, len(reps)
    acts = []
    for gen in g.generators:
        a = np.zeros((r * d, r * d), dtype=np.int64)
        for i, ti in enumerate(reps):
            x = g.mul(gen, ti)
            j = int(which[x])
            h = g.mul(g.inv(reps[j]), x)
            a[j * d : (j + 1) * d, i * d : (i + 1) * d] = En[pos[h]]
        acts.append(a)
    return RepModule(g, n.field, acts, provenance="induced", validate=False, dim=r * d)


def hom_space(m: RepModule, n: RepModule) -> list[np.ndarray]:
    """Basis of ``{X : X rho_m(g) = rho_n(g) X}``, each ``X`` of shape ``(n.dim, m.dim)``."""
    if m.group != n.group or m.field != n.field:
        raise UsageError("hom_space of modules over different algebras")
    p, dm, dn = m.p, m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    # column-major vec: vec(X A) = (A^T (x) I) vec X, vec(B X) = (I (x) B) vec X
    eqs = [
        (np.kron(a.T, np.eye(dn, dtype=np.int64)) - np.kron(np.eye(dm, dtype=np.int64), b)) % p
        for a, b in zip(m.actions, n.actions)
    ]
    if not eqs:
        ker = np.eye(dm * dn, dtype=np.int64)
    else:
        ker = nullspace_array(np.concatenate(eqs), p)
    return [v.reshape(dm, dn).T.copy() for v in ker]


def endomorphism_dim(m: RepModule) -> int:
    return len(hom_space(m, m))


def annihilator_rows(rows, n: int, p: int) -> np.ndarray:
    """Rows spanning ``{x : r . x = 0 for every row r}``."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    if rows.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return nullspace_array(rows, p)


def dual(m: RepModule) -> RepModule:
    """Contragredient module, ``g`` acting by ``rho(g^-1)^T``."""
    E = m.element_matrices
    acts = [E[m.group.inv(gen)].T.copy() for gen in m.group.generators]
    return RepModule(m.group, m.field, acts, validate=False, dim=m.dim)


# ---------------------------------------------------------------------------
# files


def load_module(path) -> RepModule:
    """Read a module file; chain-ring coefficients are rejected here (see artinring)."""
    data = _read_json(path)
    group, coeff, dim, mats = parse_module_data(data)
    if not is_field(coeff):
        raise UsageError("this command needs a module over a prime field")
    return RepModule(
        group, coeff, [np.array(m, dtype=np.int64).reshape(dim, dim) for m in mats], provenance="file", dim=dim
    )


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read module file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"module file is not valid JSON: {exc}") from exc


def parse_module_data(data):
    """Validate the JSON layout; returns ``(group, coeff, dim, matrices by generator slot)``."""
    if not isinstance(data, dict):
        raise UsageError("module file must hold a JSON object")
    for key in ("group", "coeff", "dim", "actions"):
        if key not in data:
            raise UsageError(f"module file lacks {key!r}")
    group = parse_group_spec(str(data["group"]))
    coeff = parse_coeff_spec(str(data["coeff"]))
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise UsageError("'dim' must be a nonnegative integer")
    k = len(group.generators)
    mats = [None] * k
    for entry in data["actions"]:
        try:
            i = entry["generator"]
            mat = entry["matrix"]
        except (TypeError, KeyError) as exc:
            raise UsageError("each action needs 'generator' and 'matrix'") from exc
        if not isinstance(i, int) or not 0 <= i < k:
            raise UsageError(f"generator index {i!r} out of range 0..{k - 1}")
        if mats[i] is not None:
            raise UsageError(f"generator {i} given twice")
        arr = np.array(mat, dtype=object)
        if arr.shape[:2] != (dim, dim):
            raise UsageError(f"matrix for generator {i} is not {dim}x{dim}")
        mats[i] = mat
    if any(m is None for m in mats):
        raise UsageError("an action matrix is missing")
    return group, coeff, dim, mats


def module_to_json(m, group_spec: str) -> dict:
    """Serializable form of a module; ``group_spec`` names the group it lives over."""
    coeff = getattr(m, "field", None) or m.ring
    return {
        "group": group_spec,
        "coeff": coeff.spec(),
        "dim": m.dim,
        "actions": [{"generator": i, "matrix": np.asarray(a).tolist()} for i, a in enumerate(m.actions)],
    }


def save_module(m, group_spec: str, path):
    Path(path).write_text(json.dumps(module_to_json(m, group_spec)))


__all__ = [
    "RepModule",
    "Submodule",
    "annihilator_rows",
    "coset_representatives",
    "direct_sum",
    "dual",
    "endomorphism_dim",
    "hom_space",
    "induce",
    "load_module",
    "module_to_json",
    "quotient",
    "regular_module",
    "restrict",
    "save_module",
    "spin",
    "submodule",
    "tensor_diagonal",
    "trivial_module",
    "zero_module",
]
