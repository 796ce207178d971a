"""Dense matrices over F_p.

The public :class:`FpMatrix` wraps a read-only ``int64`` array.  The array
level helpers (``rref_array``, ``nullspace_array``, ...) are what the rest of
the package calls in hot loops.
"""

from __future__ import annotations

import numpy as np

from ..errors import NonSquare, NotInvertible
from .rings import PrimeField


def as_field(field) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


class FpMatrix:
    """Immutable matrix with entries in [0, p)."""

    __slots__ = ("_a", "field")

    def __init__(self, entries, field):
        self.field = as_field(field)
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        a %= self.field.p
        a.flags.writeable = False
        self._a = a

    @classmethod
    def zeros(cls, rows, cols, field):
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n, field):
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def a(self) -> np.ndarray:
        return self._a

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    def tolist(self):
        return self._a.tolist()

    def __matmul__(self, other):
        return FpMatrix((self._a @ other.a) % self.p, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and self.field == other.field
            and self._a.shape == other.a.shape
            and bool(np.array_equal(self._a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self._a.shape, self._a.tobytes()))

    def __str__(self):
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self._a)

    def __repr__(self):
        return f"FpMatrix({self.tolist()}, p={self.p})"


# ---------------------------------------------------------------------------
# array level


def rref_array(a, p: int):
    """Reduced row echelon form mod p.

    Returns ``(r, pivots)`` where ``r`` keeps the input shape (zero rows at
    the bottom) and ``pivots`` lists the pivot columns.
    """
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def row_basis(a, p: int) -> np.ndarray:
    """RREF rows spanning the row space (zero rows dropped)."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    r, piv = rref_array(a, p)
    return r[: len(piv)]


def rank_array(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_array(a, p)[1])


def nullspace_array(a, p: int) -> np.ndarray:
    """Rows form a basis of ``{v : a @ v = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_array(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def solve_array(a, b, p: int):
    """One solution ``x`` of ``a @ x = b`` (free variables set to zero), or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([a, b])
    r, piv = rref_array(aug, p)
    n = a.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n]
    return x


def inverse_array(a, p: int) -> np.ndarray:
    n = a.shape[0]
    r, piv = rref_array(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise NotInvertible("singular matrix")
    return r[:, n:]


def reduce_mod_rows(v, basis, pivots, p: int):
    """Reduce vectors ``v`` (rows) modulo the span of an RREF ``basis``."""
    if len(pivots) == 0:
        return np.asarray(v, dtype=np.int64) % p
    v = np.asarray(v, dtype=np.int64)
    return (v - v[..., pivots] @ basis) % p


class Echelon:
    """Incrementally grown RREF basis of a subspace of F_p^n."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v):
        if not self.pivots:
            return np.asarray(v, dtype=np.int64) % self.p
        return (v - v[self.pivots] @ self.rows) % self.p

    def add(self, v) -> bool:
        """Insert ``v``; returns True if it enlarged the space."""
        w = self.reduce(np.asarray(v, dtype=np.int64))
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = (w * pow(int(w[c]), self.p - 2, self.p)) % self.p
        if self.pivots:
            col = self.rows[:, c]
            self.rows = (self.rows - np.outer(col, w)) % self.p
        pos = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, pos, w, axis=0)
        self.pivots.insert(pos, c)
        return True

    def contains(self, v) -> bool:
        return not np.any(self.reduce(np.asarray(v, dtype=np.int64)))


def mat_pow_poly(coeffs, m, p: int) -> np.ndarray:
    """Evaluate a polynomial (lowest degree first) at the square matrix ``m``."""
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(list(coeffs)):
        out = (out @ m + int(c) * eye) % p
    return out


def charpoly_array(m, p: int) -> list[int]:
    """Characteristic polynomial via reduction to upper Hessenberg form."""
    h = np.array(m, dtype=np.int64) % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1 :, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            u = (int(h[k, j]) * inv) % p
            if u:
                h[k] = (h[k] - u * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + u * h[:, k]) % p
    # recurrence over leading principal submatrices
    polys = [[1]]
    for mm in range(1, n + 1):
        k = mm - 1
        cur = _pmul_lin(polys[k], -int(h[k, k]), p)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = (prod * int(h[i + 1, i])) % p
            if prod == 0:
                break
            coef = (int(h[i, k]) * prod) % p
            if coef:
                cur = _psub_scaled(cur, polys[i], coef, p)
        polys.append(cur)
    return polys[n]


def _pmul_lin(a, c, p):
    # (x + c) * a
    out = [0] * (len(a) + 1)
    for i, ai in enumerate(a):
        out[i + 1] = (out[i + 1] + ai) % p
        out[i] = (out[i] + c * ai) % p
    return out


def _psub_scaled(a, b, c, p):
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = (out[i] - c * bi) % p
    return out


# ---------------------------------------------------------------------------
# public operations on FpMatrix


def rref(m: FpMatrix):
    """Return ``(rref(m), pivot columns, rank)``."""
    r, piv = rref_array(m.a, m.p)
    return FpMatrix(r, m.field), tuple(piv), len(piv)


def nullspace(m: FpMatrix) -> FpMatrix:
    """Basis of the right kernel ``{v : m v = 0}``, one vector per row."""
    return FpMatrix(nullspace_array(m.a, m.p).reshape(-1, m.cols), m.field)


def charpoly(m: FpMatrix):
    from .poly import FpPoly

    if m.rows != m.cols:
        raise NonSquare(f"charpoly of a {m.rows}x{m.cols} matrix")
    return FpPoly(charpoly_array(m.a, m.p), m.field)
