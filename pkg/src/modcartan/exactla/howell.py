"""Matrices over chain rings and the Howell normal form.

Row spans are R-submodules of R^n.  The Howell form is the canonical
generating set: rows sorted by pivot column, each pivot normalised to an exact
power of the uniformizer, entries above a pivot ``u^v`` reduced to the
canonical residue system mod ``u^v``, and closed under the Howell property
(multiplying a row by the annihilator of its pivot yields a combination of the
later rows).
"""

from __future__ import annotations

import numpy as np

from ..errors import NotInvertible


class ChainMatrix:
    """Immutable matrix over a chain ring."""

    __slots__ = ("ring", "_a")

    def __init__(self, entries, ring):
        self.ring = ring
        a = ring.reduce(np.array(entries, dtype=np.int64))
        want = 2 + len(ring.suffix)
        if a.ndim != want:
            if a.size == 0:
                a = a.reshape((0, 0) + ring.suffix)
            else:
                raise ValueError(f"expected a {want}-d array")
        a.flags.writeable = False
        self._a = a

    @property
    def a(self):
        return self._a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    def tolist(self):
        return self._a.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, ChainMatrix)
            and self.ring == other.ring
            and self._a.shape == other.a.shape
            and bool(np.array_equal(self._a, other.a))
        )

    def __hash__(self):
        return hash((self.ring, self._a.shape, self._a.tobytes()))

    def __str__(self):
        def fmt(x):
            if np.ndim(x) == 0:
                return str(int(x))
            return "(" + ",".join(str(int(c)) for c in x) + ")"

        return "\n".join(" ".join(fmt(x) for x in row) for row in self._a)

    def __repr__(self):
        return f"ChainMatrix({self.tolist()}, {self.ring!r})"


def howell_rows(ring, a):
    """Howell form of the row span of ``a`` as ``(rows array, pivots, valuations)``."""
    a = ring.reduce(np.asarray(a, dtype=np.int64))
    ncols = a.shape[1] if a.ndim >= 2 else 0
    t = ring.length
    work = a[ring.entry_nonzero(a).any(axis=1)] if a.ndim >= 2 else a
    result = []  # (col, val, row)
    for c in range(ncols):
        if not work.shape[0]:
            break
        vals = ring.valuations(work[:, c])
        best = int(np.argmin(vals))
        v = int(vals[best])
        if v >= t:
            continue
        _, unit = ring.split(work[best, c])
        prow = ring.mul(ring.unit_inverse(unit), work[best])
        rest = np.delete(work, best, axis=0)
        if rest.shape[0]:
            quo = ring.quo_array(rest[:, c], v)
            rest = ring.sub(rest, ring.mul(quo[:, None], prow[None, :]))
        if v > 0:
            extra = ring.mul(ring.uniformizer_power(t - v), prow)
            if np.any(extra):
                rest = np.concatenate([rest, extra[None]])
        work = rest[ring.entry_nonzero(rest).any(axis=1)]
        result.append((c, v, prow))
    pivots = [c for c, _, _ in result]
    vals = [v for _, v, _ in result]
    if not result:
        return ring.zeros((0, ncols)), pivots, vals
    rows = np.stack([r for _, _, r in result])
    # reduce entries above each pivot
    for i, (c, v) in enumerate(zip(pivots, vals)):
        if i:
            quo = ring.quo_array(rows[:i, c], v)
            rows[:i] = ring.sub(rows[:i], ring.mul(quo[:, None], rows[i][None, :]))
    return rows, pivots, vals


def howell_form(m: ChainMatrix) -> ChainMatrix:
    rows, _, _ = howell_rows(m.ring, m.a)
    return ChainMatrix(rows, m.ring)


class HowellSpan:
    """A submodule of R^n held in Howell form, with membership and reduction."""

    def __init__(self, ring, a, ncols=None):
        self.ring = ring
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            a = ring.zeros((0, ncols if ncols is not None else a.shape[1]))
        self.rows, self.pivots, self.vals = howell_rows(ring, a)
        self.ncols = self.rows.shape[1]

    def reduce(self, x):
        """Reduce ``x`` against the pivots; result is zero iff ``x`` is in the span."""
        ring = self.ring
        x = ring.reduce(np.array(x, dtype=np.int64))
        for c, v, row in zip(self.pivots, self.vals, self.rows):
            e = x[c]
            if not np.any(e):
                continue
            if ring.valuation(e) < v:
                return x
            quo, _ = ring.quo_rem(e, v)
            x = ring.sub(x, ring.mul(quo, row))
        return x

    def reduce_rows(self, xs):
        """``reduce`` applied to every row of ``xs``."""
        ring = self.ring
        xs = ring.reduce(np.array(xs, dtype=np.int64))
        active = np.ones(xs.shape[0], dtype=bool)
        for c, v, row in zip(self.pivots, self.vals, self.rows):
            active &= ring.valuations(xs[:, c]) >= v
            if active.any():
                quo = ring.quo_array(xs[active, c], v)
                xs[active] = ring.sub(xs[active], ring.mul(quo[:, None], row[None, :]))
        return xs

    def contains(self, x) -> bool:
        return not np.any(self.reduce(x))

    def key(self):
        return self.rows.tobytes(), self.rows.shape

    def __eq__(self, other):
        return isinstance(other, HowellSpan) and self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def size(self) -> int:
        """Number of elements in the span (|u^v R| = p^(t - v) per pivot)."""
        t = self.ring.length
        return self.ring.p ** sum(t - v for v in self.vals)

    def __len__(self):
        return self.rows.shape[0]


def chain_kernel(ring, m):
    """Generators of ``{x : x @ m = 0}`` (row vectors) via the Howell form of ``[m | I]``."""
    m = ring.reduce(np.asarray(m, dtype=np.int64))
    n, k = m.shape[0], m.shape[1]
    aug = ring.zeros((n, k + n))
    aug[:, :k] = m
    eye = ring.lift(np.eye(n, dtype=np.int64))
    aug[:, k:] = eye
    rows, pivots, _ = howell_rows(ring, aug)
    keep = [i for i, c in enumerate(pivots) if c >= k]
    if not keep:
        return ring.zeros((0, n))
    return rows[keep][:, k:]


def chain_inverse(ring, m):
    """Inverse of a square matrix over a chain ring (Gauss-Jordan on unit pivots)."""
    m = ring.reduce(np.array(m, dtype=np.int64))
    n = m.shape[0]
    a = ring.zeros((n, 2 * n))
    a[:, :n] = m
    a[:, n:] = ring.lift(np.eye(n, dtype=np.int64))
    for c in range(n):
        piv = None
        for i in range(c, n):
            if ring.valuation(a[i, c]) == 0:
                piv = i
                break
        if piv is None:
            raise NotInvertible("matrix is not invertible over the chain ring")
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
        a[c] = ring.mul(ring.unit_inverse(a[c, c]), a[c])
        for i in range(n):
            if i != c and np.any(a[i, c]):
                a[i] = ring.sub(a[i], ring.mul(a[i, c], a[c]))
    return a[:, n:]


__all__ = [
    "ChainMatrix",
    "HowellSpan",
    "chain_inverse",
    "chain_kernel",
    "howell_form",
    "howell_rows",
]
