"""Coefficient rings: prime fields and finite chain rings.

All rings share one vectorised arithmetic interface over numpy ``int64``
arrays.  Elements of ``Z/p^n`` (and of ``F_p``) are plain residues; elements of
``F_p[t]/(t^m)`` carry a trailing coefficient axis of length ``m`` (lowest
degree first).  ``suffix`` is the shape of a single scalar.
"""

from __future__ import annotations

import re

import numpy as np

from ..errors import UsageError

MAX_PRIME = 61


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class _ModQ:
    """Arithmetic for Z/q with q = p**length (scalars are 0-d arrays)."""

    p: int
    length: int
    q: int
    suffix: tuple = ()

    def zeros(self, shape):
        return np.zeros(tuple(shape), dtype=np.int64)

    def one(self):
        return np.int64(1)

    def scalar(self, k: int):
        return np.int64(k % self.q)

    def reduce(self, a):
        return np.asarray(a, dtype=np.int64) % self.q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def matmul(self, a, b):
        if a.shape[-1] * (self.q - 1) ** 2 >= 2**62:
            return (a.astype(object) @ b.astype(object) % self.q).astype(np.int64)
        return (a @ b) % self.q

    def is_zero(self, a) -> bool:
        return not np.any(a)

    def entry_nonzero(self, a):
        """Boolean mask of nonzero scalars in an array."""
        return a != 0

    def residue(self, a):
        return np.asarray(a, dtype=np.int64) % self.p

    def lift(self, a):
        return np.asarray(a, dtype=np.int64) % self.q

    def uniformizer_power(self, k: int):
        if k >= self.length:
            return np.int64(0)
        return np.int64(self.p**k)

    def valuation(self, a) -> int:
        a = int(a) % self.q
        if a == 0:
            return self.length
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def valuations(self, a):
        """Elementwise valuation of an array of scalars."""
        a = np.asarray(a, dtype=np.int64) % self.q
        v = np.zeros(a.shape, dtype=np.int64)
        for k in range(1, self.length + 1):
            v += a % self.p**k == 0
        return v

    def quo_array(self, a, v: int):
        """Elementwise ``a / u^v`` for entries of valuation at least ``v``."""
        return (np.asarray(a, dtype=np.int64) % self.q) // self.p**v

    def split(self, a):
        """Write ``a = u^v * w`` with ``w`` a unit; returns ``(v, w)``."""
        v = self.valuation(a)
        if v >= self.length:
            return v, np.int64(0)
        return v, np.int64((int(a) % self.q) // self.p**v)

    def unit_inverse(self, a):
        return np.int64(pow(int(a) % self.q, -1, self.q))

    def quo_rem(self, a, v: int):
        """``a = rem + u^v * quo`` with ``rem`` the canonical residue mod ``u^v``."""
        a = int(a) % self.q
        m = self.p**v
        return np.int64(a // m), np.int64(a % m)

    def elements(self):
        return [np.int64(k) for k in range(self.q)]


class PrimeField(_ModQ):
    """The prime field F_p, 2 <= p <= 61."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p) or p > MAX_PRIME:
            raise UsageError(f"F_p needs a prime 2 <= p <= {MAX_PRIME}, got {p}")
        self.p = p
        self.length = 1
        self.q = p

    @property
    def residue_field(self) -> "PrimeField":
        return self

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def spec(self) -> str:
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class ChainRing(_ModQ):
    """A finite chain ring: ``Z/p^n`` (kind ``ZmodPN``) or ``F_p[t]/(t^m)`` (``TruncPoly``).

    ``length`` is the composition length over itself; the uniformizer is
    ``p`` resp. ``t``.
    """

    KINDS = ("ZmodPN", "TruncPoly")

    def __init__(self, kind: str, p: int, length: int):
        if kind not in self.KINDS:
            raise UsageError(f"unknown chain ring kind {kind!r}")
        p, length = int(p), int(length)
        if not is_prime(p) or p > MAX_PRIME:
            raise UsageError(f"residue characteristic must be a prime <= {MAX_PRIME}")
        if length < 1:
            raise UsageError("chain ring length must be >= 1")
        self.kind = kind
        self.p = p
        self.length = length
        if kind == "ZmodPN":
            self.q = p**length
            self.suffix = ()
        else:
            self.q = p
            self.suffix = (length,)

    @property
    def residue_field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def size(self) -> int:
        return self.p**self.length

    def spec(self) -> str:
        if self.kind == "ZmodPN":
            return f"Z/{self.p}^{self.length}"
        return f"F{self.p}[t]/t^{self.length}"

    def __eq__(self, other):
        return (
            isinstance(other, ChainRing)
            and (other.kind, other.p, other.length) == (self.kind, self.p, self.length)
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.length))

    def __repr__(self):
        return f"ChainRing({self.kind!r}, {self.p}, {self.length})"

    # TruncPoly overrides; ZmodPN falls through to _ModQ.

    def zeros(self, shape):
        return np.zeros(tuple(shape) + self.suffix, dtype=np.int64)

    def one(self):
        if self.kind == "ZmodPN":
            return np.int64(1)
        e = np.zeros(self.length, dtype=np.int64)
        e[0] = 1
        return e

    def scalar(self, k: int):
        if self.kind == "ZmodPN":
            return np.int64(k % self.q)
        e = np.zeros(self.length, dtype=np.int64)
        e[0] = k % self.p
        return e

    def reduce(self, a):
        return np.asarray(a, dtype=np.int64) % self.q

    def mul(self, a, b):
        if self.kind == "ZmodPN":
            return (a * b) % self.q
        m = self.length
        a = np.asarray(a)
        b = np.asarray(b)
        out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (m,), dtype=np.int64)
        for i in range(m):
            ai = a[..., i]
            if not np.any(ai):
                continue
            for j in range(m - i):
                out[..., i + j] += ai * b[..., j]
        return out % self.p

    def matmul(self, a, b):
        if self.kind == "ZmodPN":
            return super().matmul(a, b)
        m = self.length
        rows, cols = a.shape[0], b.shape[1]
        out = np.zeros((rows, cols, m), dtype=np.int64)
        for i in range(m):
            ai = a[..., i]
            if not np.any(ai):
                continue
            for j in range(m - i):
                out[..., i + j] += ai @ b[..., j]
        return out % self.p

    def entry_nonzero(self, a):
        if self.kind == "ZmodPN":
            return a != 0
        return np.any(a != 0, axis=-1)

    def residue(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.kind == "ZmodPN":
            return a % self.p
        return a[..., 0] % self.p

    def lift(self, a):
        """Lift residues in F_p (an int array) to ring elements."""
        a = np.asarray(a, dtype=np.int64) % self.p
        if self.kind == "ZmodPN":
            return a
        out = np.zeros(a.shape + (self.length,), dtype=np.int64)
        out[..., 0] = a
        return out

    def uniformizer_power(self, k: int):
        if self.kind == "ZmodPN":
            return super().uniformizer_power(k)
        e = np.zeros(self.length, dtype=np.int64)
        if k < self.length:
            e[k] = 1
        return e

    def valuation(self, a) -> int:
        if self.kind == "ZmodPN":
            return super().valuation(a)
        nz = np.nonzero(np.asarray(a) % self.p)[0]
        return int(nz[0]) if nz.size else self.length

    def valuations(self, a):
        if self.kind == "ZmodPN":
            return super().valuations(a)
        nz = np.asarray(a) % self.p != 0
        return np.where(nz.any(axis=-1), nz.argmax(axis=-1), self.length)

    def quo_array(self, a, v: int):
        if self.kind == "ZmodPN":
            return super().quo_array(a, v)
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        out[..., : self.length - v] = a[..., v:]
        return out

    def split(self, a):
        if self.kind == "ZmodPN":
            return super().split(a)
        v = self.valuation(a)
        w = np.zeros(self.length, dtype=np.int64)
        if v < self.length:
            w[: self.length - v] = np.asarray(a)[v:]
        return v, w

    def unit_inverse(self, a):
        if self.kind == "ZmodPN":
            return super().unit_inverse(a)
        a = np.asarray(a, dtype=np.int64) % self.p
        if a[0] == 0:
            raise ZeroDivisionError("not a unit")
        # power series inversion, truncated
        m, p = self.length, self.p
        inv = np.zeros(m, dtype=np.int64)
        c0 = pow(int(a[0]), p - 2, p)
        inv[0] = c0
        for k in range(1, m):
            s = sum(int(a[i]) * int(inv[k - i]) for i in range(1, k + 1))
            inv[k] = (-s * c0) % p
        return inv

    def quo_rem(self, a, v: int):
        if self.kind == "ZmodPN":
            return super().quo_rem(a, v)
        a = np.asarray(a, dtype=np.int64)
        rem = np.zeros(self.length, dtype=np.int64)
        quo = np.zeros(self.length, dtype=np.int64)
        v = min(v, self.length)
        rem[:v] = a[:v]
        quo[: self.length - v] = a[v:]
        return quo, rem

    def elements(self):
        if self.kind == "ZmodPN":
            return super().elements()
        import itertools

        return [np.array(c, dtype=np.int64) for c in itertools.product(range(self.p), repeat=self.length)]


def residue_field(ring) -> PrimeField:
    return ring.residue_field


def is_field(ring) -> bool:
    return isinstance(ring, PrimeField)


_COEFF_RE = {
    "field": re.compile(r"F(\d+)"),
    "zmod": re.compile(r"Z/(\d+)\^(\d+)"),
    "trunc": re.compile(r"F(\d+)\[t\]/t\^(\d+)"),
}


def parse_coeff_spec(spec: str):
    """Parse ``F<p>``, ``Z/<p>^<n>`` or ``F<p>[t]/t^<m>``; length-1 chain rings become ``F<p>``."""
    s = spec.strip().replace(" ", "")
    m = _COEFF_RE["field"].fullmatch(s)
    if m:
        return PrimeField(int(m.group(1)))
    m = _COEFF_RE["zmod"].fullmatch(s)
    kind = "ZmodPN"
    if not m:
        m = _COEFF_RE["trunc"].fullmatch(s)
        kind = "TruncPoly"
    if not m:
        raise UsageError(f"bad coefficient spec {spec!r}; expected F<p>, Z/<p>^<n> or F<p>[t]/t^<m>")
    p, n = int(m.group(1)), int(m.group(2))
    if n == 1:
        return PrimeField(p)
    return ChainRing(kind, p, n)
