"""Univariate polynomials over F_p and Berlekamp factorization.

Polynomials are coefficient lists, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import numpy as np

from ..errors import ZeroPolynomial
from .fp import as_field, nullspace_array


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def padd(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def psub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv) % p
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        a = trim(a)
    return trim(q), a


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [(c * inv) % p for c in a]


def pgcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return monic(a, p)


def pderiv(a, p):
    return trim([(i * a[i]) % p for i in range(1, len(a))])


def ppowmod(a, e, m, p):
    result = [1]
    base = pdivmod(a, m, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, p), m, p)[1]
        base = pdivmod(pmul(base, base, p), m, p)[1]
        e >>= 1
    return result


def _pth_root(a, p):
    # a(x) = b(x^p); over F_p, b^p = b(x^p)
    return [a[i] for i in range(0, len(a), p)]


def squarefree_decomposition(f, p):
    """Monic ``f`` as a list of (squarefree factor, exponent)."""
    out = []
    if deg(f) < 1:
        return out
    d = pderiv(f, p)
    if not d:
        for g, e in squarefree_decomposition(_pth_root(f, p), p):
            out.append((g, e * p))
        return out
    c = pgcd(f, d, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if deg(z) > 0:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if deg(c) > 0:
        for g, e in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def berlekamp(f, p):
    """Irreducible factors of a monic squarefree ``f``."""
    n = deg(f)
    if n <= 1:
        return [f]
    # row i: x^(i p) mod f
    q = np.zeros((n, n), dtype=np.int64)
    xp = ppowmod([0, 1], p, f, p)
    cur = [1]
    for i in range(n):
        q[i, : len(cur)] = cur
        cur = pdivmod(pmul(cur, xp, p), f, p)[1]
    # v with v Q = v, i.e. (Q - I)^T v = 0
    kernel = nullspace_array(((q - np.eye(n, dtype=np.int64)) % p).T, p)
    r = kernel.shape[0]
    factors = [f]
    if r == 1:
        return factors
    for vec in kernel:
        v = trim([int(c) for c in vec])
        if deg(v) < 1:
            continue
        new = []
        for h in factors:
            if deg(h) <= 1:
                new.append(h)
                continue
            # v^p - v = prod_s (v - s) is divisible by h, and h is squarefree
            for s in range(p):
                g = pgcd(h, psub(v, [s], p), p)
                if deg(g) > 0:
                    new.append(g)
        factors = new
        if len(factors) == r:
            break
    return factors


def factor_list(f, p):
    """Sorted ``[(irreducible monic factor, exponent)]`` of a nonzero ``f``."""
    f = trim([c % p for c in f])
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    f = monic(f, p)
    out = []
    for g, e in squarefree_decomposition(f, p):
        for h in berlekamp(g, p):
            out.append((tuple(monic(h, p)), e))
    merged = {}
    for h, e in out:
        merged[h] = merged.get(h, 0) + e
    return sorted(merged.items(), key=lambda it: (len(it[0]), it[0]))


def is_irreducible(f, p) -> bool:
    """Rabin-style test: no factor of degree <= deg/2 divides ``f``."""
    f = monic(trim(f), p)
    n = deg(f)
    if n < 1:
        return False
    xq = [0, 1]
    for _ in range(n // 2):
        xq = ppowmod(xq, p, f, p)
        if deg(pgcd(f, psub(xq, [0, 1], p), p)) > 0:
            return False
    return True


class FpPoly:
    """Immutable polynomial over F_p, coefficients lowest degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        self.field = as_field(field)
        self.coeffs = tuple(trim(int(c) % self.field.p for c in coeffs))

    @property
    def p(self):
        return self.field.p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other):
        return FpPoly(pmul(list(self.coeffs), list(other.coeffs), self.p), self.field)

    def __add__(self, other):
        return FpPoly(padd(list(self.coeffs), list(other.coeffs), self.p), self.field)

    def __sub__(self, other):
        return FpPoly(psub(list(self.coeffs), list(other.coeffs), self.p), self.field)

    def __pow__(self, e: int):
        out = FpPoly([1], self.field)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = pdivmod(list(self.coeffs), list(other.coeffs), self.p)
        return FpPoly(q, self.field), FpPoly(r, self.field)

    def __eq__(self, other):
        return isinstance(other, FpPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __call__(self, m):
        """Evaluate at a square matrix (FpMatrix or array)."""
        from .fp import FpMatrix, mat_pow_poly

        if isinstance(m, FpMatrix):
            return FpMatrix(mat_pow_poly(self.coeffs, m.a, self.p), self.field)
        return mat_pow_poly(self.coeffs, np.asarray(m), self.p)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def factor_poly(f: FpPoly):
    """Factor ``f`` into monic irreducibles: list of ``(FpPoly, exponent)``."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    return [(FpPoly(h, f.field), e) for h, e in factor_list(list(f.coeffs), f.p)]


def companion(f: FpPoly):
    """Companion matrix of a monic polynomial (charpoly equals ``f``)."""
    from .fp import FpMatrix

    c = f.coeffs
    n = len(c) - 1
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        m[i, i - 1] = 1
    for i in range(n):
        m[i, n - 1] = (-c[i]) % f.p
    return FpMatrix(m, f.field)
