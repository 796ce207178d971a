"""Integer matrices with arbitrary-precision entries and Smith normal form."""

from __future__ import annotations

from math import gcd


class IntMatrix:
    """Immutable integer matrix (Python ints, row-major)."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries, cols=None):
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged IntMatrix")
        self._rows = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return list(self._rows[i])

    def column(self, j):
        return [r[j] for r in self._rows]

    def transpose(self):
        return IntMatrix([[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().tolist()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self._rows], other.cols
        )

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._rows == other._rows and self.cols == other.cols

    def __hash__(self):
        return hash((self._rows, self.cols))

    def diagonal(self):
        return [self._rows[i][i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self):
        return all(self._rows[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self._rows)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def determinant(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = m.tolist() if isinstance(m, IntMatrix) else [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(a: IntMatrix):
    """Return ``(D, U, V)`` with ``D = U a V`` diagonal, ``d_1 | d_2 | ...``, ``d_i >= 0``.

    ``U`` and ``V`` are unimodular.
    """
    A = a.tolist()
    m, n = a.rows, a.cols
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return IntMatrix(A, n), IntMatrix(U, m), IntMatrix(V, n)


def elementary_divisors(a: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    d, _, _ = smith_normal_form(a)
    return [x for x in d.diagonal() if x != 0]


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Basis (as columns) of ``{x in Z^n : a x = 0}``."""
    d, _, v = smith_normal_form(a)
    r = sum(1 for x in d.diagonal() if x != 0)
    cols = [v.column(j) for j in range(r, a.cols)]
    return IntMatrix([[c[i] for c in cols] for i in range(a.cols)], len(cols))


def cokernel_structure(a: IntMatrix):
    """Structure of ``Z^rows / image(a)``: ``(torsion invariants > 1, free rank)``."""
    divs = elementary_divisors(a)
    free_rank = a.rows - len(divs)
    return [x for x in divs if x != 1], free_rank


def lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
