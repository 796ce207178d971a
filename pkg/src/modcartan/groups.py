"""Finite groups as validated Cayley tables, plus subgroup machinery.

Elements are indices ``0..n-1`` with ``0`` the identity.  Subgroups are sorted
index tuples inside a parent group; :meth:`Subgroup.as_group` turns one into a
standalone :class:`Group` whose element ``i`` is ``elements[i]`` of the parent.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    NotAGroup,
    NotNormal,
    OrderLimitExceeded,
    SpecSyntaxError,
    UnsupportedGroup,
    UsageError,
)

MAX_ORDER = 64


def _closure(table: np.ndarray, gens) -> set[int]:
    seen = {0}
    queue = deque([0])
    gens = list(gens)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(table[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _greedy_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    span = {0}
    for x in range(1, n):
        if x not in span:
            gens.append(x)
            span = _closure(table, gens)
            if len(span) == n:
                break
    return gens


class Group:
    """A finite group given by its Cayley table.

    ``table[a, b]`` is the index of ``a*b``.  The generating sequence defaults
    to the greedy lexicographically least one; every element carries a
    shortest word in the generators found by breadth-first search.
    """

    def __init__(self, cayley, names=None, generators=None, validate=True):
        table = np.array(cayley, dtype=np.int64)
        if validate:
            _check_table(table)
        table.flags.writeable = False
        self.table = table
        self.order = table.shape[0]
        self.names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(self.order))
        if len(self.names) != self.order:
            raise NotAGroup("names list has the wrong length")
        if generators is None:
            generators = _greedy_generators(table)
        self.generators = tuple(int(g) for g in generators)
        if len(_closure(table, self.generators)) != self.order:
            raise NotAGroup("generators do not generate the group")
        self._bfs()

    def _bfs(self):
        n = self.order
        words: list = [None] * n
        parent: list = [None] * n
        words[0] = ()
        order = [0]
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for i, g in enumerate(self.generators):
                y = int(self.table[x, g])
                if words[y] is None:
                    words[y] = words[x] + (i,)
                    parent[y] = (x, i)
                    order.append(y)
                    queue.append(y)
        self.words = tuple(words)
        # (element, predecessor, generator slot) in BFS order, identity excluded
        self.bfs_steps = tuple((y, parent[y][0], parent[y][1]) for y in order[1:])

    # -- basic arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = int(np.flatnonzero(self.table[a] == 0)[0])
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def eval_word(self, word) -> int:
        x = 0
        for i in word:
            x = self.mul(x, self.generators[i])
        return x

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))

    def generated(self, elems) -> "Subgroup":
        return Subgroup(self, tuple(sorted(_closure(self.table, elems))))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.order)})
            seen.update(cls)
            out.append(tuple(cls))
        return out

    def key(self):
        return (self.table.tobytes(), self.order, self.generators)

    def __eq__(self, other):
        return isinstance(other, Group) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Group(order={self.order}, generators={self.generators})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element indices."""

    parent: Group
    elements: tuple
    maximal: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        els = tuple(sorted(int(e) for e in self.elements))
        object.__setattr__(self, "elements", els)
        if not els or els[0] != 0:
            raise NotAGroup("subgroup must contain the identity")
        idx = np.array(els)
        prods = self.parent.table[np.ix_(idx, idx)]
        bad = np.argwhere(~np.isin(prods, idx))
        if bad.size:
            a, b = (els[int(i)] for i in bad[0])
            raise NotAGroup("subset is not closed under multiplication", (a, b))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def embedding(self) -> tuple:
        return self.elements

    def __contains__(self, x):
        return x in self._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    @cached_property
    def as_group(self) -> Group:
        pos = {e: i for i, e in enumerate(self.elements)}
        t = self.parent.table
        table = [[pos[int(t[a, b])] for b in self.elements] for a in self.elements]
        names = [self.parent.names[e] for e in self.elements]
        return Group(table, names=names, validate=False)

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conj(x, h) in self._set for x in g.generators for h in self.elements)

    def conjugate(self, x: int) -> "Subgroup":
        g = self.parent
        return Subgroup(g, tuple(sorted(g.conj(x, h) for h in self.elements)))

    def conjugates(self) -> list["Subgroup"]:
        seen = {}
        for x in range(self.parent.order):
            c = self.conjugate(x)
            seen.setdefault(c.elements, c)
        return [seen[k] for k in sorted(seen)]

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.elements == other.elements
            and self.parent.key() == other.parent.key()
        )

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={self.elements})"


# ---------------------------------------------------------------------------
# validation


def _check_table(table: np.ndarray):
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup("Cayley table must be a nonempty square array")
    n = table.shape[0]
    if n > MAX_ORDER:
        raise OrderLimitExceeded(f"group order {n} exceeds {MAX_ORDER}")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("entries out of range")
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), target):
            j = _repeat_witness(table[i])
            raise NotAGroup("Latin square (row)", (i, j))
        if not np.array_equal(np.sort(table[:, i]), target):
            j = _repeat_witness(table[:, i])
            raise NotAGroup("Latin square (column)", (j, i))
    if not np.array_equal(table[0], target) or not np.array_equal(table[:, 0], target):
        raise NotAGroup("identity: row/column 0 must be the identity")
    for a in range(n):
        left = table[table[a]]  # (ab)c
        right = table[a][table]  # a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = (int(x) for x in bad[0])
            raise NotAGroup("associativity", (a, b, c))


def _repeat_witness(line):
    seen = {}
    for j, v in enumerate(line):
        if int(v) in seen:
            return j
        seen[int(v)] = j
    return 0


def validate_cayley(table, names=None) -> Group:
    """Build a :class:`Group` from a raw table, checking every axiom."""
    return Group(table, names=names, validate=True)


# ---------------------------------------------------------------------------
# named groups


def cyclic_group(n: int) -> Group:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return Group(table, names=names)


def dihedral_group(n: int) -> Group:
    """Dihedral group of order ``n`` (``n`` even): r^k s^e stored at index k + e*(n/2)."""
    if n < 2 or n % 2:
        raise UnsupportedGroup(f"D{n}: dihedral groups here have even order n >= 2")
    m = n // 2

    def mult(x, y):
        a, e = x % m, x // m
        b, f = y % m, y // m
        k = (a + (b if e == 0 else -b)) % m
        return k + ((e + f) % 2) * m

    table = [[mult(x, y) for y in range(n)] for x in range(n)]
    names = []
    for x in range(n):
        k, e = x % m, x // m
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        s = "s" if e else ""
        names.append((r + s) or "e")
    return Group(table, names=names)


def quaternion_group() -> Group:
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit products as (sign, unit)
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def parse(lbl):
        return (-1, lbl[1:]) if lbl.startswith("-") else (1, lbl)

    table = []
    for x in labels:
        sx, ux = parse(x)
        row = []
        for y in labels:
            sy, uy = parse(y)
            s, u = prod[(ux, uy)]
            row.append(labels.index(u if sx * sy * s == 1 else "-" + u))
        table.append(row)
    return Group(table, names=labels)


def _perm_group(perms) -> Group:
    perms = sorted(perms)
    pos = {p: i for i, p in enumerate(perms)}
    # (s t)(x) = s(t(x))
    table = [[pos[tuple(s[t[x]] for x in range(len(s)))] for t in perms] for s in perms]
    names = ["(" + ",".join(str(v) for v in p) + ")" for p in perms]
    return Group(table, names=names)


def symmetric_group(n: int) -> Group:
    return _perm_group(list(itertools.permutations(range(n))))


def _sign(perm) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def alternating_group(n: int) -> Group:
    return _perm_group([p for p in itertools.permutations(range(n)) if _sign(p) == 1])


def direct_product(g: Group, h: Group) -> Group:
    n, m = g.order, h.order
    if n * m > MAX_ORDER:
        raise OrderLimitExceeded(f"group order {n * m} exceeds {MAX_ORDER}")
    table = np.empty((n * m, n * m), dtype=np.int64)
    for a in range(n):
        for b in range(m):
            i = a * m + b
            table[i] = (g.table[a][:, None] * m + h.table[b][None, :]).reshape(-1)
    names = [f"({x},{y})" for x in g.names for y in h.names]
    return Group(table, names=names)


_TOKEN = re.compile(r"^(C|D|S|A)(\d+)$")


def _parse_factor(tok: str) -> Group:
    if tok == "Q8":
        return quaternion_group()
    m = _TOKEN.match(tok)
    if not m:
        raise SpecSyntaxError(f"cannot parse group factor {tok!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        if n < 1:
            raise SpecSyntaxError("C0 is not a group")
        if n > MAX_ORDER:
            raise OrderLimitExceeded(f"C{n} has order > {MAX_ORDER}")
        return cyclic_group(n)
    if kind == "D":
        if n > MAX_ORDER:
            raise OrderLimitExceeded(f"D{n} has order > {MAX_ORDER}")
        return dihedral_group(n)
    if kind == "S":
        if n < 1:
            raise SpecSyntaxError("S0 is not supported")
        if n > 4:
            raise OrderLimitExceeded(f"S{n} has order > {MAX_ORDER}")
        return symmetric_group(n)
    if n == 4:
        return alternating_group(4)
    raise UnsupportedGroup(f"A{n} is not supported (only A4)")


def load_table_file(path: str) -> Group:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read group table {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(f"group table {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "cayley" not in data:
        raise SpecSyntaxError("group table file must be an object with a 'cayley' key")
    table = data["cayley"]
    order = data.get("order", len(table))
    if order != len(table):
        raise NotAGroup(f"declared order {order} does not match table size {len(table)}")
    if order > MAX_ORDER:
        raise OrderLimitExceeded(f"group order {order} exceeds {MAX_ORDER}")
    return validate_cayley(table, names=data.get("names"))


def parse_group_spec(spec: str) -> Group:
    """Parse ``Cn | Dn | Q8 | Sn | A4 | spec x spec | table:<path>``."""
    if not isinstance(spec, str) or not spec.strip():
        raise SpecSyntaxError("empty group spec")
    spec = spec.strip()
    if spec.startswith("table:"):
        return load_table_file(spec[len("table:") :])
    tokens = [t.strip() for t in spec.split("x")]
    if any(not t for t in tokens):
        raise SpecSyntaxError(f"malformed product spec {spec!r}")
    g = _parse_factor(tokens[0])
    for tok in tokens[1:]:
        g = direct_product(g, _parse_factor(tok))
    return g


# ---------------------------------------------------------------------------
# subgroup searches


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroup(g: Group, p: int) -> Subgroup:
    """The Sylow p-subgroup with lexicographically least element list."""
    target = _p_part(g.order, p)
    if target == 1:
        return g.trivial()
    if target == g.order:
        return g.whole()
    p_elems = [x for x in range(g.order) if _p_part(g.element_order(x), p) == g.element_order(x)]
    cur = {0}
    while len(cur) < target:
        for x in p_elems:
            if x in cur:
                continue
            cand = _closure(g.table, list(cur) + [x])
            if _p_part(len(cand), p) == len(cand):
                cur = cand
                break
        else:  # pragma: no cover - cannot happen for a genuine group
            raise RuntimeError("Sylow search stalled")
    sub = Subgroup(g, tuple(sorted(cur)))
    return min(sub.conjugates(), key=lambda s: s.elements)


def cyclic_subgroups(g: Group) -> list[Subgroup]:
    seen = {}
    for x in range(g.order):
        s = g.generated([x])
        seen.setdefault(s.elements, s)
    return [seen[k] for k in sorted(seen, key=lambda e: (len(e), e))]


def cyclic_subgroup_classes(g: Group) -> list[Subgroup]:
    """One representative (lexicographically least) per conjugacy class of cyclic subgroups."""
    reps = []
    covered = set()
    for s in cyclic_subgroups(g):
        if s.elements in covered:
            continue
        conj = s.conjugates()
        covered.update(c.elements for c in conj)
        reps.append(conj[0])
    return sorted(reps, key=lambda s: (s.order, s.elements))


def elementary_abelian_subgroups(g: Group, p: int) -> list[Subgroup]:
    """All nontrivial elementary abelian p-subgroups; ``maximal`` is set on each."""
    order_p = [x for x in range(1, g.order) if g.element_order(x) == p]
    t = g.table
    found: dict = {}
    extendable: set = set()
    frontier = [(0,)]
    while frontier:
        nxt = []
        for e in frontier:
            idx = np.array(e)
            covered = set(e)
            for x in order_p:
                if x in covered:
                    continue
                if not np.array_equal(t[x, idx], t[idx, x]):
                    continue
                # <e, x> = union of x^k e, since x commutes with e and has order p
                parts = [idx]
                xk = x
                for _ in range(p - 1):
                    parts.append(t[xk, idx])
                    xk = int(t[xk, x])
                key = tuple(sorted(int(v) for v in np.concatenate(parts)))
                covered.update(key)
                extendable.add(e)
                if key not in found:
                    found[key] = True
                    nxt.append(key)
        frontier = nxt
    keys = sorted(found, key=lambda k: (len(k), k))
    return [Subgroup(g, k, maximal=k not in extendable) for k in keys]


def all_subgroups(g: Group) -> list[Subgroup]:
    """Every subgroup, by closing pairs of cyclic subgroups repeatedly (small groups only)."""
    found = {s.elements: s for s in cyclic_subgroups(g)}
    frontier = list(found)
    while frontier:
        nxt = []
        for k in frontier:
            for x in range(g.order):
                if x in k:
                    continue
                s = g.generated(list(k) + [x])
                if s.elements not in found:
                    found[s.elements] = s
                    nxt.append(s.elements)
        frontier = nxt
    return [found[k] for k in sorted(found, key=lambda e: (len(e), e))]


def quotient_group(g: Group, n: Subgroup):
    """``g / n`` with cosets ordered by least element; returns ``(group, projection)``."""
    if not n.is_normal():
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * g.order
    cosets = []
    for x in range(g.order):
        if coset_of[x] >= 0:
            continue
        c = sorted(g.mul(x, h) for h in n.elements)
        for y in c:
            coset_of[y] = len(cosets)
        cosets.append(c)
    reps = [c[0] for c in cosets]
    table = [[coset_of[g.mul(a, b)] for b in reps] for a in reps]
    names = ["{" + ",".join(g.names[y] for y in c) + "}" for c in cosets]
    q = Group(table, names=names)
    proj = tuple(coset_of)
    for a in range(g.order):
        for b in range(g.order):
            if proj[g.mul(a, b)] != q.mul(proj[a], proj[b]):  # pragma: no cover
                raise RuntimeError("projection is not a homomorphism")
    return q, proj


def word_for(g: Group, x: int) -> tuple[int, ...]:
    """Shortest generator word (BFS order) evaluating to ``x``."""
    if not 0 <= x < g.order:
        raise UsageError(f"element index {x} out of range")
    return g.words[x]
