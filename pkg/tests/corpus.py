"""Field modules drawn from the default corpus, shared by several test files."""

from __future__ import annotations

from functools import lru_cache

from modcartan.exactla.rings import PrimeField
from modcartan.groupalg import group_algebra
from modcartan.groups import cyclic_subgroup_classes, parse_group_spec
from modcartan.modrep import induce, pim_modules, registry_for, regular_module, trivial_module
from modcartan.verify import DEFAULT_GROUPS, DEFAULT_PRIMES, chouinard_corpus


@lru_cache(maxsize=None)
def field_modules(group_spec: str, p: int):
    """``[(label, module)]`` for one (group, prime): regular, simples, PIMs,
    cyclic inductions and, when p divides the order, the projectivity corpus."""
    g = parse_group_spec(group_spec)
    k = PrimeField(p)
    alg = group_algebra(g, k)
    out = [("regular", regular_module(alg))]
    out += [(f"simple_{i}", s) for i, s in enumerate(registry_for(alg).simples)]
    out += [(f"pim_{i}", P.module) for i, P in enumerate(pim_modules(alg))]
    for c in cyclic_subgroup_classes(g):
        if 1 < c.order < g.order:
            out.append((f"induced_trivial_from_C{c.order}", induce(trivial_module(c.as_group, k), c)))
    if g.order % p == 0:
        out += [(f"chouinard_{name}", m) for name, m in chouinard_corpus(g, k)]
    return out


def all_field_modules(max_dim=None, primes=DEFAULT_PRIMES):
    for group_spec in DEFAULT_GROUPS:
        for p in primes:
            for label, m in field_modules(group_spec, p):
                if max_dim is None or m.dim <= max_dim:
                    yield group_spec, p, label, m
