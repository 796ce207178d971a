"""Projective indecomposables, projective covers and projectivity tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotProjective, UsageError
from ..exactla.fp import row_basis
from .module import RepModule, quotient, regular_module, spin
from .registry import CompositionMultiset, chop, registry_for


@dataclass(frozen=True, eq=False)
class PIM:
    """``P = A e`` for a lifted primitive idempotent ``e``; ``simple`` is the id of its head."""

    idempotent: object
    module: RepModule
    simple: int


def pim_modules(alg, seed: int = 1) -> list[PIM]:
    """One PIM per simple, aligned with the registry order."""
    if not alg.is_field:
        raise UsageError("pim_modules needs field coefficients; see chain_pims")
    key = ("pims", seed)
    if key in alg._cache:
        return alg._cache[key]
    from ..groupalg import semisimple_primitive_idempotents

    reg = registry_for(alg)
    chosen = {}
    for idem in semisimple_primitive_idempotents(alg, seed):
        chosen.setdefault(idem.simple, idem)
    reg_mod = regular_module(alg)
    out = []
    for i in range(len(reg)):
        idem = chosen[i]
        sub = spin(reg_mod, [idem.lifted.coeffs])
        mod = RepModule(alg.group, alg.coeff, sub.module.actions, provenance="PIM", validate=False, dim=sub.dim)
        out.append(PIM(idem.lifted, mod, i))
    alg._cache[key] = out
    return out


def idempotent_multiplicities(alg, seed: int = 1) -> list[int]:
    """``m_i``: how often ``S_i`` occurs in ``A/J`` (so ``A = sum m_i P_i``)."""
    from ..groupalg import semisimple_primitive_idempotents

    counts = [0] * len(registry_for(alg))
    for idem in semisimple_primitive_idempotents(alg, seed):
        counts[idem.simple] += 1
    return counts


def radical_submodule_rows(m: RepModule) -> np.ndarray:
    """RREF rows spanning ``J m`` (J the radical of the group algebra)."""
    from ..groupalg import radical

    J = radical(m.algebra)
    if J.dim == 0 or m.dim == 0:
        return np.zeros((0, m.dim), dtype=np.int64)
    mats = np.tensordot(J.basis, m.element_matrices, axes=1) % m.p
    # columns of every rho(a) span J m
    cols = np.concatenate(list(mats), axis=1)
    return row_basis(cols.T, m.p)


def head(m: RepModule) -> RepModule:
    """``m / J m``."""
    return quotient(m, radical_submodule_rows(m))


def projective_cover_dim(m: RepModule, seed: int = 1):
    """``(PIM multiplicities, total dimension)`` of the projective cover of ``m``."""
    alg = m.algebra
    mult = chop(head(m), seed)
    pims = pim_modules(alg)
    total = sum(c * pims[i].module.dim for i, c in enumerate(mult))
    return mult, total


def is_projective(m: RepModule, seed: int = 1) -> bool:
    return projective_cover_dim(m, seed)[1] == m.dim


def decompose_projective(m: RepModule, seed: int = 1) -> CompositionMultiset:
    """PIM multiplicities of a projective module (indices follow the registry)."""
    mult, total = projective_cover_dim(m, seed)
    if total != m.dim:
        raise NotProjective(f"projective cover has dim {total}, module has dim {m.dim}")
    return mult
