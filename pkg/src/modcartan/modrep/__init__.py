"""Modules over group algebras: constructions, MeatAxe chop, registries, PIMs."""

from .meataxe import composition_factors, find_simple_submodule, find_split
from .module import (
    RepModule,
    Submodule,
    direct_sum,
    dual,
    hom_space,
    induce,
    load_module,
    module_to_json,
    quotient,
    regular_module,
    restrict,
    save_module,
    spin,
    submodule,
    tensor_diagonal,
    trivial_module,
)
from .projective import (
    PIM,
    decompose_projective,
    head,
    idempotent_multiplicities,
    is_projective,
    pim_modules,
    projective_cover_dim,
)
from .registry import CompositionMultiset, SimpleRegistry, chop, registry_for

__all__ = [
    "PIM",
    "CompositionMultiset",
    "RepModule",
    "SimpleRegistry",
    "Submodule",
    "chop",
    "composition_factors",
    "decompose_projective",
    "direct_sum",
    "dual",
    "find_simple_submodule",
    "find_split",
    "head",
    "hom_space",
    "idempotent_multiplicities",
    "induce",
    "is_projective",
    "load_module",
    "module_to_json",
    "pim_modules",
    "projective_cover_dim",
    "quotient",
    "regular_module",
    "registry_for",
    "restrict",
    "save_module",
    "spin",
    "submodule",
    "tensor_diagonal",
    "trivial_module",
]
