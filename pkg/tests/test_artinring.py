import json

import numpy as np
import pytest

from modcartan import artinring as ar
from modcartan.errors import SylowNotNormal, UsageError
from modcartan.exactla.rings import PrimeField, parse_coeff_spec
from modcartan.groupalg import group_algebra, radical_chain
from modcartan.groups import parse_group_spec, sylow_subgroup
from modcartan.grothendieck import cartan_table
from modcartan.modrep import chop, decompose_projective, pim_modules, regular_module

import oracles


def alg_of(group, coeff):
    return group_algebra(parse_group_spec(group), parse_coeff_spec(coeff))


def test_reduction_of_regular_module():
    alg = alg_of("C2", "Z/2^2")
    red = ar.reduce_mod_max(ar.chain_regular_module(alg))
    field_reg = regular_module(group_algebra(alg.group, PrimeField(2)))
    assert red == field_reg


def test_reduction_commutes_with_direct_sum():
    alg = alg_of("S3", "Z/3^2")
    a = ar.chain_regular_module(alg)
    b = ar.chain_trivial_module(alg.group, alg.coeff)
    lhs = ar.reduce_mod_max(ar.chain_direct_sum(a, b))
    from modcartan.modrep import direct_sum

    assert lhs == direct_sum(ar.reduce_mod_max(a), ar.reduce_mod_max(b))


@pytest.mark.parametrize("group,coeff", [("S3", "Z/3^2"), ("A4", "Z/2^2"), ("C3", "F2[t]/t^2"), ("S3", "F2[t]/t^3")])
def test_reduced_chain_pims_are_field_pims(group, coeff):
    alg = alg_of(group, coeff)
    kalg = group_algebra(alg.group, alg.coeff.residue_field)
    for i, P in enumerate(ar.chain_pims(alg)):
        red = ar.reduce_mod_max(P.module)
        red.validate()
        assert list(decompose_projective(red)) == [int(j == i) for j in range(len(pim_modules(kalg)))]
        assert P.idempotent * P.idempotent == P.idempotent


def test_graded_pieces_of_regular_module():
    alg = alg_of("C2", "Z/2^2")
    pieces = ar.graded_pieces(ar.chain_regular_module(alg))
    assert len(pieces) == 2
    field_reg = regular_module(group_algebra(alg.group, PrimeField(2)))
    for piece in pieces:
        assert piece.dim == 2
        assert chop(piece) == chop(field_reg)


def test_graded_pieces_over_a_field():
    alg = alg_of("S3", "F3")
    m = regular_module(alg)
    from modcartan.artinring import ChainRepModule

    with pytest.raises(UsageError):
        ChainRepModule(m.group, alg.coeff, m.actions)


@pytest.mark.parametrize("group,coeff", [("S3", "Z/3^2"), ("C4", "Z/2^3"), ("A4", "F2[t]/t^2"), ("S3", "F3[t]/t^3"), ("D8", "Z/2^2")])
def test_layer_bookkeeping(group, coeff):
    alg = alg_of(group, coeff)
    t = alg.coeff.length
    for m in [ar.chain_regular_module(alg), ar.chain_regular_mod_sum(alg), ar.chain_trivial_module(alg.group, alg.coeff)]:
        pieces = ar.graded_pieces(m)
        assert len(pieces) == t
        assert sum(pieces.dims) == t * m.dim
        for piece in pieces:
            piece.validate()
        total = ar.chain_class(m)
        assert list(total) == [t * c for c in chop(ar.reduce_mod_max(m))]


def test_layers_are_not_assumed_isomorphic():
    # pieces of a free module are all isomorphic to the reduction; check their actions are computed
    alg = alg_of("S3", "Z/3^3")
    m = ar.chain_regular_mod_sum(alg)
    red = ar.reduce_mod_max(m)
    for piece in ar.graded_pieces(m):
        assert chop(piece) == chop(red)


@pytest.mark.parametrize(
    "group,coeff,ranks",
    [("C1", "Z/2^2", [1]), ("C2", "Z/2^2", [2]), ("S3", "Z/3^2", [3, 3]), ("S3", "Z/2^2", [2, 2]), ("A4", "F2[t]/t^2", [4, 8])],
)
def test_chain_pim_ranks(group, coeff, ranks):
    alg = alg_of(group, coeff)
    pims = ar.chain_pims(alg)
    assert [P.module.dim for P in pims] == ranks
    for P in pims:
        P.module.validate()


def test_lifted_idempotents_are_exact():
    alg = alg_of("S3", "Z/3^3")
    pims = ar.chain_pims(alg)
    for P in pims:
        e = P.idempotent
        assert e * e == e
    # the lifted PIMs exhaust the algebra rank through the field multiplicities
    assert radical_chain(alg).is_two_sided()


@pytest.mark.parametrize(
    "group,coeff,table,det",
    [
        ("C2", "Z/2^2", [[4]], 4),
        ("S3", "F3[t]/t^3", [[6, 3], [3, 6]], 27),
        ("S3", "Z/2^2", [[4, 0], [0, 2]], 8),
        ("A4", "Z/2^2", [[4, 2], [4, 6]], 16),
        ("C3", "Z/3^2", [[6]], 6),
    ],
)
def test_chain_cartan(group, coeff, table, det):
    cc = ar.cartan_chain(alg_of(group, coeff))
    assert cc.table.tolist() == table
    assert cc.det == det == oracles.det_int(table)
    assert cc.scaling_ok and cc.det_relation_ok


def test_chain_cartan_matches_field_cartan_layers():
    alg = alg_of("S4", "Z/2^2")
    cc = ar.cartan_chain(alg)
    k = group_algebra(alg.group, PrimeField(2))
    assert cc.field_table == cartan_table(k)
    assert cc.length == 2
    assert cc.det == 2 ** 2 * cc.field_det


@pytest.mark.parametrize(
    "group,coeff,sylow,quotient,index",
    [("S3", "F3", 3, 2, 3), ("S3", "Z/3^2", 3, 2, None), ("C2", "F2", 2, 1, 2), ("A4", "F2", 4, 3, None), ("C6", "F3", 3, 2, 3)],
)
def test_normal_sylow_suite(group, coeff, sylow, quotient, index):
    rep = ar.lemma46_suite(parse_coeff_spec(coeff), parse_group_spec(group))
    assert rep["sylow_order"] == sylow and rep["quotient_order"] == quotient
    assert all(rep["checks"].values())
    if index is not None:
        assert rep["nilpotency_index"] == index


def test_normal_sylow_suite_needs_normality():
    with pytest.raises(SylowNotNormal):
        ar.lemma46_suite(PrimeField(2), parse_group_spec("D12"))
    with pytest.raises(SylowNotNormal):
        ar.lemma46_suite(PrimeField(2), parse_group_spec("S3"))


def test_radical_formula_against_exhaustive_oracle():
    alg = alg_of("S3", "F3")
    rep = ar.lemma46_suite(alg.coeff, alg.group)
    from modcartan.groupalg import augmentation_ideal

    I = augmentation_ideal(alg, sylow_subgroup(alg.group, 3))
    brute = oracles.brute_radical(alg.group.table.tolist(), 3)
    assert I.size() == len(brute) and rep["checks"]["radical"]


def test_isomorphism_lifting_check():
    alg = alg_of("S3", "Z/3^2")
    P = ar.chain_pim_sum(alg, [2, 1])
    Q = ar.chain_pim_sum(alg, [2, 1])
    res = ar.lemma35_check(alg, P, Q)
    assert res and res.applicable
    R = ar.chain_pim_sum(alg, [1, 2])
    res = ar.lemma35_check(alg, P, R)
    assert res and not res.applicable
    with pytest.raises(UsageError):
        ar.lemma35_check(alg, P, ar.chain_regular_module(alg))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_isomorphism_lifting_on_random_sums(seed):
    alg = alg_of("A4", "Z/2^2")
    rng = np.random.default_rng(seed)
    for _ in range(3):
        mults = [int(x) for x in rng.integers(0, 3, size=2)]
        if not any(mults):
            mults[0] = 1
        P = ar.chain_pim_sum(alg, mults, seed)
        Q = ar.chain_pim_sum(alg, mults, 1)
        assert ar.lemma35_check(alg, P, Q, seed).applicable
        assert ar.lemma35_check(alg, P, Q, seed)


def test_chain_restriction_and_induction():
    alg = alg_of("S3", "Z/3^2")
    syl = sylow_subgroup(alg.group, 3)
    reg = ar.chain_regular_module(alg)
    r = ar.chain_restrict(reg, syl)
    assert r.dim == 6
    r.validate()
    ind = ar.chain_induce(ar.chain_trivial_module(syl.as_group, alg.coeff), syl)
    ind.validate()
    assert ind.dim == 2


def test_chain_module_file(tmp_path):
    alg = alg_of("C2", "Z/2^2")
    m = ar.chain_regular_module(alg)
    path = tmp_path / "m.json"
    path.write_text(
        json.dumps(
            {
                "group": "C2",
                "coeff": "Z/2^2",
                "dim": 2,
                "actions": [{"generator": 0, "matrix": alg.coeff.residue(m.actions[0]).tolist()}],
            }
        )
    )
    back = ar.load_chain_module(path)
    assert back.dim == 2 and back.provenance == "file"
    assert list(ar.chain_class(back)) == [4]
