import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcartan.errors import NotApproxIdempotent, ParentMismatch, UsageError
from modcartan.exactla.rings import parse_coeff_spec
from modcartan.groupalg import (
    IdealBasis,
    augmentation_ideal,
    group_algebra,
    ideal_sum,
    lift_idempotent,
    maximal_ideal_extension,
    radical,
    radical_chain,
    semisimple_primitive_idempotents,
)
from modcartan.groups import parse_group_spec
from modcartan.modrep import registry_for

import oracles


def alg_of(group, coeff):
    return group_algebra(parse_group_spec(group), parse_coeff_spec(coeff))


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([("S3", "F3"), ("Q8", "F2"), ("C4", "Z/2^2"), ("S3", "F2[t]/t^2")]),
    st.integers(0, 2**31 - 1),
)
def test_ring_axioms(point, seed):
    alg = alg_of(*point)
    R = alg.coeff
    rng = np.random.default_rng(seed)

    def rand():
        shape = (alg.dim,) + R.suffix
        hi = R.q if not R.suffix else R.p
        return alg.element(rng.integers(0, hi, size=shape))

    a, b, c = rand(), rand(), rand()
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert alg.one() * a == a == a * alg.one()


def test_parent_mismatch():
    a = alg_of("S3", "F3").one()
    b = alg_of("S3", "F2").one()
    with pytest.raises(ParentMismatch):
        a * b


def test_group_sum_is_central_and_squares_to_zero_when_p_divides_order():
    alg = alg_of("S3", "F3")
    u = alg.group_sum()
    assert u.is_central()
    assert (u * u).is_zero()
    alg2 = alg_of("S3", "F5")
    u2 = alg2.group_sum()
    assert u2 * u2 == 6 * u2


TINY = [("C2", "F2"), ("C4", "F2"), ("C2xC2", "F2"), ("S3", "F2"), ("C3", "F3"), ("C6", "F2"), ("C3", "F2"), ("C2", "F3")]


@pytest.mark.parametrize("group,coeff", TINY)
def test_radical_matches_exhaustive_oracle(group, coeff):
    alg = alg_of(group, coeff)
    J = radical(alg)
    brute = oracles.brute_radical(alg.group.table.tolist(), alg.p)
    assert J.size() == len(brute)
    assert all(J.contains(np.array(x)) for x in brute)


P_GROUPS = [("C2", "F2"), ("C4", "F2"), ("C8", "F2"), ("C2xC2", "F2"), ("C2xC4", "F2"), ("C2xC2xC2", "F2"),
            ("D8", "F2"), ("Q8", "F2"), ("C3", "F3")]


@pytest.mark.parametrize("group,coeff", P_GROUPS)
def test_p_group_radical_is_augmentation_ideal(group, coeff):
    alg = alg_of(group, coeff)
    aug = augmentation_ideal(alg, alg.group.whole())
    J = radical(alg)
    assert J.dim == alg.dim - 1
    assert np.array_equal(J.basis, aug.basis)


@pytest.mark.parametrize("group,coeff", [("S3", "F3"), ("S4", "F2"), ("A4", "F2"), ("D12", "F3"), ("C6", "F3"), ("S4", "F3")])
def test_radical_structure(group, coeff):
    alg = alg_of(group, coeff)
    J = radical(alg)
    assert J.is_two_sided()
    assert J.nilpotency_index() is not None
    # Wedderburn: dim A/J = sum over simples of dim^2 / dim End
    reg = registry_for(alg)
    assert alg.dim - J.dim == sum(d * d // e for d, e in zip(reg.dims, reg.end_dims))


@pytest.mark.parametrize("group,coeff", [("C3", "F2"), ("S3", "F5"), ("A4", "F5"), ("Q8", "F3")])
def test_semisimple_radical_vanishes(group, coeff):
    assert radical(alg_of(group, coeff)).dim == 0


@pytest.mark.parametrize("group,coeff", [("S3", "F3"), ("S3", "F2"), ("A4", "F2"), ("C3", "F2"), ("D8", "F2"), ("S4", "F3")])
def test_primitive_idempotents(group, coeff):
    alg = alg_of(group, coeff)
    idems = semisimple_primitive_idempotents(alg)
    one = alg.one()
    total = alg.zero()
    for i, a in enumerate(idems):
        e = a.lifted
        assert e * e == e
        assert radical(alg).contains((e - a.ebar).coeffs)
        total = total + e
        for j, b in enumerate(idems):
            if i != j:
                assert radical(alg).contains((e * b.lifted).coeffs)
    assert radical(alg).contains((total - one).coeffs)
    reg = registry_for(alg)
    counts = [sum(1 for a in idems if a.simple == i) for i in range(len(reg))]
    assert counts == [d // e for d, e in zip(reg.dims, reg.end_dims)]


def test_lift_needs_an_approximate_idempotent():
    alg = alg_of("S3", "F3")
    J = radical(alg)
    with pytest.raises(NotApproxIdempotent):
        lift_idempotent(alg, alg.basis_element(1), J)
    e, steps = lift_idempotent(alg, alg.one(), J)
    assert e == alg.one() and steps == 0


def test_lift_through_nilpotent_ideal_over_chain_ring():
    alg = alg_of("S3", "Z/3^2")
    J = radical_chain(alg)
    g = alg.group
    t = next(x for x in range(g.order) if g.element_order(x) == 2)
    s = alg.basis_element(t)
    # (1 + s)/2 is idempotent; adding 3*g keeps it idempotent modulo the radical only
    ebar = (alg.one() + s) * pow(2, -1, 9) + 3 * alg.basis_element(1)
    assert not ebar * ebar == ebar
    e, steps = lift_idempotent(alg, ebar, J)
    assert e * e == e and steps > 0
    assert J.contains((e - ebar).coeffs)


@pytest.mark.parametrize("group,coeff", [("S3", "Z/3^2"), ("C4", "Z/2^3"), ("A4", "F2[t]/t^2"), ("S3", "F3[t]/t^2")])
def test_chain_radical(group, coeff):
    alg = alg_of(group, coeff)
    J = radical_chain(alg)
    assert J.is_two_sided()
    assert J.nilpotency_index() is not None
    assert J.contains_ideal(maximal_ideal_extension(alg))
    # |A / J| equals |k[pi] / rad k[pi]|
    k = group_algebra(alg.group, alg.coeff.residue_field)
    assert alg.coeff.size ** alg.dim // J.size() == k.p ** (k.dim - radical(k).dim)


def test_ideal_sum_and_products():
    alg = alg_of("S3", "F3")
    J = radical(alg)
    assert ideal_sum(J, J) == J
    assert J.product(J).dim < J.dim
    assert J.nilpotency_index() == 3
    with pytest.raises(UsageError):
        radical(alg_of("S3", "Z/3^2"))


def test_augmentation_ideal_of_non_normal_subgroup_is_only_right():
    from modcartan.groups import sylow_subgroup

    alg = alg_of("S3", "F2")
    I = augmentation_ideal(alg, sylow_subgroup(alg.group, 2))
    assert I.sidedness == "right"
    assert I.is_right_ideal() and not I.is_left_ideal()
    assert isinstance(I, IdealBasis) and I.dim == 3
