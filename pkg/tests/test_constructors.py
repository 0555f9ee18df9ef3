from __future__ import annotations

import pytest

from centra.constructors import Family, FamilySpec, builtin_corpus, direct_product, make_family
from centra.errors import InvalidFamily, OrderCapExceeded
from centra.invariants import center, involution_set

from conftest import named_group, small_corpus


@pytest.mark.parametrize(
    ("spec", "order"),
    [
        (FamilySpec(Family.CYCLIC, 1), 1),
        (FamilySpec(Family.CYCLIC, 12), 12),
        (FamilySpec(Family.DIHEDRAL, 6), 6),
        (FamilySpec(Family.DIHEDRAL, 20), 20),
        (FamilySpec(Family.SYMMETRIC, 1), 1),
        (FamilySpec(Family.SYMMETRIC, 2), 2),
        (FamilySpec(Family.SYMMETRIC, 5), 120),
        (FamilySpec(Family.ALTERNATING, 3), 3),
        (FamilySpec(Family.ALTERNATING, 4), 12),
        (FamilySpec(Family.ALTERNATING, 6), 360),
        (FamilySpec(Family.QUATERNION, 8), 8),
        (FamilySpec(Family.QUATERNION, 12), 12),
        (FamilySpec(Family.QUATERNION, 16), 16),
        (FamilySpec(Family.ELEMENTARY_ABELIAN, 2, 3), 8),
        (FamilySpec(Family.ELEMENTARY_ABELIAN, 3, 2), 9),
    ],
    ids=lambda value: value.label if isinstance(value, FamilySpec) else str(value),
)
def test_family_orders(spec, order):
    group = make_family(spec)
    assert spec.order == order
    assert group.order == order
    assert group.name == spec.label


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec(Family.DIHEDRAL, 4),
        FamilySpec(Family.DIHEDRAL, 7),
        FamilySpec(Family.QUATERNION, 10),
        FamilySpec(Family.ELEMENTARY_ABELIAN, 6, 2),
        FamilySpec(Family.CYCLIC, 0),
    ],
)
def test_invalid_parameters(spec):
    with pytest.raises(InvalidFamily):
        make_family(spec)


def test_family_above_order_cap_is_refused_before_enumeration():
    with pytest.raises(OrderCapExceeded):
        make_family(FamilySpec(Family.SYMMETRIC, 7), order_cap=1000)


@pytest.mark.parametrize("spec", ["Q8", "Q16", "Q24"])
def test_generalized_quaternion_has_a_single_involution(spec):
    group = named_group(spec)
    # identity plus the central involution
    assert involution_set(group).order == 2
    assert center(group).order == 2


def test_elementary_abelian_exponent():
    group = named_group("E8")
    assert group.is_abelian
    assert set(int(order) for order in group.element_orders) == {1, 2}


def test_direct_product_name_and_order():
    product = direct_product(named_group("S3"), named_group("C4"))
    assert product.name == "S3xC4"
    assert product.order == 24
    assert center(product).order == 4


def test_direct_product_respects_order_cap():
    with pytest.raises(OrderCapExceeded):
        direct_product(named_group("S4"), named_group("S4"), order_cap=500)


def test_corpus_up_to_order_60():
    names = [group.name for group in small_corpus(60)]
    assert "A5" in names
    assert "S5" not in names
    assert {"C1", "S3", "D10", "Q8", "E8", "S3xS3", "C2xS4"} <= set(names)
    assert len(names) == len(set(names))
    assert all(group.order <= 60 for group in small_corpus(60))


def test_corpus_of_order_one_is_the_trivial_group():
    groups = builtin_corpus(1)
    assert [group.name for group in groups] == ["C1"]


def test_corpus_is_deterministic():
    first = builtin_corpus(24, family_limit=24)
    second = builtin_corpus(24, family_limit=24)
    assert [group.name for group in first] == [group.name for group in second]
    assert all(left.elements == right.elements for left, right in zip(first, second))


def test_family_limit_bounds_cyclic_and_dihedral_only():
    names = {group.name for group in builtin_corpus(120, family_limit=30)}
    assert "C30" in names and "C31" not in names
    assert "D30" in names and "D32" not in names
    assert "S5" in names
