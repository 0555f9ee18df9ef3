from __future__ import annotations

import pytest

from centra.errors import IsomorphismCapExceeded
from centra.isomorphism import find_isomorphism, fingerprint, generating_set, is_isomorphic

from conftest import named_group


def assert_homomorphism(left, right, mapping):
    assert sorted(mapping.tolist()) == list(range(right.order))
    for a in range(left.order):
        for b in range(left.order):
            assert mapping[left.mult(a, b)] == right.mult(int(mapping[a]), int(mapping[b]))


@pytest.mark.parametrize("spec", ["S3", "Q8", "D10", "A4"])
def test_group_is_isomorphic_to_itself(spec):
    group = named_group(spec)
    assert is_isomorphic(group, group)


def test_dihedral_of_order_six_is_s3():
    d6, s3 = named_group("D6"), named_group("S3")
    mapping = find_isomorphism(d6, s3)
    assert mapping is not None
    assert_homomorphism(d6, s3, mapping)
    assert is_isomorphic(d6, s3)


def test_generalized_quaternion_of_order_twelve_is_not_d12():
    assert not is_isomorphic(named_group("Q12"), named_group("D12"))


@pytest.mark.parametrize(("left", "right"), [("C4", "E4"), ("Q8", "D8"), ("C6", "S3"), ("A4", "D12")])
def test_non_isomorphic_pairs(left, right):
    assert not is_isomorphic(named_group(left), named_group(right))


def test_backtracking_alone_separates_q8_and_d8():
    # same order, different element orders; the search must still come back empty
    assert find_isomorphism(named_group("Q8"), named_group("D8")) is None


def test_product_of_cyclic_groups_is_elementary_abelian():
    left = named_group("C2xC2xC2")
    right = named_group("E8")
    assert fingerprint(left) == fingerprint(right)
    assert_homomorphism(left, right, find_isomorphism(left, right))


def test_generating_set_generates():
    group = named_group("S4")
    generators = generating_set(group)
    assert group.closure(generators).is_whole
    assert len(generators) <= 3


def test_different_orders_are_never_isomorphic():
    assert not is_isomorphic(named_group("S3"), named_group("C5"))


def test_cap_is_enforced():
    group = named_group("S4")
    with pytest.raises(IsomorphismCapExceeded):
        is_isomorphic(group, group, cap=12)
