from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import Iterator

from sympy import isprime

from .errors import InvalidFamily, OrderCapExceeded
from .perm import DEFAULT_CACHE_LIMIT, DEFAULT_ORDER_CAP, FiniteGroup, Permutation, enumerate_group


logger = logging.getLogger(__name__)


class Family(str, Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    QUATERNION = "generalized-quaternion"
    ELEMENTARY_ABELIAN = "elementary-abelian"


FAMILY_LETTERS = {
    Family.CYCLIC: "C",
    Family.DIHEDRAL: "D",
    Family.SYMMETRIC: "S",
    Family.ALTERNATING: "A",
    Family.QUATERNION: "Q",
    Family.ELEMENTARY_ABELIAN: "E",
}


@dataclass(frozen=True)
class FamilySpec:
    """One named group.

    ``parameter`` is the order for cyclic, dihedral and quaternion groups,
    the degree for symmetric and alternating groups, and the prime for
    elementary abelian groups (``rank`` is then the exponent).
    """

    family: Family
    parameter: int
    rank: int = 1

    def validate(self) -> None:
        p = self.parameter
        if self.family in (Family.CYCLIC, Family.SYMMETRIC, Family.ALTERNATING):
            if p < 1:
                raise InvalidFamily(f"{self.family.value} parameter must be at least 1, got {p}")
        elif self.family is Family.DIHEDRAL:
            if p < 6 or p % 2:
                raise InvalidFamily(f"dihedral order must be even and at least 6, got {p}")
        elif self.family is Family.QUATERNION:
            if p < 8 or p % 4:
                raise InvalidFamily(f"generalized quaternion order must be a multiple of 4 and at least 8, got {p}")
        elif self.family is Family.ELEMENTARY_ABELIAN:
            if not isprime(p):
                raise InvalidFamily(f"elementary abelian groups need a prime, got {p}")
            if self.rank < 1:
                raise InvalidFamily(f"elementary abelian rank must be at least 1, got {self.rank}")

    @property
    def order(self) -> int:
        p = self.parameter
        if self.family is Family.SYMMETRIC:
            return factorial(p)
        if self.family is Family.ALTERNATING:
            return max(1, factorial(p) // 2)
        if self.family is Family.ELEMENTARY_ABELIAN:
            return p**self.rank
        return p

    @property
    def label(self) -> str:
        letter = FAMILY_LETTERS[self.family]
        if self.family is Family.ELEMENTARY_ABELIAN:
            return f"{letter}{self.parameter**self.rank}"
        return f"{letter}{self.parameter}"


def cyclic_generators(n: int) -> list[Permutation]:
    return [Permutation.from_cycles(n, tuple(range(n)))]


def dihedral_generators(order: int) -> list[Permutation]:
    m = order // 2
    rotation = Permutation.from_cycles(m, tuple(range(m)))
    reflection = Permutation(tuple((-point) % m for point in range(m)))
    return [rotation, reflection]


def symmetric_generators(n: int) -> list[Permutation]:
    if n == 1:
        return [Permutation.identity(1)]
    if n == 2:
        return [Permutation.from_cycles(2, (0, 1))]
    return [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]


def alternating_generators(n: int) -> list[Permutation]:
    if n < 3:
        return [Permutation.identity(n)]
    three_cycle = Permutation.from_cycles(n, (0, 1, 2))
    if n == 3:
        return [three_cycle]
    if n % 2:
        return [Permutation.from_cycles(n, tuple(range(n))), three_cycle]
    return [Permutation.from_cycles(n, tuple(range(1, n))), three_cycle]


def quaternion_generators(order: int) -> list[Permutation]:
    # Right regular action on a^k x^e, stored at point e*2m + k, with
    # a^(2m) = 1, x^2 = a^m and x a x^-1 = a^-1.
    m = order // 4
    half = 2 * m

    def right_multiply(k: int, e: int, l: int, f: int) -> int:
        exponent = k + (l if e == 0 else -l)
        if e + f == 2:
            return (exponent + m) % half
        return (e + f) * half + exponent % half

    a = Permutation(tuple(right_multiply(point % half, point // half, 1, 0) for point in range(order)))
    x = Permutation(tuple(right_multiply(point % half, point // half, 0, 1) for point in range(order)))
    return [a, x]


def elementary_abelian_generators(p: int, rank: int) -> list[Permutation]:
    degree = p * rank
    return [
        Permutation.from_cycles(degree, tuple(range(block * p, (block + 1) * p)))
        for block in range(rank)
    ]


def make_family(
    spec: FamilySpec,
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
) -> FiniteGroup:
    spec.validate()
    if spec.order > order_cap:
        raise OrderCapExceeded(spec.label, order_cap)
    builders = {
        Family.CYCLIC: lambda: cyclic_generators(spec.parameter),
        Family.DIHEDRAL: lambda: dihedral_generators(spec.parameter),
        Family.SYMMETRIC: lambda: symmetric_generators(spec.parameter),
        Family.ALTERNATING: lambda: alternating_generators(spec.parameter),
        Family.QUATERNION: lambda: quaternion_generators(spec.parameter),
        Family.ELEMENTARY_ABELIAN: lambda: elementary_abelian_generators(spec.parameter, spec.rank),
    }
    group = enumerate_group(spec.label, builders[spec.family](), order_cap=order_cap, cache_limit=cache_limit)
    if group.order != spec.order:
        raise RuntimeError(f"{spec.label} enumerated to order {group.order}, expected {spec.order}")
    return group


def direct_product(
    left: FiniteGroup,
    right: FiniteGroup,
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
    name: str | None = None,
) -> FiniteGroup:
    label = name or f"{left.name}x{right.name}"
    if left.order * right.order > order_cap:
        raise OrderCapExceeded(label, order_cap)
    offset = left.degree
    degree = left.degree + right.degree
    generators = [
        Permutation(generator.images + tuple(range(offset, degree))) for generator in left.generators
    ] + [
        Permutation(tuple(range(offset)) + tuple(offset + image for image in generator.images))
        for generator in right.generators
    ]
    return enumerate_group(label, generators, order_cap=order_cap, cache_limit=cache_limit)


def builtin_corpus(
    max_order: int,
    family_limit: int = 120,
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
) -> list[FiniteGroup]:
    groups: list[FiniteGroup] = []
    built: dict[str, FiniteGroup] = {}

    def build(spec: FamilySpec) -> FiniteGroup:
        if spec.label not in built:
            built[spec.label] = make_family(spec, order_cap=order_cap, cache_limit=cache_limit)
        return built[spec.label]

    for spec in _corpus_specs(max_order, family_limit):
        if spec.order > min(max_order, order_cap):
            continue
        groups.append(build(spec))

    for left, right in _corpus_products():
        if left.order * right.order > min(max_order, order_cap):
            continue
        groups.append(direct_product(build(left), build(right), order_cap=order_cap, cache_limit=cache_limit))

    logger.info("Built-in corpus: %d groups up to order %d", len(groups), max_order)
    return groups


def _corpus_specs(max_order: int, family_limit: int) -> Iterator[FamilySpec]:
    bounded = min(max_order, family_limit)
    for n in range(1, bounded + 1):
        yield FamilySpec(Family.CYCLIC, n)
    for order in range(6, bounded + 1, 2):
        yield FamilySpec(Family.DIHEDRAL, order)
    for n in range(3, 8):
        yield FamilySpec(Family.SYMMETRIC, n)
    for n in range(4, 7):
        yield FamilySpec(Family.ALTERNATING, n)
    for order in range(8, 33, 4):
        yield FamilySpec(Family.QUATERNION, order)
    for p in (2, 3, 5):
        rank = 2
        while p**rank <= max_order:
            yield FamilySpec(Family.ELEMENTARY_ABELIAN, p, rank)
            rank += 1


def _corpus_products() -> Iterator[tuple[FamilySpec, FamilySpec]]:
    yield FamilySpec(Family.SYMMETRIC, 3), FamilySpec(Family.SYMMETRIC, 3)
    yield FamilySpec(Family.CYCLIC, 2), FamilySpec(Family.SYMMETRIC, 4)
    for order in (6, 8, 10, 12):
        for n in (2, 3, 4):
            yield FamilySpec(Family.DIHEDRAL, order), FamilySpec(Family.CYCLIC, n)
