from __future__ import annotations

import re
from typing import Optional

from sympy import factorint

from .constructors import Family, FamilySpec, direct_product, make_family
from .errors import GroupSpecError, InvalidFamily
from .perm import DEFAULT_CACHE_LIMIT, DEFAULT_ORDER_CAP, FiniteGroup


FACTOR_RE = re.compile(r"(?i)^\s*([cdsaqe])\s*(\d+)\s*$")
PRODUCT_SPLIT_RE = re.compile(r"(?i)\s*x\s*")

LETTER_FAMILIES = {
    "c": Family.CYCLIC,
    "d": Family.DIHEDRAL,
    "s": Family.SYMMETRIC,
    "a": Family.ALTERNATING,
    "q": Family.QUATERNION,
    "e": Family.ELEMENTARY_ABELIAN,
}


def parse_factor(text: str) -> FamilySpec:
    match = FACTOR_RE.match(text)
    if not match:
        raise GroupSpecError(f"cannot read group factor {text!r}; expected e.g. C12, D10, S4, A5, Q8, E8")
    family = LETTER_FAMILIES[match.group(1).lower()]
    value = int(match.group(2))

    if family is Family.ELEMENTARY_ABELIAN:
        prime_power = _prime_power(value)
        if prime_power is None:
            raise GroupSpecError(f"E{value}: elementary abelian order must be a prime power")
        spec = FamilySpec(family, prime_power[0], prime_power[1])
    else:
        spec = FamilySpec(family, value)

    try:
        spec.validate()
    except InvalidFamily as exc:
        raise GroupSpecError(f"{text.strip()}: {exc}") from exc
    return spec


def parse_group_spec(text: str) -> list[FamilySpec]:
    clean = text.strip()
    if not clean:
        raise GroupSpecError("empty group spec")
    return [parse_factor(part) for part in PRODUCT_SPLIT_RE.split(clean)]


def canonical_name(specs: list[FamilySpec]) -> str:
    return "x".join(spec.label for spec in specs)


def build_group(
    text: str,
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
) -> FiniteGroup:
    specs = parse_group_spec(text)
    group = make_family(specs[0], order_cap=order_cap, cache_limit=cache_limit)
    for spec in specs[1:]:
        factor = make_family(spec, order_cap=order_cap, cache_limit=cache_limit)
        group = direct_product(group, factor, order_cap=order_cap, cache_limit=cache_limit)
    return group


def _prime_power(value: int) -> Optional[tuple[int, int]]:
    if value < 2:
        return None
    factors = factorint(value)
    if len(factors) != 1:
        return None
    prime, exponent = next(iter(factors.items()))
    return int(prime), int(exponent)
