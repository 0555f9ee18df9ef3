from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np
from sympy import isprime

from .perm import ElementSet, FiniteGroup, Subgroup


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CentralizerProfile:
    """The set C(G) of distinct element centralizers, with each element's entry in it."""

    group: FiniteGroup
    distinct: tuple[Subgroup, ...]
    assignment: np.ndarray

    @property
    def n(self) -> int:
        return len(self.distinct)

    def centralizer_of(self, a: int) -> Subgroup:
        return self.distinct[int(self.assignment[a])]

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        """Least element index assigned to each distinct centralizer."""
        _, firsts = np.unique(self.assignment, return_index=True)
        return tuple(int(index) for index in firsts)


@dataclass(frozen=True)
class InvariantReport:
    name: str
    order: int
    n_centralizers: int
    center_order: int
    center_index: int
    involution_count: int
    soluble: bool
    derived_length: Optional[int]
    nilpotent: bool
    nilpotency_class: Optional[int]
    simple: bool
    semisimple: bool
    a_measure: Optional[int] = None
    a_measure_exact: Optional[bool] = None
    n_measure: Optional[int] = None
    n_measure_exact: Optional[bool] = None
    pyber_ratio: Optional[float] = None


@dataclass(frozen=True)
class SeriesResult:
    terms: tuple[Subgroup, ...]
    terminated_at_trivial: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def centralizer(group: FiniteGroup, a: int) -> Subgroup:
    return Subgroup.from_mask(group, group.commuting_mask(a))


def centralizer_profile(group: FiniteGroup, *, abelian_shortcut: bool = True) -> CentralizerProfile:
    if abelian_shortcut and group.is_abelian:
        return CentralizerProfile(group, (group.whole,), np.zeros(group.order, dtype=np.intp))

    keys: dict[bytes, int] = {}
    distinct: list[Subgroup] = []
    assignment = np.empty(group.order, dtype=np.intp)
    inverses = group.inverses
    for a in range(group.order):
        partner = int(inverses[a])
        if partner < a:
            assignment[a] = assignment[partner]
            continue
        mask = group.commuting_mask(a)
        key = np.packbits(mask).tobytes()
        slot = keys.get(key)
        if slot is None:
            slot = keys[key] = len(distinct)
            distinct.append(Subgroup.from_mask(group, mask))
        assignment[a] = slot
    assignment.setflags(write=False)
    logger.debug("%s has %d distinct centralizers", group.name, len(distinct))
    return CentralizerProfile(group, tuple(distinct), assignment)


def center(group: FiniteGroup) -> Subgroup:
    mask = np.ones(group.order, dtype=bool)
    for generator in group.generator_indices:
        mask &= group.commuting_mask(generator)
    return Subgroup.from_mask(group, mask)


def center_from_profile(profile: CentralizerProfile) -> Subgroup:
    members = profile.group.whole.members
    for subgroup in profile.distinct:
        members &= subgroup.members
    return Subgroup(profile.group, members)


def involution_set(group: FiniteGroup) -> ElementSet:
    rows = group.rows
    squares = np.take_along_axis(rows, rows, axis=1)
    mask = np.all(squares == np.arange(group.degree), axis=1)
    return ElementSet.from_mask(group, mask)


def subgroup_generated(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    return group.closure(seed)


def normal_closure_of(group: FiniteGroup, seeds: Iterable[int], ambient: Optional[Subgroup] = None) -> Subgroup:
    """Smallest subgroup containing ``seeds`` that is normalized by ``ambient`` (default: the whole group)."""
    conjugators = ambient.generators if ambient is not None else group.generator_indices
    current = group.closure(seeds)
    changed = True
    while changed:
        changed = False
        for generator in current.generators:
            for conjugator in conjugators:
                image = group.conjugate(generator, conjugator)
                if image not in current:
                    current = group.closure([image], base=current)
                    changed = True
    return current


def normal_closure(group: FiniteGroup, a: int) -> Subgroup:
    return normal_closure_of(group, [a])


def commutator_subgroup(group: FiniteGroup, left: Subgroup, right: Subgroup, ambient: Subgroup) -> Subgroup:
    """[left, right] for subgroups of ``ambient`` = <left, right>; the normal closure of generator commutators."""
    commutators = [
        group.commutator(x, y)
        for x in left.generators
        for y in right.generators
        if not group.commutes(x, y)
    ]
    if not commutators:
        return group.trivial
    return normal_closure_of(group, commutators, ambient)


def derived_subgroup(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> Subgroup:
    subgroup = subgroup if subgroup is not None else group.whole
    return commutator_subgroup(group, subgroup, subgroup, subgroup)


def derived_series(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> SeriesResult:
    terms = [subgroup if subgroup is not None else group.whole]
    while not terms[-1].is_trivial:
        following = derived_subgroup(group, terms[-1])
        if following == terms[-1]:
            break
        terms.append(following)
    return SeriesResult(tuple(terms), terms[-1].is_trivial)


def lower_central_series(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> SeriesResult:
    top = subgroup if subgroup is not None else group.whole
    terms = [top]
    while not terms[-1].is_trivial:
        following = commutator_subgroup(group, terms[-1], top, top)
        if following == terms[-1]:
            break
        terms.append(following)
    return SeriesResult(tuple(terms), terms[-1].is_trivial)


def is_soluble(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> tuple[bool, Optional[int]]:
    """Solubility flag and derived length (``None`` when insoluble)."""
    series = derived_series(group, subgroup)
    if not series.terminated_at_trivial:
        return False, None
    return True, series.length


def is_nilpotent(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> tuple[bool, Optional[int]]:
    """Nilpotency flag and class (``None`` when not nilpotent)."""
    series = lower_central_series(group, subgroup)
    if not series.terminated_at_trivial:
        return False, None
    return True, series.length


def conjugacy_classes(group: FiniteGroup) -> list[list[int]]:
    if group.is_abelian:
        return [[a] for a in range(group.order)]
    classes: list[list[int]] = []
    assigned = np.zeros(group.order, dtype=bool)
    for a in range(group.order):
        if assigned[a]:
            continue
        members = np.unique(group.conjugate_many(a))
        assigned[members] = True
        classes.append([int(index) for index in members])
    return classes


def class_representatives(group: FiniteGroup) -> list[int]:
    return [members[0] for members in conjugacy_classes(group)]


def is_simple(group: FiniteGroup) -> bool:
    if group.order < 2:
        return False
    if group.is_abelian:
        return bool(isprime(group.order))
    for representative in class_representatives(group)[1:]:
        if not normal_closure(group, representative).is_whole:
            return False
    return True


def is_semisimple(group: FiniteGroup) -> bool:
    if group.order == 1:
        return True
    if group.is_abelian:
        return False
    return not any(
        normal_closure(group, representative).is_abelian
        for representative in class_representatives(group)[1:]
    )


def normalizer(group: FiniteGroup, subgroup: Subgroup) -> Subgroup:
    mask = np.ones(group.order, dtype=bool)
    for generator in subgroup.generators:
        mask &= subgroup.mask[group.conjugate_many(generator)]
    return Subgroup.from_mask(group, mask)


def kernel_b(profile: CentralizerProfile) -> Subgroup:
    """Intersection of the normalizers of all distinct centralizers.

    Uses N_G(C_G(x)) = {g : C_G(x^g) = C_G(x)}, so one conjugation sweep per
    distinct centralizer is enough.
    """
    group = profile.group
    mask = np.ones(group.order, dtype=bool)
    for slot, representative in enumerate(profile.representatives):
        if profile.distinct[slot].is_whole:
            continue
        mask &= profile.assignment[group.conjugate_many(representative)] == slot
    return Subgroup.from_mask(group, mask)


def is_two_engel(group: FiniteGroup, subgroup: Subgroup) -> bool:
    """Whether [[x, y], y] = 1 for all x, y in ``subgroup``."""
    if subgroup.is_abelian:
        return True
    members = subgroup.indices
    inverses = group.inverses
    for y in members:
        ys = np.full(members.size, y, dtype=np.intp)
        inner = group.mult_many(group.mult_many(inverses[members], inverses[ys]), group.mult_many(members, ys))
        outer = group.mult_many(group.mult_many(inverses[inner], inverses[ys]), group.mult_many(inner, ys))
        if np.any(outer != 0):
            return False
    return True


def cosets_share_centralizers(profile: CentralizerProfile, center_subgroup: Subgroup) -> bool:
    """Every coset aZ(G) lies inside one centralizer class."""
    group = profile.group
    for z in center_subgroup.indices:
        shifted = group.mult_many(np.arange(group.order), np.full(group.order, z, dtype=np.intp))
        if np.any(profile.assignment[shifted] != profile.assignment):
            return False
    return True


def factorial_at_least(bound: int, n: int) -> bool:
    """Whether n! >= bound, accumulating with early exit."""
    product = 1
    for k in range(2, n + 1):
        if product >= bound:
            return True
        product *= k
    return product >= bound

