from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np
import pytest

from centra.constructors import builtin_corpus
from centra.parser import build_group
from centra.perm import FiniteGroup, Permutation, compose


@lru_cache(maxsize=None)
def named_group(spec: str) -> FiniteGroup:
    return build_group(spec)


@lru_cache(maxsize=None)
def small_corpus(max_order: int) -> tuple[FiniteGroup, ...]:
    return tuple(builtin_corpus(max_order, family_limit=max_order))


@lru_cache(maxsize=None)
def default_corpus(max_order: int) -> tuple[FiniteGroup, ...]:
    """The built-in corpus under default family bounds, cut at ``max_order``."""
    return tuple(builtin_corpus(max_order))


def clique_oracle(adjacency: tuple[int, ...]) -> int:
    """Largest clique by exhaustive subset enumeration over all 2^k vertex sets."""
    k = len(adjacency)
    if k == 0:
        return 0
    is_clique = np.zeros(1 << k, dtype=bool)
    sizes = np.zeros(1 << k, dtype=np.int8)
    is_clique[0] = True
    for vertex in range(k):
        rest = np.arange(1 << vertex, dtype=np.int64)
        masks = rest + (1 << vertex)
        missing = rest & ~np.int64(adjacency[vertex])
        is_clique[masks] = is_clique[rest] & (missing == 0)
        sizes[masks] = sizes[rest] + 1
    return int(sizes[is_clique].max())


class BruteForce:
    """Commuting-matrix oracle built from ``Permutation`` arithmetic only."""

    def __init__(self, group: FiniteGroup) -> None:
        self.elements: list[Permutation] = list(group.elements)
        self.index = {element: position for position, element in enumerate(self.elements)}

    def product(self, a: int, b: int) -> int:
        return self.index[compose(self.elements[a], self.elements[b])]

    @cached_property
    def commuting(self) -> list[list[bool]]:
        size = len(self.elements)
        return [[self.product(a, b) == self.product(b, a) for b in range(size)] for a in range(size)]

    def centralizer(self, a: int) -> frozenset[int]:
        return frozenset(b for b, flag in enumerate(self.commuting[a]) if flag)

    @cached_property
    def centralizers(self) -> list[frozenset[int]]:
        return [self.centralizer(a) for a in range(len(self.elements))]

    @property
    def n(self) -> int:
        return len(set(self.centralizers))

    @property
    def center(self) -> frozenset[int]:
        return frozenset(a for a in range(len(self.elements)) if all(self.commuting[a]))

    @property
    def involution_count(self) -> int:
        return sum(1 for element in self.elements if compose(element, element).is_identity())


@pytest.fixture
def group():
    return named_group


@pytest.fixture
def oracle():
    return BruteForce
