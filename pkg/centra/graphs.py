from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional

import numpy as np

from .invariants import CentralizerProfile, center, centralizer_profile, is_nilpotent
from .perm import FiniteGroup, iter_bits, mask_to_bits


logger = logging.getLogger(__name__)

DEFAULT_CLIQUE_BUDGET = 10_000_000


class Relation(str, Enum):
    NON_COMMUTING = "non-commuting"
    NON_NILPOTENT = "non-nilpotent-pair"


@dataclass(frozen=True, eq=False)
class RelationGraph:
    """Vertices are element indices in ascending order; ``adjacency[i]`` is a bitset over vertex positions."""

    group: FiniteGroup
    relation: Relation
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]
    over_budget: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.adjacency) for j in iter_bits(row) if i < j]


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int = 0


class _NilpotencyCache:
    """2-generated nilpotency, memoized by the generated subgroup's bitset."""

    def __init__(self, group: FiniteGroup) -> None:
        self.group = group
        self.by_members: dict[int, bool] = {}

    def __call__(self, u: int, v: int) -> bool:
        if self.group.commutes(u, v):
            return True
        subgroup = self.group.closure([u, v])
        cached = self.by_members.get(subgroup.members)
        if cached is None:
            cached = self.by_members[subgroup.members] = is_nilpotent(self.group, subgroup)[0]
        return cached


def build_graph(
    group: FiniteGroup,
    relation: Relation,
    profile: Optional[CentralizerProfile] = None,
    budget: int = DEFAULT_CLIQUE_BUDGET,
) -> RelationGraph:
    if relation is Relation.NON_COMMUTING:
        vertices, adjacency = _non_commuting(group, profile or centralizer_profile(group))
    else:
        vertices, adjacency = _non_nilpotent(group)
    over_budget = len(vertices) > budget
    if over_budget:
        logger.warning("%s %s graph has %d vertices, above the clique budget %d", group.name, relation.value, len(vertices), budget)
    return RelationGraph(group, relation, vertices, adjacency, over_budget)


def _non_commuting(group: FiniteGroup, profile: CentralizerProfile) -> tuple[tuple[int, ...], tuple[int, ...]]:
    slots = [slot for slot, subgroup in enumerate(profile.distinct) if not subgroup.is_whole]
    if not slots:
        return (), ()
    pairs = sorted((profile.representatives[slot], slot) for slot in slots)
    vertices = np.asarray([vertex for vertex, _ in pairs], dtype=np.intp)
    commuting = np.stack([profile.distinct[slot].mask[vertices] for _, slot in pairs])
    adjacency = tuple(mask_to_bits(~row) for row in commuting)
    return tuple(int(vertex) for vertex in vertices), adjacency


def cyclic_representatives(group: FiniteGroup, exclude: Optional[np.ndarray] = None) -> list[int]:
    """Least generator of every cyclic subgroup, skipping generators flagged in ``exclude``."""
    assigned = np.zeros(group.order, dtype=bool) if exclude is None else exclude.copy()
    assigned[0] = True
    representatives: list[int] = []
    for x in range(group.order):
        if assigned[x]:
            continue
        representatives.append(x)
        powers = [x]
        while powers[-1] != 0:
            powers.append(group.mult(powers[-1], x))
        order = len(powers)
        for k, power in enumerate(powers, start=1):
            if gcd(k, order) == 1:
                assigned[power] = True
    return representatives


def _non_nilpotent(group: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if group.is_abelian:
        return (), ()
    vertices = cyclic_representatives(group, exclude=center(group).mask)
    nilpotent_pair = _NilpotencyCache(group)
    rows = [0] * len(vertices)
    for i, u in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if not nilpotent_pair(u, vertices[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    logger.debug(
        "%s non-nilpotent graph: %d vertices, %d distinct 2-generated subgroups",
        group.name,
        len(vertices),
        len(nilpotent_pair.by_members),
    )
    return tuple(vertices), tuple(rows)


class _BudgetExhausted(Exception):
    pass


class _CliqueSearch:
    """Colour-ordered branch and bound over bitsets.

    Vertices are relabelled by descending degree. Each node colours its
    candidates greedily once, then branches from the highest colour down and
    stops as soon as the colour number can no longer beat the best clique.
    """

    def __init__(self, adjacency: tuple[int, ...], budget: int) -> None:
        self.order = sorted(range(len(adjacency)), key=lambda v: (-adjacency[v].bit_count(), v))
        position = {vertex: rank for rank, vertex in enumerate(self.order)}
        self.adjacency = tuple(
            sum(1 << position[neighbour] for neighbour in iter_bits(adjacency[vertex])) for vertex in self.order
        )
        self.budget = budget
        self.nodes = 0
        self.best = 0
        self.best_size = 0

    def run(self) -> bool:
        everything = (1 << len(self.adjacency)) - 1
        self._greedy(everything)
        try:
            self._expand(0, 0, everything)
        except _BudgetExhausted:
            return False
        return True

    def clique(self) -> list[int]:
        """The best clique in the caller's vertex positions, ascending."""
        return sorted(self.order[rank] for rank in iter_bits(self.best))

    def _greedy(self, candidates: int) -> None:
        chosen = 0
        size = 0
        while candidates:
            vertex = max(iter_bits(candidates), key=lambda v: ((self.adjacency[v] & candidates).bit_count(), -v))
            chosen |= 1 << vertex
            size += 1
            candidates &= self.adjacency[vertex]
        self.best, self.best_size = chosen, size

    def _colour_sort(self, candidates: int) -> list[tuple[int, int]]:
        coloured: list[tuple[int, int]] = []
        uncoloured = candidates
        colour = 0
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                low = available & -available
                vertex = low.bit_length() - 1
                uncoloured &= ~low
                available &= ~low & ~self.adjacency[vertex]
                coloured.append((vertex, colour))
        return coloured

    def _expand(self, clique: int, size: int, candidates: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        for vertex, colour in reversed(self._colour_sort(candidates)):
            if size + colour <= self.best_size:
                return
            bit = 1 << vertex
            remaining = candidates & self.adjacency[vertex]
            if remaining:
                self._expand(clique | bit, size + 1, remaining)
            elif size + 1 > self.best_size:
                self.best, self.best_size = clique | bit, size + 1
            candidates &= ~bit


def max_clique(graph: RelationGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> CliqueResult:
    if not graph.vertices:
        return CliqueResult(0, (), True)
    search = _CliqueSearch(graph.adjacency, budget)
    exact = search.run()
    if not exact:
        logger.warning(
            "Clique search on %s %s graph stopped after %d nodes; best found %d",
            graph.group.name,
            graph.relation.value,
            search.nodes,
            search.best_size,
        )
    witness = tuple(graph.vertices[position] for position in search.clique())
    if not witness_holds(graph.group, graph.relation, witness):
        raise RuntimeError(f"clique witness {witness} for {graph.group.name} does not satisfy {graph.relation.value}")
    return CliqueResult(search.best_size, witness, exact, search.nodes)


def witness_holds(group: FiniteGroup, relation: Relation, witness: tuple[int, ...]) -> bool:
    for position, u in enumerate(witness):
        for v in witness[position + 1 :]:
            if group.commutes(u, v):
                return False
            if relation is Relation.NON_NILPOTENT and is_nilpotent(group, group.closure([u, v]))[0]:
                return False
    return True


def _measure(result: CliqueResult) -> CliqueResult:
    # a singleton counts as a (vacuously) related set
    if result.size == 0:
        return CliqueResult(1, (0,), result.exact, result.nodes)
    return result


def a_measure(
    group: FiniteGroup,
    profile: Optional[CentralizerProfile] = None,
    budget: int = DEFAULT_CLIQUE_BUDGET,
) -> CliqueResult:
    graph = build_graph(group, Relation.NON_COMMUTING, profile=profile, budget=budget)
    return _measure(max_clique(graph, budget))


def n_measure(group: FiniteGroup, budget: int = DEFAULT_CLIQUE_BUDGET) -> CliqueResult:
    graph = build_graph(group, Relation.NON_NILPOTENT, budget=budget)
    return _measure(max_clique(graph, budget))
