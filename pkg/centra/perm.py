"""Permutation arithmetic and breadth-first enumeration of finite permutation groups.

Composition convention: ``compose(p, q)`` applies ``p`` first and ``q`` second,
so ``compose(p, q)[i] == q[p[i]]``. Conjugation is ``a^b = b^-1 * a * b``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import InvalidPermutation, OrderCapExceeded


logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 20000
DEFAULT_CACHE_LIMIT = 2048
_HASH_SEED = 0x5EED


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(value) for value in self.images)
        if not images:
            raise InvalidPermutation("a permutation needs at least one point")
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"images {list(images)} are not a bijection on 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        touched: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise InvalidPermutation(f"point {point} outside 0..{degree - 1}")
                if point in touched:
                    raise InvalidPermutation(f"point {point} appears in more than one cycle")
                touched.add(point)
            for position, point in enumerate(cycle):
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        result: list[tuple[int, ...]] = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return lcm(*(len(cycle) for cycle in self.cycles())) if not self.is_identity() else 1

    def is_even(self) -> bool:
        return sum(len(cycle) - 1 for cycle in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(point) for point in cycle) + ")" for cycle in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation that applies ``p`` and then ``q``."""
    if p.degree != q.degree:
        raise InvalidPermutation(f"cannot compose degree {p.degree} with degree {q.degree}")
    return Permutation(tuple(q.images[image] for image in p.images))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.degree
    for point, image in enumerate(p.images):
        images[image] = point
    return Permutation(tuple(images))


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def bits_to_mask(bits: int, size: int) -> np.ndarray:
    raw = bits.to_bytes((size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size].astype(bool)


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class FiniteGroup:
    """A permutation group enumerated into a fixed, reproducible element order.

    ``elements[0]`` is the identity; the remaining elements follow the
    breadth-first closure over the generators in the order given, so
    the index of an element only depends on the generator list.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Permutation],
        rows: np.ndarray,
        cache_limit: int = DEFAULT_CACHE_LIMIT,
    ) -> None:
        self.name = name
        self.generators = tuple(generators)
        self.degree = int(rows.shape[1])
        self.cache_limit = cache_limit
        self._rows = np.ascontiguousarray(rows, dtype=np.intp)
        self._rows.setflags(write=False)
        self._index = {row.tobytes(): position for position, row in enumerate(self._rows)}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order}, degree={self.degree})"

    def __getstate__(self) -> dict[str, object]:
        return {
            "name": self.name,
            "generators": self.generators,
            "rows": self._rows,
            "cache_limit": self.cache_limit,
        }

    def __setstate__(self, state: dict[str, object]) -> None:
        self.__init__(**state)  # type: ignore[misc]

    @property
    def order(self) -> int:
        return int(self._rows.shape[0])

    def __len__(self) -> int:
        return self.order

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(tuple(int(v) for v in row)) for row in self._rows)

    def element(self, index: int) -> Permutation:
        return self.elements[index]

    def index_of(self, p: Permutation | Sequence[int] | np.ndarray) -> int:
        images = p.images if isinstance(p, Permutation) else p
        key = np.ascontiguousarray(images, dtype=np.intp).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise InvalidPermutation(f"{images!r} is not an element of {self.name}") from None

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        seen: list[int] = []
        for generator in self.generators:
            position = self.index_of(generator)
            if position != 0 and position not in seen:
                seen.append(position)
        return tuple(seen)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1, self.generator_indices)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1, ())

    # lookups -----------------------------------------------------------

    @cached_property
    def _hash_weights(self) -> np.ndarray:
        rng = np.random.default_rng(_HASH_SEED)
        return rng.integers(1, np.iinfo(np.int64).max, size=self.degree, dtype=np.int64).astype(np.uint64) | np.uint64(1)

    def _row_keys(self, rows: np.ndarray) -> np.ndarray:
        return (rows.astype(np.uint64) * self._hash_weights).sum(axis=1, dtype=np.uint64)

    @cached_property
    def _key_index(self) -> tuple[np.ndarray, np.ndarray]:
        keys = self._row_keys(self._rows)
        order = np.argsort(keys, kind="stable")
        return keys[order], order

    def lookup_many(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of a stack of permutation rows; hashed search, verified row by row."""
        rows = np.ascontiguousarray(rows, dtype=np.intp)
        if rows.shape[0] == 0:
            return np.empty(0, dtype=np.intp)
        sorted_keys, order = self._key_index
        keys = self._row_keys(rows)
        positions = np.minimum(np.searchsorted(sorted_keys, keys), len(sorted_keys) - 1)
        found = order[positions].astype(np.intp)
        verified = (sorted_keys[positions] == keys) & np.all(self._rows[found] == rows, axis=1)
        for miss in np.flatnonzero(~verified):
            found[miss] = self.index_of(rows[miss])
        return found

    # arithmetic --------------------------------------------------------

    @cached_property
    def table(self) -> Optional[np.ndarray]:
        if self.order > self.cache_limit:
            return None
        logger.debug("Building %dx%d multiplication table for %s", self.order, self.order, self.name)
        table = np.empty((self.order, self.order), dtype=np.int32)
        for a in range(self.order):
            table[a] = self.lookup_many(self._rows[:, self._rows[a]])
        table.setflags(write=False)
        return table

    def mult(self, a: int, b: int, *, use_cache: bool = True) -> int:
        if use_cache and self.table is not None:
            return int(self.table[a, b])
        return self._index[self._rows[b][self._rows[a]].tobytes()]

    def mult_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.intp)
        b = np.asarray(b, dtype=np.intp)
        if self.table is not None:
            return self.table[a, b].astype(np.intp)
        return self.lookup_many(np.take_along_axis(self._rows[b], self._rows[a], axis=1))

    @cached_property
    def inverses(self) -> np.ndarray:
        result = self.lookup_many(np.argsort(self._rows, axis=1))
        result.setflags(write=False)
        return result

    def inverse_index(self, a: int) -> int:
        return int(self.inverses[a])

    def conjugate(self, a: int, b: int) -> int:
        return self.mult(self.mult(self.inverse_index(b), a), b)

    def conjugate_many(self, a: int) -> np.ndarray:
        """Indices of ``a^g`` for every element ``g``, in element order."""
        inverse_rows = np.argsort(self._rows, axis=1)
        return self.lookup_many(np.take_along_axis(self._rows, self._rows[a][inverse_rows], axis=1))

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.mult(self.mult(self.inverse_index(a), self.inverse_index(b)), self.mult(a, b))

    def commutes(self, a: int, b: int) -> bool:
        return self.mult(a, b) == self.mult(b, a)

    def commuting_mask(self, a: int) -> np.ndarray:
        row = self._rows[a]
        return np.all(row[self._rows] == self._rows[:, row], axis=1)

    def element_order(self, a: int) -> int:
        return self.element(a).order()

    @cached_property
    def element_orders(self) -> np.ndarray:
        identity = np.arange(self.degree, dtype=np.intp)
        orders = np.zeros(self.order, dtype=np.intp)
        power = self._rows.copy()
        exponent = 1
        while True:
            reached = np.all(power == identity, axis=1) & (orders == 0)
            orders[reached] = exponent
            if orders.all():
                break
            power = np.take_along_axis(self._rows, power, axis=1)
            exponent += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        generators = self.generator_indices
        return all(
            self.commutes(a, b) for position, a in enumerate(generators) for b in generators[position + 1 :]
        )

    # subgroups ---------------------------------------------------------

    def closure(self, seeds: Iterable[int], base: Optional["Subgroup"] = None) -> "Subgroup":
        """Smallest subgroup containing ``seeds`` (and ``base`` when given)."""
        generators = list(base.generators) if base is not None else []
        mask = base.mask.copy() if base is not None else np.zeros(self.order, dtype=bool)
        mask[0] = True
        fresh = [int(seed) for seed in dict.fromkeys(seeds) if int(seed) != 0 and not mask[int(seed)]]
        if base is not None and not fresh:
            return base
        generators.extend(fresh)
        if not generators:
            return self.trivial
        generator_array = np.asarray(generators, dtype=np.intp)
        frontier = np.flatnonzero(mask)
        while frontier.size:
            products = self.mult_many(
                np.repeat(frontier, generator_array.size),
                np.tile(generator_array, frontier.size),
            )
            products = np.unique(products)
            frontier = products[~mask[products]]
            mask[frontier] = True
        return Subgroup.from_mask(self, mask, tuple(generators))


def enumerate_group(
    name: str,
    generators: Sequence[Permutation],
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
) -> FiniteGroup:
    if not generators:
        raise InvalidPermutation(f"group {name} needs at least one generator")
    degree = generators[0].degree
    for generator in generators:
        if not isinstance(generator, Permutation):
            raise InvalidPermutation(f"generator {generator!r} of {name} is not a Permutation")
        if generator.degree != degree:
            raise InvalidPermutation(f"generators of {name} mix degrees {degree} and {generator.degree}")

    generator_rows = [np.asarray(generator.images, dtype=np.intp) for generator in generators]
    identity = np.arange(degree, dtype=np.intp)
    rows = [identity]
    seen = {identity.tobytes()}
    head = 0
    while head < len(rows):
        current = rows[head]
        for generator in generator_rows:
            product = generator[current]
            key = product.tobytes()
            if key in seen:
                continue
            if len(rows) >= order_cap:
                raise OrderCapExceeded(name, order_cap)
            seen.add(key)
            rows.append(product)
        head += 1

    logger.debug("Enumerated %s: order %d on %d points", name, len(rows), degree)
    return FiniteGroup(
        name=name,
        generators=generators,
        rows=np.stack(rows),
        cache_limit=cache_limit,
    )


def mult(group: FiniteGroup, a: int, b: int) -> int:
    return group.mult(a, b)


def conjugate(group: FiniteGroup, a: int, b: int) -> int:
    return group.conjugate(a, b)


def element_order(group: FiniteGroup, a: int) -> int:
    return group.element_order(a)


class ElementSet:
    """A set of element indices of one group, stored as an integer bitset."""

    def __init__(self, parent: FiniteGroup, members: int) -> None:
        self.parent = parent
        self.members = members

    @classmethod
    def from_mask(cls, parent: FiniteGroup, mask: np.ndarray, *args: object) -> "ElementSet":
        instance = cls(parent, mask_to_bits(mask), *args)  # type: ignore[call-arg]
        instance.__dict__["mask"] = mask
        return instance

    @classmethod
    def from_indices(cls, parent: FiniteGroup, indices: Iterable[int], *args: object) -> "ElementSet":
        mask = np.zeros(parent.order, dtype=bool)
        mask[list(indices)] = True
        return cls.from_mask(parent, mask, *args)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __contains__(self, index: int) -> bool:
        return bool(self.members >> int(index) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(int(index) for index in self.indices)

    def __len__(self) -> int:
        return self.order

    @property
    def order(self) -> int:
        return self.members.bit_count()

    @cached_property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.members, self.parent.order)

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def issubset(self, other: "ElementSet") -> bool:
        return self.members & ~other.members == 0


class Subgroup(ElementSet):
    def __init__(self, parent: FiniteGroup, members: int, generators: Optional[tuple[int, ...]] = None) -> None:
        super().__init__(parent, members)
        if generators is not None:
            self.__dict__["generators"] = generators

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.parent.name})"

    @property
    def is_trivial(self) -> bool:
        return self.members == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    @cached_property
    def generators(self) -> tuple[int, ...]:
        current = self.parent.trivial
        for index in self:
            if index not in current:
                current = self.parent.closure([index], base=current)
            if current.members == self.members:
                break
        return current.generators

    @cached_property
    def is_abelian(self) -> bool:
        generators = self.generators
        return all(
            self.parent.commutes(a, b) for position, a in enumerate(generators) for b in generators[position + 1 :]
        )

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def is_normal(self) -> bool:
        return all(
            self.parent.conjugate(h, g) in self
            for h in self.generators
            for g in self.parent.generator_indices
        )

    def lagrange_ok(self) -> bool:
        return self.parent.order % self.order == 0
