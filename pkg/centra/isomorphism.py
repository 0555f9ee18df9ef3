from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import IsomorphismCapExceeded
from .invariants import center, centralizer_profile, is_soluble
from .perm import FiniteGroup


logger = logging.getLogger(__name__)

DEFAULT_ISOMORPHISM_CAP = 72


@dataclass(frozen=True)
class Fingerprint:
    order: int
    element_orders: tuple[int, ...]
    n_centralizers: int
    center_order: int
    derived_length: Optional[int]


def fingerprint(group: FiniteGroup) -> Fingerprint:
    return Fingerprint(
        order=group.order,
        element_orders=tuple(sorted(int(value) for value in group.element_orders)),
        n_centralizers=centralizer_profile(group).n,
        center_order=center(group).order,
        derived_length=is_soluble(group)[1],
    )


def generating_set(group: FiniteGroup) -> list[int]:
    """Greedy generating set preferring elements of high order, so few images need guessing."""
    orders = group.element_orders
    ranked = sorted(range(1, group.order), key=lambda a: (-int(orders[a]), a))
    chosen: list[int] = []
    current = group.trivial
    for a in ranked:
        if current.is_whole:
            break
        if a not in current:
            current = group.closure([a], base=current)
            chosen.append(a)
    return chosen


def _spanning_tree(group: FiniteGroup, generators: list[int]) -> list[tuple[int, int, int]]:
    # (element, parent, generator position) in breadth-first order from the identity
    seen = {0}
    tree: list[tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        following: list[int] = []
        for element in frontier:
            for position, generator in enumerate(generators):
                product = group.mult(element, generator)
                if product not in seen:
                    seen.add(product)
                    tree.append((product, element, position))
                    following.append(product)
        frontier = following
    return tree


def _extend(
    left: FiniteGroup,
    right: FiniteGroup,
    generators: list[int],
    tree: list[tuple[int, int, int]],
    images: list[int],
) -> Optional[np.ndarray]:
    mapping = np.full(left.order, -1, dtype=np.intp)
    mapping[0] = 0
    for element, parent, position in tree:
        mapping[element] = right.mult(int(mapping[parent]), images[position])
    if np.unique(mapping).size != left.order:
        return None
    everything = np.arange(left.order, dtype=np.intp)
    for generator, image in zip(generators, images):
        left_products = left.mult_many(everything, np.full(left.order, generator, dtype=np.intp))
        right_products = right.mult_many(mapping, np.full(left.order, image, dtype=np.intp))
        if np.any(mapping[left_products] != right_products):
            return None
    return mapping


def find_isomorphism(left: FiniteGroup, right: FiniteGroup) -> Optional[np.ndarray]:
    """Element-index map left -> right, found by backtracking over generator images."""
    if left.order != right.order:
        return None
    generators = generating_set(left)
    tree = _spanning_tree(left, generators)
    left_orders = left.element_orders
    right_orders = right.element_orders
    candidates = [np.flatnonzero(right_orders == left_orders[generator]) for generator in generators]
    images: list[int] = []

    def consistent(position: int, image: int) -> bool:
        for earlier in range(position):
            left_product = left.mult(generators[earlier], generators[position])
            right_product = right.mult(images[earlier], image)
            if left_orders[left_product] != right_orders[right_product]:
                return False
        return True

    def search(position: int) -> Optional[np.ndarray]:
        if position == len(generators):
            return _extend(left, right, generators, tree, images)
        for image in candidates[position]:
            image = int(image)
            if image in images or not consistent(position, image):
                continue
            images.append(image)
            mapping = search(position + 1)
            if mapping is not None:
                return mapping
            images.pop()
        return None

    return search(0)


def is_isomorphic(left: FiniteGroup, right: FiniteGroup, cap: int = DEFAULT_ISOMORPHISM_CAP) -> bool:
    if left.order != right.order:
        return False
    if left.order > cap:
        raise IsomorphismCapExceeded(f"cannot test {left.name} against {right.name}: order {left.order} exceeds {cap}")
    if fingerprint(left) != fingerprint(right):
        return False
    found = find_isomorphism(left, right) is not None
    logger.debug("%s %s %s", left.name, "~" if found else "!~", right.name)
    return found
