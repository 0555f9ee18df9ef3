from __future__ import annotations

import logging
import math
from functools import cached_property
from typing import Optional

from .config import Settings, get_settings
from .graphs import CliqueResult, a_measure, n_measure
from .invariants import (
    CentralizerProfile,
    InvariantReport,
    centralizer_profile,
    center_from_profile,
    involution_set,
    is_nilpotent,
    is_semisimple,
    is_simple,
    is_soluble,
    kernel_b,
)
from .perm import ElementSet, FiniteGroup, Subgroup


logger = logging.getLogger(__name__)


class GroupAnalysis:
    """Lazily computed invariants of one group, shared by the report and every verifier."""

    def __init__(
        self,
        group: FiniteGroup,
        clique_budget: int,
        with_n_measure: bool,
        with_a_measure: bool = True,
    ) -> None:
        self.group = group
        self.clique_budget = clique_budget
        self.with_n_measure = with_n_measure
        self.with_a_measure = with_a_measure

    @classmethod
    def from_settings(
        cls,
        group: FiniteGroup,
        settings: Optional[Settings] = None,
        with_n_measure: Optional[bool] = None,
        with_a_measure: Optional[bool] = None,
    ) -> "GroupAnalysis":
        settings = settings or get_settings()
        if with_n_measure is None:
            with_n_measure = group.order <= settings.n_measure_limit
        if with_a_measure is None:
            with_a_measure = group.order <= settings.a_measure_limit
        return cls(group, settings.clique_budget, with_n_measure, with_a_measure)

    @property
    def name(self) -> str:
        return self.group.name

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def profile(self) -> CentralizerProfile:
        return centralizer_profile(self.group)

    @property
    def n(self) -> int:
        return self.profile.n

    @cached_property
    def center(self) -> Subgroup:
        return center_from_profile(self.profile)

    @property
    def center_index(self) -> int:
        return self.order // self.center.order

    @cached_property
    def involutions(self) -> ElementSet:
        return involution_set(self.group)

    @cached_property
    def solubility(self) -> tuple[bool, Optional[int]]:
        return is_soluble(self.group)

    @cached_property
    def nilpotency(self) -> tuple[bool, Optional[int]]:
        return is_nilpotent(self.group)

    @cached_property
    def simple(self) -> bool:
        return is_simple(self.group)

    @cached_property
    def semisimple(self) -> bool:
        return is_semisimple(self.group)

    @cached_property
    def kernel(self) -> Subgroup:
        return kernel_b(self.profile)

    @cached_property
    def a_clique(self) -> Optional[CliqueResult]:
        if not self.with_a_measure:
            return None
        return a_measure(self.group, profile=self.profile, budget=self.clique_budget)

    @cached_property
    def n_clique(self) -> Optional[CliqueResult]:
        if not self.with_n_measure:
            return None
        if self.nilpotency[0]:
            return CliqueResult(1, (0,), True)
        return n_measure(self.group, budget=self.clique_budget)

    @property
    def pyber_ratio(self) -> Optional[float]:
        if self.n < 2:
            return None
        return round(math.log(self.center_index) / (self.n - 1), 6)

    @cached_property
    def report(self) -> InvariantReport:
        soluble, derived_length = self.solubility
        nilpotent, nilpotency_class = self.nilpotency
        a_clique, n_clique = self.a_clique, self.n_clique
        report = InvariantReport(
            name=self.name,
            order=self.order,
            n_centralizers=self.n,
            center_order=self.center.order,
            center_index=self.center_index,
            involution_count=self.involutions.order,
            soluble=soluble,
            derived_length=derived_length,
            nilpotent=nilpotent,
            nilpotency_class=nilpotency_class,
            simple=self.simple,
            semisimple=self.semisimple,
            a_measure=a_clique.size if a_clique else None,
            a_measure_exact=a_clique.exact if a_clique else None,
            n_measure=n_clique.size if n_clique else None,
            n_measure_exact=n_clique.exact if n_clique else None,
            pyber_ratio=self.pyber_ratio,
        )
        logger.debug("Analyzed %s: order %d, n=%d", report.name, report.order, report.n_centralizers)
        return report


def analyze(
    group: FiniteGroup,
    settings: Optional[Settings] = None,
    with_n_measure: Optional[bool] = None,
    with_a_measure: Optional[bool] = None,
) -> InvariantReport:
    return GroupAnalysis.from_settings(group, settings, with_n_measure, with_a_measure).report
