from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import repeat
from pathlib import Path
from typing import Optional, Sequence

from .analysis import GroupAnalysis
from .config import OUTPUT_FORMATS, Settings, get_settings
from .constructors import builtin_corpus
from .corpus_io import Record, parse_corpus, write_census, write_report
from .invariants import InvariantReport
from .perm import FiniteGroup
from .verify import (
    ConjectureCandidate,
    ConjectureVerdict,
    Status,
    VerificationResult,
    attained_n_values,
    census_properties,
    conjecture_scan,
    conjecture_targets,
    lemma_li_tight_cases,
    theorem_a_sharpness,
    verify_all,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    order_cap: int
    cache_limit: int
    clique_budget: int
    jobs: int
    output_format: str
    max_order: int
    family_limit: int
    a_measure_limit: int
    n_measure_limit: int
    isomorphism_cap: int
    corpus_path: Optional[Path] = None
    include_builtin: bool = True
    skip_n_measure: bool = False

    def __post_init__(self) -> None:
        for name in ("order_cap", "cache_limit", "clique_budget", "jobs", "max_order", "family_limit", "a_measure_limit", "n_measure_limit", "isomorphism_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}")

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None, **overrides: object) -> "RunConfig":
        settings = settings or get_settings()
        config = cls(
            order_cap=settings.order_cap,
            cache_limit=settings.cayley_cache_limit,
            clique_budget=settings.clique_budget,
            jobs=settings.jobs,
            output_format=settings.output_format,
            max_order=settings.max_order,
            family_limit=settings.family_limit,
            a_measure_limit=settings.a_measure_limit,
            n_measure_limit=settings.n_measure_limit,
            isomorphism_cap=settings.isomorphism_cap,
        )
        present = {key: value for key, value in overrides.items() if value is not None}
        return replace(config, **present) if present else config


@dataclass(frozen=True)
class GroupOutcome:
    report: InvariantReport
    results: tuple[VerificationResult, ...]


@dataclass(frozen=True)
class CensusOutcome:
    groups: tuple[GroupOutcome, ...]
    corpus_results: tuple[VerificationResult, ...] = field(default=())

    @property
    def reports(self) -> tuple[InvariantReport, ...]:
        return tuple(outcome.report for outcome in self.groups)

    @property
    def results(self) -> tuple[VerificationResult, ...]:
        return tuple(result for outcome in self.groups for result in outcome.results)

    @property
    def failures(self) -> list[VerificationResult]:
        return [result for result in self.results + self.corpus_results if result.status is Status.FAIL]


def analysis_for(group: FiniteGroup, config: RunConfig) -> GroupAnalysis:
    with_n_measure = not config.skip_n_measure and group.order <= config.n_measure_limit
    return GroupAnalysis(group, config.clique_budget, with_n_measure, group.order <= config.a_measure_limit)


def analyze_group(group: FiniteGroup, config: RunConfig) -> GroupOutcome:
    try:
        analysis = analysis_for(group, config)
        targets = conjecture_targets(config.order_cap, config.cache_limit)
        results = verify_all(analysis, targets, config.isomorphism_cap)
        return GroupOutcome(analysis.report, tuple(results))
    except Exception:
        logger.exception("Analysis of %s failed", group.name)
        raise


class CensusService:
    def __init__(self, config: RunConfig) -> None:
        self.config = config

    def load_corpus(self) -> list[FiniteGroup]:
        config = self.config
        groups: list[FiniteGroup] = []
        if config.include_builtin:
            groups.extend(
                builtin_corpus(
                    config.max_order,
                    family_limit=config.family_limit,
                    order_cap=config.order_cap,
                    cache_limit=config.cache_limit,
                )
            )
        if config.corpus_path is not None:
            with config.corpus_path.open(encoding="utf-8") as stream:
                records = parse_corpus(stream)
            groups.extend(record.to_group(config.order_cap, config.cache_limit) for record in records)
        names = Counter(group.name for group in groups)
        repeated = sorted(name for name, count in names.items() if count > 1)
        if repeated:
            logger.warning("Corpus names used by more than one group: %s", ", ".join(repeated))
        return groups

    def analysis_for(self, group: FiniteGroup) -> GroupAnalysis:
        return analysis_for(group, self.config)

    def analyze(self, group: FiniteGroup) -> GroupOutcome:
        return analyze_group(group, self.config)

    def run_census(self, groups: Optional[Sequence[FiniteGroup]] = None) -> CensusOutcome:
        groups = list(groups) if groups is not None else self.load_corpus()
        jobs = min(self.config.jobs, max(1, len(groups)))
        logger.info("Census of %d groups on %d worker(s)", len(groups), jobs)
        if jobs == 1:
            outcomes = [analyze_group(group, self.config) for group in groups]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                outcomes = list(executor.map(analyze_group, groups, repeat(self.config)))

        outcomes.sort(key=lambda outcome: outcome.report.name)
        reports = [outcome.report for outcome in outcomes]
        outcome = CensusOutcome(tuple(outcomes), tuple(census_properties(reports)))
        self._log_summaries(outcome)
        return outcome

    def scan_conjecture(self, groups: Optional[Sequence[FiniteGroup]] = None) -> list[ConjectureCandidate]:
        groups = list(groups) if groups is not None else self.load_corpus()
        targets = conjecture_targets(self.config.order_cap, self.config.cache_limit)
        candidates = conjecture_scan(groups, targets, self.config.isomorphism_cap)
        logger.info(
            "Conjecture scan: %d candidates among %d groups (%s)",
            len(candidates),
            len(groups),
            ", ".join(f"{candidate.name}: {candidate.verdict.value}" for candidate in candidates) or "none",
        )
        return candidates

    def render_census(self, outcome: CensusOutcome) -> str:
        rows = [(group.report, group.results) for group in outcome.groups]
        return write_census(rows, outcome.corpus_results, self.config.output_format)

    def render(self, records: Sequence[Record]) -> str:
        return write_report(records, self.config.output_format)

    def _log_summaries(self, outcome: CensusOutcome) -> None:
        sharpness = theorem_a_sharpness(outcome.reports)
        logger.info(
            "Soluble-bound claim exercised by %d groups; minimal insoluble n=%s attained by %s",
            len(sharpness.exercised),
            sharpness.minimal_insoluble_n,
            ", ".join(sharpness.attained_by) or "none",
        )
        tight = lemma_li_tight_cases(outcome.reports)
        logger.info("Involution bound tight for: %s", ", ".join(tight) or "none")
        logger.info("Attained centralizer counts: %s", attained_n_values(outcome.reports))
        budget = [result for result in outcome.results if result.status is Status.BUDGET]
        if budget:
            logger.warning("%d results are indeterminate under the current budgets", len(budget))
        failures = outcome.failures
        if failures:
            logger.error("%d claim checks FAILED", len(failures))


def has_counterexample(candidates: Sequence[ConjectureCandidate]) -> bool:
    return any(candidate.verdict is ConjectureVerdict.COUNTEREXAMPLE for candidate in candidates)
