"""One verifier per claim about centralizer counts.

Implication-shaped claims report ``vacuous`` when their hypothesis does not
hold, so a census shows how many groups actually exercise each claim. All
inequalities are compared in integer arithmetic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .analysis import GroupAnalysis
from .constructors import Family, FamilySpec, direct_product, make_family
from .invariants import InvariantReport, centralizer_profile, factorial_at_least, is_nilpotent, is_two_engel
from .isomorphism import DEFAULT_ISOMORPHISM_CAP, is_isomorphic
from .perm import DEFAULT_CACHE_LIMIT, DEFAULT_ORDER_CAP, FiniteGroup


logger = logging.getLogger(__name__)

CLAIM_IDS = (
    "prop-A-bound",
    "thm-A",
    "thm-B1",
    "thm-B2",
    "thm-tb-lower",
    "lemma-li",
    "cor-simple",
    "prop-semisimple",
    "kernel-B",
    "derived-length",
    "c4-soluble",
    "no-c2-c3",
    "conjecture-scan",
)

SOLUBLE_CENTRALIZER_BOUND = 21
CORPUS = "corpus"

Subject = Union[FiniteGroup, GroupAnalysis]


class Status(str, Enum):
    PASS = "pass"
    FAIL = "FAIL"
    VACUOUS = "vacuous"
    BUDGET = "budget"


@dataclass(frozen=True)
class VerificationResult:
    claim_id: str
    group_name: str
    hypothesis_held: bool
    conclusion_held: Optional[bool]
    status: Status
    detail: str = ""


class ConjectureVerdict(str, Enum):
    MATCHES = "matches-conjecture"
    COUNTEREXAMPLE = "counterexample"
    TOO_LARGE = "too-large-to-test"


@dataclass(frozen=True)
class ConjectureCandidate:
    name: str
    order: int
    n_centralizers: int
    verdict: ConjectureVerdict
    target: Optional[str] = None


@dataclass(frozen=True)
class SharpnessSummary:
    exercised: tuple[str, ...]
    minimal_insoluble_n: Optional[int]
    attained_by: tuple[str, ...]


def judge(
    claim_id: str,
    group_name: str,
    hypothesis: bool,
    conclusion: Optional[bool],
    detail: str,
) -> VerificationResult:
    if not hypothesis:
        status = Status.VACUOUS
    elif conclusion is None:
        status = Status.BUDGET
    elif conclusion:
        status = Status.PASS
    else:
        status = Status.FAIL
        logger.error("%s FAILED on %s: %s", claim_id, group_name, detail)
    return VerificationResult(claim_id, group_name, hypothesis, conclusion, status, detail)


def _analysis(subject: Subject) -> GroupAnalysis:
    if isinstance(subject, GroupAnalysis):
        return subject
    return GroupAnalysis.from_settings(subject)


def verify_prop_A_bound(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    n = analysis.n
    if n == 1:
        # condition (A, 0) asks for two distinct elements inside a singleton
        return judge("prop-A-bound", analysis.name, False, None, "n=1: condition (A,0) is degenerate")
    clique = analysis.a_clique
    bound = n - 1
    if clique is None:
        return judge("prop-A-bound", analysis.name, True, None, f"a_measure skipped at order {analysis.order}; n-1={bound}")
    if clique.exact:
        conclusion: Optional[bool] = clique.size <= bound
    elif clique.size > bound:
        conclusion = False
    else:
        conclusion = None
    qualifier = "" if clique.exact else " (lower bound, search truncated)"
    return judge("prop-A-bound", analysis.name, True, conclusion, f"a_measure={clique.size}{qualifier} ≤ n-1={bound}")


def verify_thm_A(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    soluble, _ = analysis.solubility
    return judge(
        "thm-A",
        analysis.name,
        analysis.n <= SOLUBLE_CENTRALIZER_BOUND,
        soluble,
        f"n={analysis.n}, soluble={str(soluble).lower()}",
    )


def verify_thm_B(subject: Subject) -> tuple[VerificationResult, VerificationResult]:
    analysis = _analysis(subject)
    n, order = analysis.n, analysis.order
    nilpotent, _ = analysis.nilpotency
    soluble, _ = analysis.solubility
    involutions = analysis.involutions.order

    first = judge(
        "thm-B1",
        analysis.name,
        n > 1 and order < 2 * n,
        not nilpotent,
        f"|G|={order} < 2n={2 * n}; nilpotent={str(nilpotent).lower()}",
    )
    chain_holds = involutions >= 2 * n - order
    second = judge(
        "thm-B2",
        analysis.name,
        n > 1 and 19 * order < 30 * n + 15,
        soluble and not nilpotent and chain_holds,
        (
            f"19|G|={19 * order} < 30n+15={30 * n + 15}; soluble={str(soluble).lower()}, "
            f"nilpotent={str(nilpotent).lower()}; |I(G)|={involutions} ≥ 2n-|G|={2 * n - order}"
        ),
    )
    return first, second


def verify_tb_lower(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    index = analysis.center_index
    ratio = analysis.pyber_ratio
    detail = f"n={analysis.n} ≤ |G:Z(G)|={index}"
    if ratio is not None:
        detail += f"; log|G:Z(G)|/(n-1)={ratio:.6f}"
    return judge("thm-tb-lower", analysis.name, True, analysis.n <= index, detail)


def verify_lemma_li(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    left = 2 * analysis.n
    right = analysis.order + analysis.involutions.order
    return judge(
        "lemma-li",
        analysis.name,
        True,
        left <= right,
        f"{left} ≤ {right} (2n vs |G|+|I(G)|, |I(G)|={analysis.involutions.order})",
    )


def verify_cor_simple(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    n, order = analysis.n, analysis.order
    involutions = analysis.involutions.order
    count_bound = 3 * n < 2 * order
    # C2 and C3 are the only simple groups with 3|I(G)| >= |G|
    involution_bound = order in (2, 3) or 3 * involutions < order
    return judge(
        "cor-simple",
        analysis.name,
        analysis.simple,
        count_bound and involution_bound,
        f"3n={3 * n} < 2|G|={2 * order}; 3|I(G)|={3 * involutions} < |G|={order}",
    )


def verify_semisimple_bound(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    n, order = analysis.n, analysis.order
    return judge(
        "prop-semisimple",
        analysis.name,
        analysis.semisimple,
        factorial_at_least(order, n - 1),
        f"|G|={order} ≤ (n-1)!=({n - 1})!",
    )


def verify_kernel_B(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    group = analysis.group
    kernel = analysis.kernel
    nilpotent, nilpotency_class = is_nilpotent(group, kernel)
    engel = is_two_engel(group, kernel)
    index = analysis.order // kernel.order
    trivial_when_semisimple = kernel.is_trivial or not analysis.semisimple
    index_bound = factorial_at_least(index, analysis.n - 1)
    conclusion = nilpotent and (nilpotency_class or 0) <= 3 and engel and trivial_when_semisimple and index_bound
    return judge(
        "kernel-B",
        analysis.name,
        True,
        conclusion,
        (
            f"|B|={kernel.order}, class={nilpotency_class}, 2-Engel={str(engel).lower()}, "
            f"|G:B|={index} ≤ ({analysis.n - 1})!, semisimple={str(analysis.semisimple).lower()}"
        ),
    )


def verify_derived_length(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    soluble, derived_length = analysis.solubility
    return judge(
        "derived-length",
        analysis.name,
        soluble,
        soluble and derived_length is not None and derived_length <= analysis.n,
        f"dl={derived_length} ≤ n={analysis.n}",
    )


def verify_c4_soluble(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    soluble, _ = analysis.solubility
    return judge("c4-soluble", analysis.name, analysis.n == 4, soluble, f"n={analysis.n}, soluble={str(soluble).lower()}")


def verify_no_c2_c3(subject: Subject) -> VerificationResult:
    analysis = _analysis(subject)
    return judge("no-c2-c3", analysis.name, True, analysis.n not in (2, 3), f"n={analysis.n}")


@lru_cache(maxsize=4)
def conjecture_targets(
    order_cap: int = DEFAULT_ORDER_CAP,
    cache_limit: int = DEFAULT_CACHE_LIMIT,
) -> tuple[FiniteGroup, ...]:
    s3 = FamilySpec(Family.SYMMETRIC, 3)
    return (
        make_family(s3, order_cap=order_cap, cache_limit=cache_limit),
        direct_product(
            make_family(s3, order_cap=order_cap, cache_limit=cache_limit),
            make_family(s3, order_cap=order_cap, cache_limit=cache_limit),
            order_cap=order_cap,
            cache_limit=cache_limit,
        ),
        make_family(FamilySpec(Family.DIHEDRAL, 10), order_cap=order_cap, cache_limit=cache_limit),
    )


def is_conjecture_candidate(order: int, n: int) -> bool:
    return order >= 2 and 2 * order <= 3 * n


def match_target(
    group: FiniteGroup,
    targets: Sequence[FiniteGroup],
    cap: int = DEFAULT_ISOMORPHISM_CAP,
) -> Optional[str]:
    for target in targets:
        if target.order == group.order and is_isomorphic(group, target, cap=cap):
            return target.name
    return None


def verify_conjecture(
    subject: Subject,
    targets: Optional[Sequence[FiniteGroup]] = None,
    cap: int = DEFAULT_ISOMORPHISM_CAP,
) -> VerificationResult:
    analysis = _analysis(subject)
    n, order = analysis.n, analysis.order
    hypothesis = is_conjecture_candidate(order, n)
    detail = f"2|G|={2 * order} ≤ 3n={3 * n}"
    if not hypothesis:
        return judge("conjecture-scan", analysis.name, False, None, detail)
    if order > cap:
        return judge("conjecture-scan", analysis.name, True, None, f"{detail}; {ConjectureVerdict.TOO_LARGE.value}")
    target = match_target(analysis.group, targets if targets is not None else conjecture_targets(), cap)
    suffix = f"isomorphic to {target}" if target else "no target matches"
    return judge("conjecture-scan", analysis.name, True, target is not None, f"{detail}; {suffix}")


def verify_all(
    subject: Subject,
    targets: Optional[Sequence[FiniteGroup]] = None,
    isomorphism_cap: int = DEFAULT_ISOMORPHISM_CAP,
) -> list[VerificationResult]:
    """Every per-group claim, in ``CLAIM_IDS`` order."""
    analysis = _analysis(subject)
    first, second = verify_thm_B(analysis)
    return [
        verify_prop_A_bound(analysis),
        verify_thm_A(analysis),
        first,
        second,
        verify_tb_lower(analysis),
        verify_lemma_li(analysis),
        verify_cor_simple(analysis),
        verify_semisimple_bound(analysis),
        verify_kernel_B(analysis),
        verify_derived_length(analysis),
        verify_c4_soluble(analysis),
        verify_no_c2_c3(analysis),
        verify_conjecture(analysis, targets, isomorphism_cap),
    ]


VERIFIERS = {
    "prop-A-bound": verify_prop_A_bound,
    "thm-A": verify_thm_A,
    "thm-B1": lambda subject: verify_thm_B(subject)[0],
    "thm-B2": lambda subject: verify_thm_B(subject)[1],
    "thm-tb-lower": verify_tb_lower,
    "lemma-li": verify_lemma_li,
    "cor-simple": verify_cor_simple,
    "prop-semisimple": verify_semisimple_bound,
    "kernel-B": verify_kernel_B,
    "derived-length": verify_derived_length,
    "c4-soluble": verify_c4_soluble,
    "no-c2-c3": verify_no_c2_c3,
    "conjecture-scan": verify_conjecture,
}


# corpus-level summaries ------------------------------------------------


def census_properties(reports: Iterable[InvariantReport]) -> list[VerificationResult]:
    reports = list(reports)
    small = sorted(report.name for report in reports if report.n_centralizers in (2, 3))
    four = [report for report in reports if report.n_centralizers == 4]
    insoluble_four = sorted(report.name for report in four if not report.soluble)
    return [
        judge(
            "no-c2-c3",
            CORPUS,
            bool(reports),
            not small,
            f"{len(reports)} groups; n in {{2,3}}: {', '.join(small) or 'none'}",
        ),
        judge(
            "c4-soluble",
            CORPUS,
            bool(four),
            not insoluble_four,
            f"{len(four)} groups with n=4; insoluble: {', '.join(insoluble_four) or 'none'}",
        ),
    ]


def attained_n_values(reports: Iterable[InvariantReport]) -> list[int]:
    return sorted({report.n_centralizers for report in reports})


def theorem_a_sharpness(reports: Iterable[InvariantReport]) -> SharpnessSummary:
    reports = list(reports)
    exercised = tuple(sorted(report.name for report in reports if report.n_centralizers <= SOLUBLE_CENTRALIZER_BOUND))
    insoluble = [report for report in reports if not report.soluble]
    if not insoluble:
        return SharpnessSummary(exercised, None, ())
    minimal = min(report.n_centralizers for report in insoluble)
    attained_by = tuple(sorted(report.name for report in insoluble if report.n_centralizers == minimal))
    return SharpnessSummary(exercised, minimal, attained_by)


def lemma_li_tight_cases(reports: Iterable[InvariantReport]) -> list[str]:
    return sorted(
        report.name for report in reports if 2 * report.n_centralizers == report.order + report.involution_count
    )


def conjecture_scan(
    groups: Iterable[FiniteGroup],
    targets: Optional[Sequence[FiniteGroup]] = None,
    cap: int = DEFAULT_ISOMORPHISM_CAP,
) -> list[ConjectureCandidate]:
    targets = targets if targets is not None else conjecture_targets()
    candidates: list[ConjectureCandidate] = []
    for group in sorted(groups, key=lambda item: item.name):
        n = centralizer_profile(group).n
        if not is_conjecture_candidate(group.order, n):
            continue
        if group.order > cap:
            candidates.append(ConjectureCandidate(group.name, group.order, n, ConjectureVerdict.TOO_LARGE))
            logger.warning("Conjecture candidate %s (order %d) is above the isomorphism cap %d", group.name, group.order, cap)
            continue
        target = match_target(group, targets, cap)
        verdict = ConjectureVerdict.MATCHES if target else ConjectureVerdict.COUNTEREXAMPLE
        if target is None:
            logger.error("Conjecture counterexample: %s has order %d and n=%d", group.name, group.order, n)
        candidates.append(ConjectureCandidate(group.name, group.order, n, verdict, target))
    return candidates
