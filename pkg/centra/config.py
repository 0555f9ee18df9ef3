from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv


load_dotenv()

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class Settings:
    order_cap: int
    cayley_cache_limit: int
    clique_budget: int
    jobs: int
    max_order: int
    family_limit: int
    a_measure_limit: int
    n_measure_limit: int
    isomorphism_cap: int
    output_format: str
    log_level: str


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings(
        order_cap=_positive_int("CENTRA_ORDER_CAP", 20000),
        cayley_cache_limit=_positive_int("CENTRA_CAYLEY_CACHE_LIMIT", 2048),
        clique_budget=_positive_int("CENTRA_CLIQUE_BUDGET", 10_000_000),
        jobs=_positive_int("CENTRA_JOBS", os.cpu_count() or 1),
        max_order=_positive_int("CENTRA_MAX_ORDER", 5040),
        family_limit=_positive_int("CENTRA_FAMILY_LIMIT", 120),
        a_measure_limit=_positive_int("CENTRA_A_MEASURE_LIMIT", 360),
        n_measure_limit=_positive_int("CENTRA_N_MEASURE_LIMIT", 360),
        isomorphism_cap=_positive_int("CENTRA_ISOMORPHISM_CAP", 72),
        output_format=_output_format(os.getenv("CENTRA_OUTPUT_FORMAT", "json")),
        log_level=os.getenv("CENTRA_LOG_LEVEL", "WARNING").strip().upper() or "WARNING",
    )


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip().replace("_", "")
    if not raw:
        return default
    if not raw.isdigit() or int(raw) < 1:
        logger.warning("Ignoring %s=%r, expected a positive integer; using %d", name, raw, default)
        return default
    return int(raw)


def _output_format(raw: str) -> str:
    clean = raw.strip().lower()
    if clean in {"jsonl", "json-lines"}:
        return "json"
    if clean not in OUTPUT_FORMATS:
        logger.warning("Ignoring CENTRA_OUTPUT_FORMAT=%r; using json", raw)
        return "json"
    return clean
