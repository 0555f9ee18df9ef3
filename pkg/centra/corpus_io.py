"""Group catalogs in, analysis reports out.

Catalog lines are JSON objects with exactly the keys ``name``, ``degree`` and
``generators`` (0-based image arrays). Report records are written as one JSON
object per line, or as CSV with a header; column order is the dataclass field
order of the record type, or ``CENSUS_COLUMNS`` for census rows. Floats are
always printed with six decimals.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, Iterable, Optional, Sequence, TextIO, Union

from .errors import CorpusFormatError, InvalidPermutation
from .invariants import InvariantReport
from .perm import DEFAULT_CACHE_LIMIT, DEFAULT_ORDER_CAP, FiniteGroup, Permutation, enumerate_group
from .verify import CLAIM_IDS, ConjectureCandidate, ConjectureVerdict, Status, VerificationResult


logger = logging.getLogger(__name__)

CORPUS_KEYS = frozenset({"name", "degree", "generators"})
REPORT_FIELDS = tuple(field.name for field in fields(InvariantReport))
RESULT_FIELDS = tuple(field.name for field in fields(VerificationResult))
CANDIDATE_FIELDS = tuple(field.name for field in fields(ConjectureCandidate))
CENSUS_REPORT_COLUMNS = (
    "name",
    "order",
    "n_centralizers",
    "center_order",
    "involution_count",
    "soluble",
    "nilpotent",
    "simple",
    "semisimple",
    "derived_length",
    "a_measure",
    "n_measure",
)
CENSUS_COLUMNS = CENSUS_REPORT_COLUMNS + CLAIM_IDS

Record = Union[InvariantReport, VerificationResult, ConjectureCandidate]
CensusRow = tuple[InvariantReport, Sequence[VerificationResult]]


@dataclass(frozen=True)
class CorpusRecord:
    name: str
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def to_group(
        self,
        order_cap: int = DEFAULT_ORDER_CAP,
        cache_limit: int = DEFAULT_CACHE_LIMIT,
    ) -> FiniteGroup:
        generators = [Permutation(images) for images in self.generators]
        return enumerate_group(self.name, generators, order_cap=order_cap, cache_limit=cache_limit)


def parse_corpus(stream: Union[TextIO, Iterable[str]]) -> list[CorpusRecord]:
    records: list[CorpusRecord] = []
    for line_number, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        records.append(parse_corpus_line(line, line_number))
    logger.info("Parsed %d corpus records", len(records))
    return records


def parse_corpus_line(line: str, line_number: int) -> CorpusRecord:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(line_number, f"not valid JSON ({exc.msg})") from None
    if not isinstance(payload, dict):
        raise CorpusFormatError(line_number, "expected an object")
    if set(payload) != CORPUS_KEYS:
        raise CorpusFormatError(line_number, f"expected keys {sorted(CORPUS_KEYS)}, got {sorted(payload)}")

    name = payload["name"]
    degree = payload["degree"]
    generators = payload["generators"]
    if not isinstance(name, str) or not name.strip():
        raise CorpusFormatError(line_number, "name must be a non-empty string")
    if not _is_int(degree) or degree < 1:
        raise CorpusFormatError(line_number, f"degree must be an integer >= 1, got {degree!r}")
    if not isinstance(generators, list) or not generators:
        raise CorpusFormatError(line_number, "generators must be a non-empty array")

    parsed: list[tuple[int, ...]] = []
    for position, images in enumerate(generators):
        if not isinstance(images, list) or not all(_is_int(value) for value in images):
            raise CorpusFormatError(line_number, f"generator {position} must be an array of integers")
        if len(images) != degree:
            raise CorpusFormatError(line_number, f"generator {position} has length {len(images)}, degree is {degree}")
        try:
            Permutation(tuple(images))
        except InvalidPermutation as exc:
            raise CorpusFormatError(line_number, f"generator {position}: not a bijection ({exc})") from None
        parsed.append(tuple(images))
    return CorpusRecord(name=name, degree=degree, generators=tuple(parsed))


def dump_corpus(records: Iterable[CorpusRecord]) -> str:
    return "".join(
        json.dumps({"name": record.name, "degree": record.degree, "generators": [list(g) for g in record.generators]})
        + "\n"
        for record in records
    )


def record_from_group(group: FiniteGroup) -> CorpusRecord:
    return CorpusRecord(group.name, group.degree, tuple(generator.images for generator in group.generators))


# reports ---------------------------------------------------------------


def write_report(records: Sequence[Record], fmt: str = "json", stream: Optional[TextIO] = None) -> str:
    if fmt == "json":
        text = "".join(_json_line(_as_row(record)) + "\n" for record in records)
    elif fmt == "csv":
        columns = tuple(field.name for field in fields(records[0])) if records else REPORT_FIELDS
        text = _csv_text(columns, (_as_row(record) for record in records))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if stream is not None:
        stream.write(text)
    return text


def write_census(
    rows: Sequence[CensusRow],
    corpus_results: Sequence[VerificationResult] = (),
    fmt: str = "json",
    stream: Optional[TextIO] = None,
) -> str:
    """Census output: each report followed by its own verdicts (json), or one row per report (csv).

    Each row pairs a report with its own verdicts, so groups may share a name.
    Corpus-level verdicts are appended to json output only.
    """
    if fmt == "json":
        lines: list[str] = []
        for report, results in rows:
            lines.append(_json_line(_as_row(report)))
            lines.extend(_json_line(_as_row(result)) for result in results)
        lines.extend(_json_line(_as_row(result)) for result in corpus_results)
        text = "".join(line + "\n" for line in lines)
    elif fmt == "csv":
        table = []
        for report, results in rows:
            row: dict[str, Any] = {column: getattr(report, column) for column in CENSUS_REPORT_COLUMNS}
            row.update({result.claim_id: result.status.value for result in results})
            table.append(row)
        text = _csv_text(CENSUS_COLUMNS, table)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if stream is not None:
        stream.write(text)
    return text


def parse_reports(stream: Union[TextIO, Iterable[str]]) -> list[Record]:
    records: list[Record] = []
    for line_number, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(line_number, f"not valid JSON ({exc.msg})") from None
        if set(payload) == set(RESULT_FIELDS):
            payload["status"] = Status(payload["status"])
            records.append(VerificationResult(**payload))
        elif set(payload) == set(CANDIDATE_FIELDS):
            payload["verdict"] = ConjectureVerdict(payload["verdict"])
            records.append(ConjectureCandidate(**payload))
        elif set(payload) == set(REPORT_FIELDS):
            records.append(InvariantReport(**payload))
        else:
            raise CorpusFormatError(line_number, f"unrecognised report keys {sorted(payload)}")
    return records


def _as_row(record: Record) -> dict[str, Any]:
    return {field.name: getattr(record, field.name) for field in fields(record)}


def _json_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, Enum):
        return json.dumps(value.value)
    return json.dumps(value, ensure_ascii=False)


def _json_line(row: dict[str, Any]) -> str:
    return "{" + ", ".join(f"{json.dumps(key)}: {_json_value(value)}" for key, value in row.items()) + "}"


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, Enum):
        return value.value
    return str(value)


def _csv_text(columns: Sequence[str], rows: Iterable[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
