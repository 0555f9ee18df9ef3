from __future__ import annotations

import csv
import io
import json

import pytest

from centra.cli import EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from centra.config import get_settings
from centra.corpus_io import dump_corpus, record_from_group

from conftest import named_group


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def records(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines()]


def write_catalog(path, specs):
    path.write_text(dump_corpus(record_from_group(named_group(spec)) for spec in specs), encoding="utf-8")
    return path


@pytest.mark.parametrize(("spec", "n"), [("A5", 22), ("C1", 1), ("S3xS3", 25), ("d10", 7)])
def test_analyze_reports_centralizer_count(spec, n):
    code, text = run("analyze", spec)
    assert code == EXIT_OK
    (report,) = records(text)
    assert report["n_centralizers"] == n


def test_analyze_a5_report():
    _, text = run("analyze", "A5")
    (report,) = records(text)
    assert report["soluble"] is False
    assert report["derived_length"] is None
    assert report["simple"] is True
    assert report["involution_count"] == 16
    assert report["n_measure"] == 21


def test_analyze_csv_output():
    code, text = run("--format", "csv", "analyze", "S4")
    assert code == EXIT_OK
    header, row = text.splitlines()
    assert dict(zip(header.split(","), row.split(",")))["derived_length"] == "3"


def test_analyze_corpus_record_by_name(tmp_path):
    path = tmp_path / "catalog.jsonl"
    path.write_text('{"name": "my-s3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}\n', encoding="utf-8")
    code, text = run("analyze", "my-s3", "--corpus", str(path))
    assert code == EXIT_OK
    (report,) = records(text)
    assert (report["name"], report["order"], report["n_centralizers"]) == ("my-s3", 6, 5)


def test_unknown_group_spec_is_a_usage_error(capsys):
    code, text = run("analyze", "Z5")
    assert code == EXIT_USAGE
    assert text == ""
    assert "Z5" in capsys.readouterr().err


def test_order_cap_is_a_resource_error():
    code, _ = run("--order-cap", "100", "analyze", "S5")
    assert code == EXIT_RESOURCE


def test_non_positive_option_is_a_usage_error():
    code, _ = run("--clique-budget", "0", "analyze", "S3")
    assert code == EXIT_USAGE


def test_missing_subcommand_exits_through_argparse():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == EXIT_USAGE


def test_verify_thm_a_on_a5_is_vacuous():
    code, text = run("verify", "thm-A", "A5")
    assert code == EXIT_OK
    (result,) = records(text)
    assert result["status"] == "vacuous"
    assert result["detail"] == "n=22, soluble=false"


def test_verify_lemma_li_on_d10():
    code, text = run("verify", "lemma-li", "D10")
    assert code == EXIT_OK
    (result,) = records(text)
    assert result["status"] == "pass"
    assert result["detail"].startswith("14 ≤ 16")


def test_verify_thm_b1_on_d10():
    code, text = run("verify", "thm-B1", "D10")
    assert code == EXIT_OK
    assert records(text)[0]["status"] == "pass"


def test_verify_unknown_claim(capsys):
    code, _ = run("verify", "thm-Z", "S3")
    assert code == EXIT_USAGE
    assert "unknown claim" in capsys.readouterr().err


def test_census_rejects_a_corrupted_catalog(tmp_path, capsys):
    path = tmp_path / "catalog.jsonl"
    path.write_text('{"name": "bad", "degree": 3, "generators": [[0, 0, 1]]}\n', encoding="utf-8")
    code, text = run("census", "--no-builtin", "--corpus", str(path), "--jobs", "1")
    assert code == EXIT_USAGE
    assert text == ""
    assert "corpus line 1" in capsys.readouterr().err


def test_census_of_a_catalog_as_csv(tmp_path):
    path = write_catalog(tmp_path / "abelian.jsonl", ["C1", "C4", "E8", "C12"])
    code, text = run("--format", "csv", "census", "--no-builtin", "--corpus", str(path), "--jobs", "1")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert len(lines) == 5
    assert [line.split(",")[0] for line in lines[1:]] == ["C1", "C12", "C4", "E8"]


def test_census_of_small_builtin_groups():
    code, text = run("census", "--max-order", "12", "--jobs", "1")
    assert code == EXIT_OK
    lines = records(text)
    names = [line["name"] for line in lines if "order" in line]
    assert names == sorted(names)
    assert {"S3", "D10", "Q8", "A4"} <= set(names)
    corpus_level = [line for line in lines if line.get("group_name") == "corpus"]
    assert [line["claim_id"] for line in corpus_level] == ["no-c2-c3", "c4-soluble"]


def test_census_is_identical_across_worker_counts():
    _, serial = run("census", "--max-order", "8", "--jobs", "1", "--skip-n-measure")
    _, parallel = run("census", "--max-order", "8", "--jobs", "2", "--skip-n-measure")
    assert serial == parallel
    assert all(line.get("n_measure") is None for line in records(serial) if "order" in line)


def test_scan_conjecture_on_small_groups():
    code, text = run("scan-conjecture", "--max-order", "12")
    assert code == EXIT_OK
    candidates = records(text)
    assert {candidate["name"] for candidate in candidates} == {"S3", "D6", "D10"}
    assert all(candidate["verdict"] == "matches-conjecture" for candidate in candidates)


def test_scan_conjecture_of_abelian_catalog_is_empty(tmp_path):
    path = write_catalog(tmp_path / "abelian.jsonl", ["C1", "C2", "C7", "E8"])
    code, text = run("scan-conjecture", "--no-builtin", "--corpus", str(path))
    assert code == EXIT_OK
    assert text == ""


def test_output_format_from_environment(monkeypatch):
    monkeypatch.setenv("CENTRA_OUTPUT_FORMAT", "csv")
    _, text = run("analyze", "C2")
    assert text.startswith("name,order,")


def test_format_is_accepted_after_the_subcommand(tmp_path):
    path = write_catalog(tmp_path / "abelian.jsonl", ["C2", "C3"])
    code, text = run("census", "--no-builtin", "--corpus", str(path), "--format", "csv", "--jobs", "1")
    assert code == EXIT_OK
    assert text.splitlines()[0].startswith("name,order,")


@pytest.mark.parametrize("argv", [("analyze", "S3", "--format", "csv"), ("--format", "json", "analyze", "--format", "csv", "S3")])
def test_subcommand_format_wins(argv):
    code, text = run(*argv)
    assert code == EXIT_OK
    assert text.startswith("name,order,")


def test_global_format_survives_the_subcommand():
    _, text = run("--format", "csv", "verify", "thm-A", "S4")
    assert text.startswith("claim_id,")


def test_census_a_measure_limit(tmp_path):
    path = write_catalog(tmp_path / "small.jsonl", ["S3", "S4"])
    code, text = run("census", "--no-builtin", "--corpus", str(path), "--jobs", "1", "--a-measure-limit", "10")
    assert code == EXIT_OK
    reports = {line["name"]: line for line in records(text) if "order" in line}
    assert reports["S3"]["a_measure"] == 4
    assert reports["S4"]["a_measure"] is None


@pytest.mark.slow
def test_default_census_exits_cleanly():
    code, text = run("census", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert not any(status == "FAIL" for row in rows for status in row.values())
    assert {"A5", "S7", "D10", "S3xS3"} <= {row["name"] for row in rows}
