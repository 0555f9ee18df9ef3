from __future__ import annotations

import logging

import pytest

from centra.config import get_settings
from centra.service import RunConfig


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("CENTRA_ORDER_CAP", "CENTRA_CLIQUE_BUDGET", "CENTRA_OUTPUT_FORMAT", "CENTRA_LOG_LEVEL", "CENTRA_JOBS", "CENTRA_A_MEASURE_LIMIT", "CENTRA_N_MEASURE_LIMIT"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_defaults():
    settings = get_settings()
    assert settings.order_cap == 20000
    assert settings.cayley_cache_limit == 2048
    assert settings.clique_budget == 10_000_000
    assert settings.max_order == 5040
    assert settings.family_limit == 120
    assert settings.a_measure_limit == 360
    assert settings.n_measure_limit == 360
    assert settings.output_format == "json"
    assert settings.log_level == "WARNING"
    assert settings.jobs >= 1


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CENTRA_ORDER_CAP", "500")
    monkeypatch.setenv("CENTRA_CLIQUE_BUDGET", "1_000")
    monkeypatch.setenv("CENTRA_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.order_cap == 500
    assert settings.clique_budget == 1000
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize("raw", ["zero", "-5", "0", "1.5"])
def test_malformed_integers_fall_back_with_a_warning(monkeypatch, caplog, raw):
    monkeypatch.setenv("CENTRA_ORDER_CAP", raw)
    with caplog.at_level(logging.WARNING, logger="centra.config"):
        assert get_settings().order_cap == 20000
    assert "CENTRA_ORDER_CAP" in caplog.text


@pytest.mark.parametrize(("raw", "expected"), [("CSV", "csv"), ("jsonl", "json"), ("json-lines", "json"), ("yaml", "json")])
def test_output_format_aliases(monkeypatch, raw, expected):
    monkeypatch.setenv("CENTRA_OUTPUT_FORMAT", raw)
    assert get_settings().output_format == expected


def test_settings_are_cached():
    assert get_settings() is get_settings()


def test_run_config_applies_overrides():
    config = RunConfig.from_settings(get_settings(), order_cap=99, jobs=None, output_format="csv")
    assert config.order_cap == 99
    assert config.jobs == get_settings().jobs
    assert config.output_format == "csv"


@pytest.mark.parametrize(("field", "value"), [("order_cap", 0), ("clique_budget", -1), ("a_measure_limit", 0), ("output_format", "xml")])
def test_run_config_validates(field, value):
    with pytest.raises(ValueError):
        RunConfig.from_settings(get_settings(), **{field: value})
