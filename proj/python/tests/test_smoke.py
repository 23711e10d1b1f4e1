import math
from pathlib import Path

import pytest

import powervp

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_version():
    assert powervp.__version__


def test_parse_duration():
    assert powervp.parse_duration("250ms") == 250_000_000
    assert powervp.parse_duration("1h") == 3_600_000_000_000
    with pytest.raises(ValueError):
        powervp.parse_duration("soon")


def test_default_config_round_trips():
    doc = powervp.default_config()
    assert doc["core"]["kind"] == "phase"
    assert powervp.validate(doc) == doc


def test_validation_lists_every_problem():
    doc = powervp.default_config()
    doc["kernel"]["trace_stride"] = "often"
    doc["bogus"] = 1
    with pytest.raises(powervp.ValidationError) as err:
        powervp.validate(doc)
    text = str(err.value)
    assert "bogus" in text and "kernel.trace_stride" in text


def test_run_from_file(tmp_path):
    trace = tmp_path / "trace.csv"
    s = powervp.run(CONFIGS / "config_A.json", duration="2s", trace=str(trace))
    assert s["end_cause"] == "HorizonReached"
    assert math.isclose(s["end_time_s"], 2.0)
    assert 0.0 < s["dsoc_pct"] < 1.0
    assert 0.0 < s["core_dcdc_eff_pct"] <= 100.0
    lines = trace.read_text().splitlines()
    assert len(lines) == 1 + 200


def test_run_from_dict_is_deterministic():
    doc = powervp.default_config()
    a = powervp.run(doc, duration=3.0)
    b = powervp.run(doc, duration=3.0)
    assert a == b


def test_dse_short():
    rows = powervp.dse(hours=0.001, jobs=2)
    assert [r["label"] for r in rows] == ["A", "B", "C", "D"]
    assert all(r["ok"] for r in rows)
    assert rows[0]["lifetime_norm"] == 1.0
    a = rows[0]["dsoc_per_h_pct"]
    for r in rows:
        assert math.isclose(r["lifetime_norm"], a / r["dsoc_per_h_pct"], rel_tol=1e-9)
