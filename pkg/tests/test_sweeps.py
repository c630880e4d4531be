import json

import pytest

from mixedrec.config import InvalidParams
from mixedrec.sweeps import RunReport, run_suite, summarize


def test_identity_sweep_small():
    entries = run_suite("identities", seed=3, count=2, n_max=6)
    assert len(entries) == 18
    assert summarize(entries) == {"passed": 18, "failed": 0, "skipped": 0}
    assert [e["key"] for e in entries] == sorted(e["key"] for e in entries)


def test_sweep_is_deterministic():
    a = run_suite("propositions", seed=11, count=2, n_max=6, items=["mp-i", "conthahn1-ii"])
    b = run_suite("propositions", seed=11, count=2, n_max=6, items=["mp-i", "conthahn1-ii"])
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_sweep_independent_of_jobs():
    serial = run_suite("christoffel", seed=5, count=3, n_max=5)
    parallel = run_suite("christoffel", seed=5, count=3, n_max=5, jobs=2)
    assert json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True)


def test_item_draws_do_not_depend_on_selection():
    alone = run_suite("identities", seed=2, count=2, n_max=5, items=["PJ_4"])
    full = [e for e in run_suite("identities", seed=2, count=2, n_max=5) if e["key"].startswith("PJ_4/")]
    assert alone == full


def test_exploratory_only_observes():
    entries = run_suite("exploratory-mp-open-question", seed=1, count=4, n_max=6)
    assert all(e["status"] == "skipped" for e in entries)
    assert all("observation" in e for e in entries)


@pytest.mark.parametrize("kw", [{"count": 0}, {"n_max": 0}, {"items": ["nope"]}])
def test_malformed_grid(kw):
    args = {"suite": "identities", "count": 1, "n_max": 3, **kw}
    with pytest.raises(InvalidParams):
        run_suite(**args)


def test_unknown_suite():
    with pytest.raises(InvalidParams):
        run_suite("everything")


def test_report_summary_counts_entries():
    entries = [{"key": "a", "status": "passed"}, {"key": "b", "status": "skipped"}]
    report = RunReport("cmd", {}, entries, 1.5)
    d = report.to_dict(timestamps=False)
    assert sum(d["summary"].values()) == len(entries) and "wall_ms" not in d
    assert set(report.to_dict()) == {"command", "config", "entries", "summary", "wall_ms"}
