from __future__ import annotations

from xfam import bounds, suite
from xfam.suite import Context, check_search_vs_formula, format_table, run_suite


def test_mutated_h_nkl_is_caught(monkeypatch):
    original = bounds.h_nkl
    monkeypatch.setattr(bounds, "h_nkl", lambda n, k, l: original(n, k, l) + 1)
    out = check_search_vs_formula(Context())
    assert out.status == "FAIL" and "h_nkl" in out.detail


def test_full_without_budget_skips_stretch():
    out = run_suite("full", Context(), only={"C1", "C11", "S1", "S2", "S3"})
    status = {o.id: o.status for o in out}
    assert status == {"C1": "PASS", "C11": "PASS", "S1": "SKIPPED", "S2": "SKIPPED", "S3": "SKIPPED"}


def test_every_check_appears_once():
    ids = [suite._id_of(fn) for fn in suite.SMALL + suite.STRETCH]
    assert ids == [f"C{i}" for i in range(1, 12)] + ["S1", "S2", "S3"]


def test_crashing_check_is_a_failure():
    def broken(ctx):
        raise RuntimeError("boom")

    out = suite.run_check(broken, Context())
    assert out.status == "FAIL" and "boom" in out.detail


def test_stretch_with_budget():
    out = suite.run_check(suite.check_stretch_initial_733, Context(time_budget=60))
    assert out.status == "PASS"


def test_table_format():
    text = format_table(run_suite("small", Context(), only={"C1"}))
    assert "C1" in text and "PASS" in text
