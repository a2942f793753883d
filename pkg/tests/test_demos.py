"""Demo scenarios: every stated expectation is met, except the lcs lift (see README)."""

import pytest

from weil.demos import DEMOS, run_demo
from weil.errors import InputError


@pytest.mark.parametrize("name", [d for d in DEMOS if d != "lcs-r4"])
def test_demo_meets_expectations(name):
    r = run_demo(name)
    bad = [(o.label, o.report.failed()) for o in r.outcomes if not o.ok]
    assert r.passed, bad


def test_lcs_demo_records_the_failing_lift():
    r = run_demo("lcs-r4")
    bad = [o for o in r.outcomes if not o.ok]
    assert [o.label for o in bad] == ["lift (dual, top)"]
    assert bad[0].report.failed() == ["lee-identity"]


def test_unknown_demo():
    with pytest.raises(InputError):
        run_demo("nope")


def test_text_and_dict_forms():
    r = run_demo("lagrangian")
    assert r.format_text().startswith("== demo lagrangian: PASS")
    assert r.to_dict()["outcomes"][0]["ok"] is True


@pytest.mark.parametrize("name", DEMOS)
def test_demo_runs_within_a_minute(name):
    import time

    t0 = time.perf_counter()
    run_demo(name)
    assert time.perf_counter() - t0 < 60
