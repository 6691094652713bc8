import json

import pytest

from hyperalg.algebra import AlgebraCtx
from hyperalg.report import as_dict, strip_timings, to_json, to_text
from hyperalg.verify import SUITES, cross_identification, fault_sensitivity, main_generators, run_suites, verify_main_theorem


@pytest.mark.parametrize("pr", [(2, 1), (3, 1), (2, 2)])
def test_all_suites_pass(pr):
    reports = run_suites(AlgebraCtx(*pr))
    assert [r.name for r in reports] == list(SUITES)
    assert {r.name: r.status for r in reports} == {name: "pass" for name in SUITES}


def test_budget_skips_large_algebra():
    reports = run_suites(AlgebraCtx(5, 2), ["idempotents", "radical", "main"])
    assert {r.status for r in reports} == {"skipped"}
    assert "budget" in reports[0].details["reason"]


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suites(AlgebraCtx(2, 1), ["nonsense"])


def test_reports_are_reproducible():
    ctx = AlgebraCtx(3, 1)
    a = strip_timings(as_dict(ctx, run_suites(ctx, seed=5), 5))
    b = strip_timings(as_dict(ctx, run_suites(ctx, seed=5), 5))
    assert a == b
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_json_schema():
    ctx = AlgebraCtx(2, 1)
    doc = json.loads(to_json(ctx, run_suites(ctx, ["algebra"]), 0))
    assert set(doc) == {"p", "r", "version", "seed", "checks"}
    check = doc["checks"][0]
    assert set(check) == {"name", "status", "details", "elapsed_ms"}
    assert check["details"]["params"] == {"p": 2, "r": 1, "seed": 0}


def test_text_report_delimiters():
    ctx = AlgebraCtx(2, 1)
    text = to_text(ctx, run_suites(ctx, ["algebra", "socle"]), 0)
    assert text.count("\n=== ") + text.startswith("=== ") >= 3
    assert "=== algebra: PASS" in text
    assert text.rstrip().splitlines()[-1] == "=== summary: 2 passed, 0 failed, 0 skipped"


def test_explicit_nu():
    ctx = AlgebraCtx(5, 1)
    rep = verify_main_theorem(ctx, nu=[2])
    assert rep.passed and rep.params["nu"] == [[2]]
    assert len(main_generators(ctx, (2,))) == 2


def test_cross_identification_surjective():
    for pr in [(2, 1), (3, 1), (2, 2)]:
        ctx = AlgebraCtx(*pr)
        assert set(cross_identification(ctx).values()) == set(range(ctx.P))


@pytest.mark.parametrize("pr", [(2, 1), (3, 1), (2, 2)])
def test_fault_breaks_several_suites(pr):
    reports = fault_sensitivity(AlgebraCtx(*pr))
    failing = [r for r in reports if r.status == "fail"]
    assert len(failing) >= 3
    assert all(r.failures() for r in failing)
    # the fault is scoped to the call
    assert all(r.passed for r in run_suites(AlgebraCtx(*pr), ["radical", "idempotents"]))
