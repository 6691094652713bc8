"""Acceptance criteria, one test each. Arithmetic is exact, so every comparison
is an equality; the runtime limits are checked alongside."""

import time

import pytest

from hyperalg.algebra import AlgebraCtx, gen_mu, gen_x, gen_y
from hyperalg.linalg import add, intersect, left_socle, span
from hyperalg.simples import claimed_radical_basis, oracle_radical, semisimple_dim, v_set
from hyperalg.verify import (
    fault_sensitivity,
    main_generators,
    nu_combinations,
    socle_count,
    verify_algebra,
    verify_idempotents,
    verify_lemma_suite,
    verify_main_theorem,
    verify_prop_suite,
)

SIX = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]
# reference radical dimensions the radical check is held to
REFERENCE_RADICAL = {(2, 1): 3, (3, 1): 13, (5, 1): 70, (2, 2): 34, (3, 2): 444, (2, 3): 308}


def _failed(reports):
    return {f"{r.params['p']},{r.params['r']}:{r.name}": sorted(r.failures()) for r in reports if r.status == "fail"}


def test_algebra_sanity(criterion):
    t0 = time.perf_counter()
    reports = [verify_algebra(AlgebraCtx(*pr)) for pr in SIX]
    elapsed = time.perf_counter() - t0
    exhaustive = reports[0].details["invariants"]["associativity"].get("mode") == "exhaustive"
    ok = all(r.passed for r in reports) and exhaustive and elapsed < 60
    criterion("1 algebra sanity", ok, f"{len(SIX)} algebras, exhaustive (2,1)={exhaustive}, {elapsed:.1f}s < 60s "
              f"{_failed(reports) or ''}")


def test_idempotents(criterion):
    t0 = time.perf_counter()
    cases = [(p, r) for p in (2, 3, 5) for r in (1, 2)]
    reports = [verify_idempotents(AlgebraCtx(*pr)) for pr in cases]
    elapsed = time.perf_counter() - t0
    skipped = [f"({r.params['p']},{r.params['r']})" for r in reports if r.status == "skipped"]
    ok = all(r.status != "fail" for r in reports) and skipped == ["(5,2)"] and elapsed < 120
    criterion("2 idempotent suite", ok, f"skipped {skipped} (size budget), {elapsed:.1f}s < 120s {_failed(reports) or ''}")


def test_radical_dimensions(criterion):
    t0 = time.perf_counter()
    got = {}
    for pr in SIX:
        ctx = AlgebraCtx(*pr)
        got[pr] = (oracle_radical(ctx).dim, len(claimed_radical_basis(ctx)), ctx.dim - semisimple_dim(ctx))
    elapsed = time.perf_counter() - t0
    agree = all(a == b == c for a, b, c in got.values())
    matches = {pr: got[pr][0] == REFERENCE_RADICAL[pr] for pr in SIX}
    detail = ", ".join(f"{pr}: oracle/claimed/counted={got[pr]} reference={REFERENCE_RADICAL[pr]}" for pr in SIX)
    criterion("3 radical dimensions", agree and all(matches.values()) and elapsed < 300,
              f"{detail}; {elapsed:.1f}s < 300s")


def test_radical_basis_and_complement(criterion):
    results = {}
    for pr in SIX:
        ctx = AlgebraCtx(*pr)
        rad = oracle_radical(ctx)
        claimed = span(ctx, claimed_radical_basis(ctx))
        comp = span(ctx, v_set(ctx))
        results[pr] = claimed == rad and intersect(comp, rad).dim == 0 and add(comp, rad).dim == ctx.dim
    criterion("4 radical basis and complement", all(results.values()), f"{results}")


def test_radical_generators(criterion):
    t0 = time.perf_counter()
    cases = [(3, 1), (3, 2), (5, 1), (2, 1), (2, 2), (2, 3)]
    reports, counts = [], {}
    for pr in cases:
        ctx = AlgebraCtx(*pr)
        reports.append(verify_main_theorem(ctx))
        expected = 2 * ctx.r if ctx.p > 2 else 2 * (2 ** ctx.r - 1)
        counts[pr] = ({len(main_generators(ctx, c)) for c in nu_combinations(ctx)}, expected)
    elapsed = time.perf_counter() - t0
    combos = {pr: len(nu_combinations(AlgebraCtx(*pr))) for pr in cases}
    ok = (all(r.passed for r in reports) and all(g == {e} for g, e in counts.values()) and elapsed < 300)
    criterion("5 radical generators", ok, f"nu-combinations {combos}, generator counts {counts}, {elapsed:.1f}s < 300s "
              f"{_failed(reports) or ''}")


def test_socle(criterion):
    ctx = AlgebraCtx(2, 1)
    X, Y, mu0, mu1 = gen_x(ctx, 1), gen_y(ctx, 1), gen_mu(ctx, 0), gen_mu(ctx, 1)
    soc = left_socle(ctx, oracle_radical(ctx))
    explicit = span(ctx, [mu0 * X * Y, mu1 * Y * X, mu1 * X, mu1 * X * Y, mu1 * Y])
    ok = soc.dim == 5 and soc == explicit
    counts = {}
    for pr in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        c = AlgebraCtx(*pr)
        counts[pr] = (left_socle(c, oracle_radical(c)).dim, socle_count(c))
        ok = ok and counts[pr][0] == counts[pr][1]
    criterion("6 socle", ok, f"(2,1) socle dim {soc.dim} equals explicit span: {soc == explicit}; "
              f"(socle, counted) {counts}")


def test_property_suites(criterion):
    t0 = time.perf_counter()
    reports = []
    for pr in SIX:
        ctx = AlgebraCtx(*pr)
        reports += [verify_prop_suite(ctx), verify_lemma_suite(ctx)]
    elapsed = time.perf_counter() - t0
    n = sum(len(r.details["invariants"]) for r in reports)
    ok = all(r.passed for r in reports) and elapsed < 600
    criterion("7 property suites", ok, f"{n} invariant groups over {len(SIX)} algebras, {elapsed:.1f}s < 600s "
              f"{_failed(reports) or ''}")


@pytest.mark.parametrize("pr", [(2, 1), (3, 1)])
def test_fault_sensitivity(criterion, pr):
    reports = fault_sensitivity(AlgebraCtx(*pr))
    failing = [r.name for r in reports if r.status == "fail"]
    criterion(f"8 fault sensitivity {pr}", len(failing) >= 3, f"{len(failing)} failing suites: {failing}")
