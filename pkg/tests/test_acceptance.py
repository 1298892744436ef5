"""Acceptance criteria, one test each, at the stated tolerances.

Every test appends a ``[PASS]``/``[FAIL]`` line that the terminal summary
prints under "acceptance criteria" (see conftest.py).
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from rmtorus.bej import BejSpec, conic_contains, enumerate_points, fiber_census
from rmtorus.cf import PeriodicCF, QuadCoeffs, equivalent, evaluate, expand
from rmtorus.exact import surd_make
from rmtorus.surface import (
    EXAMPLE_SECTION,
    EXAMPLE_SURFACE,
    CMSpec,
    cm_row,
    minimal_model_theta,
    picard,
    section_eval,
    section_verify,
    squarefree_upto,
    surface_theta,
    tate_shioda_check,
)
from rmtorus.verify import check_palindromes, matrix_law_failures, random_cfs, random_surds

CM_TABLE_ROWS = {
    2: ((1,), (2,), 2),
    3: ((1,), (1, 2), 3),
    7: ((2,), (1, 1, 1, 4), 5),
    11: ((3,), (3, 6), 3),
    19: ((4,), (2, 1, 3, 1, 2, 8), 7),
    43: ((6,), (1, 1, 3, 1, 5, 1, 3, 1, 1, 12), 11),
    67: ((8,), (5, 2, 1, 1, 7, 1, 1, 2, 5, 16), 11),
    163: ((12,), (1, 3, 3, 2, 1, 1, 7, 1, 11, 1, 7, 1, 1, 2, 3, 3, 1, 24), 19),
}


def record(name, ok, seconds, detail):
    flag = "PASS" if ok else "FAIL"
    line = f"[{flag}] {name}: {seconds:.3f}s ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


@pytest.fixture(scope="module")
def corpus():
    """The shared random suites of criteria 2 and 3, with the roundtrip timing."""
    surds, cfs = random_surds(1000), random_cfs(1000)
    start = time.perf_counter()
    expanded = [expand(x) for x in surds]
    surd_back = [evaluate(c) for c in expanded]
    values = [evaluate(c) for c in cfs]
    cf_back = [expand(v) for v in values]
    seconds = time.perf_counter() - start
    return dict(surds=surds, cfs=cfs, expanded=expanded, surd_back=surd_back, values=values, cf_back=cf_back, seconds=seconds)


def test_criterion_1_golden_table():
    def run():
        bad = []
        for D, (pre, per, rho) in CM_TABLE_ROWS.items():
            cf = expand(surd_make(0, 1, 1, D))
            row = cm_row(CMSpec(D, 1))
            if cf != PeriodicCF(pre, per) or 1 + cf.k != rho or row.picard != rho or row.cf != cf:
                bad.append(D)
        return bad

    bad, seconds = timed(run)
    ok = not bad and seconds < 1.0
    assert record("1 golden table", ok, seconds, f"8 rows, mismatches {bad}, budget 1s"), bad


def test_criterion_2_roundtrip(corpus):
    surds, cfs = corpus["surds"], corpus["cfs"]
    assert len(surds) == len(cfs) == 1000
    assert all(c.is_canonical() and c.N <= 5 and c.k <= 6 for c in cfs)
    assert all(max(abs(e) for e in c.preperiod + c.period) <= 20 for c in cfs)
    assert all(abs(x.a) <= 1000 and 1 <= x.c <= 1000 and x.b * x.b * x.delta <= 10 ** 6 for x in surds)
    bad_surds = sum(y.fields() != x.fields() for x, y in zip(surds, corpus["surd_back"]))
    bad_cfs = sum(d != c for c, d in zip(cfs, corpus["cf_back"]))
    seconds = corpus["seconds"]
    ok = bad_surds == 0 and bad_cfs == 0 and seconds < 30.0
    detail = f"surds {1000 - bad_surds}/1000, fractions {1000 - bad_cfs}/1000, budget 30s"
    assert record("2 roundtrip", ok, seconds, detail)


def test_criterion_3_matrix_word_laws(corpus):
    def run():
        failures = {}
        for c, v in zip(corpus["cfs"], corpus["values"]):
            for law in matrix_law_failures(c, v):
                failures[law] = failures.get(law, 0) + 1
        for c, x in zip(corpus["expanded"], corpus["surds"]):
            for law in matrix_law_failures(c, x):
                failures[law] = failures.get(law, 0) + 1
        return failures

    failures, seconds = timed(run)
    ok = not failures
    detail = "det, Pell, fixed point, root on 2000 fractions" + (f"; failures {failures}" if failures else "")
    assert record("3 matrix-word laws", ok, seconds, detail)


def test_criterion_4_bej_scan():
    spec = BejSpec(QuadCoeffs(1, 0, -2), 1, 1)
    points, seconds = timed(lambda: enumerate_points(spec, 12))
    hit = [p for p in points if p.entries == (1, 2)]
    on_conic = all(conic_contains(spec.conic, *p.projection) for p in points)
    census = fiber_census(points)
    ok = seconds < 5.0 and bool(hit) and hit[0].projection == (1, 1) and on_conic
    detail = f"{len(points)} members over {len(census)} conic points, budget 5s"
    assert record("4 BEJ scan", ok, seconds, detail)


def test_criterion_5_example_surface():
    def run():
        report = section_verify(EXAMPLE_SECTION, EXAMPLE_SURFACE, range(3, 13))
        bad = []
        for check in report:
            t = int(check.t)
            theta = surface_theta(EXAMPLE_SURFACE, t)
            section_value = evaluate(section_eval(EXAMPLE_SECTION, t))
            pure = evaluate(PeriodicCF((), (1, t - 2)))
            if not (
                check.status == "ok"
                and equivalent(theta, section_value)
                and theta == pure
                and check.equivalent
                and check.literal == (theta == section_value)
                and not check.literal
            ):
                bad.append(t)
        return len(report), bad

    (count, bad), seconds = timed(run)
    ok = count == 10 and not bad and seconds < 1.0
    detail = f"t=3..12 equivalent and not literal; literal to [;1,t-2]; failures {bad}, budget 1s"
    assert record("5 example surface", ok, seconds, detail)


def test_criterion_6_minimal_model():
    def run():
        bad = []
        for p in range(1, 51):
            theta = evaluate(PeriodicCF((p,), (2 * p,)))
            if theta * theta != 1 + p * p or minimal_model_theta(p) != theta:
                bad.append(p)
            if picard(PeriodicCF((p,), (2 * p,))) != 2:
                bad.append(p)
        return bad

    bad, seconds = timed(run)
    assert record("6 minimal model", not bad, seconds, f"p=1..50; failures {bad}")


def test_criterion_7_palindromes():
    (ok, detail), seconds = timed(check_palindromes)
    count = len(squarefree_upto(200))
    ok = ok and seconds < 5.0 and count == 121
    assert record("7 palindrome law", ok, seconds, f"{detail}, budget 5s")


def test_criterion_8_picard():
    def run():
        return picard(EXAMPLE_SECTION), tate_shioda_check(3, 1, [])

    (rho, ts), seconds = timed(run)
    ok = rho == 3 and ts is True
    assert record("8 Picard consistency", ok, seconds, f"rho={rho}, Tate-Shioda {ts}")
