"""Self-verification suites.

Each suite returns a list of :class:`CheckResult`; ``rmtorus verify <suite>``
runs them and exits non-zero on any failure.  The same suites back the
acceptance tests.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .bej import BejSpec, conic_contains, enumerate_points, fiber_census
from .cf import (
    PeriodicCF,
    QuadCoeffs,
    evaluate,
    expand,
    fixes,
    matrix_word,
    pell_check,
    quad_coeffs,
)
from .exact import QuadraticSurd, is_square, surd_make
from .surface import (
    EXAMPLE_SECTION,
    EXAMPLE_SURFACE,
    CMSpec,
    cm_row,
    cm_theta,
    minimal_model_theta,
    picard,
    section_verify,
    squarefree_upto,
    tate_shioda_check,
)

# Class-number-one discriminants: D -> (expansion of sqrt(D), Picard number).
CM_GOLDEN = {
    2: ("[1;2]", 2),
    3: ("[1;1,2]", 3),
    7: ("[2;1,1,1,4]", 5),
    11: ("[3;3,6]", 3),
    19: ("[4;2,1,3,1,2,8]", 7),
    43: ("[6;1,1,3,1,5,1,3,1,1,12]", 11),
    67: ("[8;5,2,1,1,7,1,1,2,5,16]", 11),
    163: ("[12;1,3,3,2,1,1,7,1,11,1,7,1,1,2,3,3,1,24]", 19),
}

SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{flag}] {self.name}: {self.seconds:.3f}s{extra}"


def _timed(name: str, fn: Callable[[], tuple[bool, str]], budget: float | None = None) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        ok, detail = False, f"took {elapsed:.2f}s, budget {budget}s; {detail}"
    return CheckResult(name, ok, detail, elapsed)


# ---- random corpora ---------------------------------------------------


def random_surds(n: int = 1000, seed: int = SEED) -> list[QuadraticSurd]:
    """Canonical surds from ``(a + b*sqrt(delta))/c`` with ``|a| <= 1000``,
    ``1 <= c <= 1000``, ``b = +-1`` and non-square ``2 <= delta <= 10**6``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        delta = rng.randint(2, 10 ** 6)
        if is_square(delta):
            continue
        a = rng.randint(-1000, 1000)
        c = rng.randint(1, 1000)
        b = rng.choice((-1, 1))
        out.append(surd_make(a, b, c, delta))
    return out


def random_cfs(n: int = 1000, seed: int = SEED) -> list[PeriodicCF]:
    """Canonical fractions with ``N <= 5``, ``k <= 6`` and entries of size ``<= 20``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        N = rng.randint(0, 5)
        k = rng.randint(1, 6)
        entries = [rng.randint(1, 20) for _ in range(N + k)]
        if N:
            entries[0] = rng.randint(-20, 20)
        cf = PeriodicCF(tuple(entries[:N]), tuple(entries[N:])).canonical()
        if cf.is_canonical():
            out.append(cf)
    return out


# ---- individual checks ------------------------------------------------


def check_golden() -> tuple[bool, str]:
    bad = []
    for D, (cf_text, rho) in CM_GOLDEN.items():
        row = cm_row(CMSpec(D, 1))
        if str(row.cf) != cf_text or row.picard != rho or 1 + expand(cm_theta(CMSpec(D))).k != rho:
            bad.append(f"D={D}: got {row.cf} rho={row.picard}")
    return not bad, "; ".join(bad) or f"{len(CM_GOLDEN)} rows exact"


def check_surd_roundtrip(surds) -> tuple[bool, str]:
    bad = [x for x in surds if evaluate(expand(x)) != x]
    return not bad, f"{len(surds) - len(bad)}/{len(surds)} exact" + (f"; first failure {bad[0]}" if bad else "")


def check_cf_roundtrip(cfs) -> tuple[bool, str]:
    bad = [c for c in cfs if expand(evaluate(c)) != c]
    return not bad, f"{len(cfs) - len(bad)}/{len(cfs)} exact" + (f"; first failure {bad[0]}" if bad else "")


def matrix_law_failures(cf: PeriodicCF, theta: QuadraticSurd | None = None) -> list[str]:
    theta = evaluate(cf) if theta is None else theta
    e = matrix_word(cf)
    qc = quad_coeffs(e)
    failures = []
    if e.det != (-1) ** cf.k:
        failures.append("determinant")
    if not pell_check(qc, e, cf.k):
        failures.append("pell")
    if not fixes(e, theta):
        failures.append("fixed point")
    if qc.value_at(theta) != 0:
        failures.append("root")
    return failures


def check_matrix_laws(cfs, surds) -> tuple[bool, str]:
    bad = []
    for cf in cfs:
        if matrix_law_failures(cf):
            bad.append(str(cf))
    for x in surds:
        if matrix_law_failures(expand(x), x):
            bad.append(str(x))
    total = len(cfs) + len(surds)
    return not bad, f"{total - len(bad)}/{total} fractions obey all four laws" + (
        f"; first failure {bad[0]}" if bad else ""
    )


def check_bej_scan(bound: int = 12) -> tuple[bool, str]:
    spec = BejSpec(QuadCoeffs(1, 0, -2), 1, 1)
    points = enumerate_points(spec, bound)
    hit = [p for p in points if p.entries == (1, 2)]
    on_conic = all(conic_contains(spec.conic, *p.projection) for p in points)
    census = fiber_census(points)
    ok = bool(hit) and hit[0].projection == (1, 1) and on_conic
    return ok, f"{len(points)} members over {len(census)} conic points"


def check_example_surface() -> tuple[bool, str]:
    report = section_verify(EXAMPLE_SECTION, EXAMPLE_SURFACE, range(3, 13))
    bad = []
    for c in report:
        t = int(c.t)
        pure = evaluate(PeriodicCF((), (1, t - 2)))
        if c.status != "ok" or not c.equivalent or c.literal or c.surface_theta != pure:
            bad.append(f"t={t}: {c.status} literal={c.literal} equivalent={c.equivalent}")
    ok = len(report) == 10 and not bad
    return ok, "; ".join(bad) or "t=3..12 equivalent, not literal; surface value = [;1,t-2]"


def check_minimal_model(pmax: int = 50) -> tuple[bool, str]:
    bad = []
    for p in range(1, pmax + 1):
        theta = minimal_model_theta(p)
        if theta * theta != 1 + p * p or picard(PeriodicCF((p,), (2 * p,))) != 2:
            bad.append(p)
    return not bad, f"p=1..{pmax}" + (f"; failures {bad}" if bad else "")


def check_palindromes(dmax: int = 200) -> tuple[bool, str]:
    bad = []
    ds = squarefree_upto(dmax)
    for D in ds:
        root = expand(surd_make(0, 1, 1, D))
        head, last = root.period[:-1], root.period[-1]
        if root.N != 1 or head != head[::-1] or last != 2 * root.preperiod[0]:
            bad.append(f"sqrt({D})")
        if D % 4 == 1 and not cm_row(CMSpec(D)).palindrome_ok:
            bad.append(f"(1+sqrt({D}))/2")
    return not bad, f"{len(ds)} square-free D" + (f"; failures {bad}" if bad else "")


def check_picard() -> tuple[bool, str]:
    rho = picard(EXAMPLE_SECTION)
    ok = rho == 3 and tate_shioda_check(3, 1, [])
    return ok, f"rho={rho}"


# ---- suites -----------------------------------------------------------


def _roundtrip_suite() -> list[CheckResult]:
    surds, cfs = random_surds(), random_cfs()

    def both():
        ok1, d1 = check_surd_roundtrip(surds)
        ok2, d2 = check_cf_roundtrip(cfs)
        return ok1 and ok2, f"surds {d1}; fractions {d2}"

    return [_timed("roundtrip", both, budget=30.0)]


def _matrix_suite() -> list[CheckResult]:
    surds, cfs = random_surds(), random_cfs()
    return [_timed("matrix-laws", lambda: check_matrix_laws(cfs, surds))]


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "golden": lambda: [_timed("golden", check_golden, budget=1.0)],
    "roundtrip": _roundtrip_suite,
    "matrix-laws": _matrix_suite,
    "bej": lambda: [_timed("bej-scan", check_bej_scan, budget=5.0)],
    "surface": lambda: [_timed("example-surface", check_example_surface, budget=1.0)],
    "minimal-model": lambda: [_timed("minimal-model", check_minimal_model)],
    "palindrome": lambda: [_timed("palindrome", check_palindromes, budget=5.0)],
    "picard": lambda: [_timed("picard", check_picard)],
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [r for suite in SUITES.values() for r in suite()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    return SUITES[name]()
