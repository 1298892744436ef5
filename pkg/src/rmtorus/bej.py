"""Integer points of the Brock-Elkies-Jordan variety over a fixed quadratic.

A tuple ``(y1..yN, x1..xk)`` is a point when the matrix word of
``[y1,...,yN; x1,...,xk]`` fixes the roots of the target quadratic
``A x^2 + B x + C``, i.e. ``(E21, E22 - E11, -E12)`` is a nonzero multiple of
``(A, B, C)``.  Points project to ``(E21, E22)`` on the Fermat-Pell conic
``C u^2 - B u v + A v^2 = (-1)^k A``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .cf import PeriodicCF, QuadCoeffs, UnimodularMatrix, matrix_word
from .errors import LengthMismatch, NonMemberPresent


@dataclass(frozen=True)
class PellConic:
    A: int
    B: int
    C: int
    k_parity: int

    @classmethod
    def of(cls, coeffs: QuadCoeffs, k: int) -> "PellConic":
        return cls(coeffs.A, coeffs.B, coeffs.C, k % 2)

    def contains(self, u: int, v: int) -> bool:
        return conic_contains(self, u, v)


@dataclass(frozen=True)
class BejSpec:
    coeffs: QuadCoeffs
    N: int
    k: int

    def __post_init__(self):
        if self.N < 0 or self.k < 1:
            raise ValueError(f"need N >= 0 and k >= 1, got N={self.N}, k={self.k}")

    @property
    def conic(self) -> PellConic:
        return PellConic.of(self.coeffs, self.k)

    def split(self, entries: Sequence[int]) -> PeriodicCF:
        if len(entries) != self.N + self.k:
            raise LengthMismatch(f"expected {self.N + self.k} entries, got {len(entries)}")
        return PeriodicCF(tuple(entries[: self.N]), tuple(entries[self.N :]))


@dataclass(frozen=True)
class BejPoint:
    entries: tuple[int, ...]
    member: bool
    projection: tuple[int, int]


def conic_contains(conic: PellConic, u: int, v: int) -> bool:
    sign = -1 if conic.k_parity else 1
    return conic.C * u * u - conic.B * u * v + conic.A * v * v == sign * conic.A


def _word_is_member(coeffs: QuadCoeffs, e: UnimodularMatrix) -> bool:
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    if e.e21 == 0:
        # parabolic or diagonal word: fixes no quadratic irrational
        return False
    tr = e.e22 - e.e11
    return A * tr == B * e.e21 and -A * e.e12 == C * e.e21 and -B * e.e12 == C * tr


def membership(spec: BejSpec, entries: Sequence[int]) -> bool:
    return _word_is_member(spec.coeffs, matrix_word(spec.split(entries)))


def project(spec: BejSpec, entries: Sequence[int]) -> tuple[int, int]:
    e = matrix_word(spec.split(entries))
    return (e.e21, e.e22)


def point(spec: BejSpec, entries: Sequence[int]) -> BejPoint:
    e = matrix_word(spec.split(entries))
    return BejPoint(tuple(entries), _word_is_member(spec.coeffs, e), (e.e21, e.e22))


def _scan_slice(spec: BejSpec, bound: int, first: int) -> list[BejPoint]:
    rng = range(-bound, bound + 1)
    out = []
    for rest in itertools.product(rng, repeat=spec.N + spec.k - 1):
        p = point(spec, (first,) + rest)
        if p.member:
            out.append(p)
    return out


def enumerate_points(spec: BejSpec, bound: int, workers: int | None = None) -> list[BejPoint]:
    """Member points with every entry in ``[-bound, bound]``, lexicographic order.

    With ``workers > 1`` the scan is split on the first entry across processes;
    the merged result is identical to the sequential one.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    firsts = list(range(-bound, bound + 1))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(_scan_slice, [spec] * len(firsts), [bound] * len(firsts), firsts))
    else:
        slices = [_scan_slice(spec, bound, f) for f in firsts]
    return [p for chunk in slices for p in chunk]


def fiber_census(points: Sequence[BejPoint]) -> dict[tuple[int, int], int]:
    """Number of member points over each conic point, keys sorted."""
    bad = [p.entries for p in points if not p.member]
    if bad:
        raise NonMemberPresent(f"{len(bad)} non-member point(s), first {bad[0]}")
    counts = Counter(p.projection for p in points)
    return dict(sorted(counts.items()))
