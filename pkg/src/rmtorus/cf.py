"""Periodic continued fractions of quadratic surds.

A :class:`PeriodicCF` ``[b1,...,bN; a1,...,ak]`` is a preperiod followed by a
repeating period.  Each entry ``c`` acts as the letter matrix ``((c,1),(1,0))``;
the period word conjugated by the preperiod letters fixes the value of the
fraction, and the integer quadratic of that fixed point is read off the matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from .errors import (
    DegenerateFixedPoint,
    DegenerateWord,
    NotUnimodular,
    ParseError,
)
from .exact import (
    QuadraticSurd,
    is_square,
    mobius_apply,
    surd_is_reduced,
    surd_make,
)


# ---- matrices ---------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Integer 2x2 matrix ``((e11, e12), (e21, e22))``."""

    e11: int
    e12: int
    e21: int
    e22: int

    @property
    def det(self) -> int:
        return self.e11 * self.e22 - self.e12 * self.e21

    @property
    def trace(self) -> int:
        return self.e11 + self.e22

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.e11, self.e12), (self.e21, self.e22))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        e11 = self.e11 * other.e11 + self.e12 * other.e21
        e12 = self.e11 * other.e12 + self.e12 * other.e22
        e21 = self.e21 * other.e11 + self.e22 * other.e21
        e22 = self.e21 * other.e12 + self.e22 * other.e22
        cls = UnimodularMatrix if isinstance(self, UnimodularMatrix) and isinstance(other, UnimodularMatrix) else IntMatrix
        return cls(e11, e12, e21, e22)

    def __str__(self):
        return f"(({self.e11},{self.e12}),({self.e21},{self.e22}))"


@dataclass(frozen=True)
class UnimodularMatrix(IntMatrix):
    """Integer 2x2 matrix of determinant +1 or -1."""

    def __post_init__(self):
        if self.det not in (1, -1):
            raise NotUnimodular(f"determinant {self.det} is not +-1 for {self}")

    def inverse(self) -> "UnimodularMatrix":
        d = self.det
        return UnimodularMatrix(d * self.e22, -d * self.e12, -d * self.e21, d * self.e11)


IDENTITY = UnimodularMatrix(1, 0, 0, 1)


def letter(c: int) -> UnimodularMatrix:
    return UnimodularMatrix(c, 1, 1, 0)


def letter_inverse(c: int) -> UnimodularMatrix:
    return UnimodularMatrix(0, 1, 1, -c)


def word(entries: Sequence[int]) -> UnimodularMatrix:
    """Product of the letters of ``entries``, left to right."""
    return UnimodularMatrix(*_word_tuple(entries))


_RUN = 128


def _word_tuple(entries):
    entries = list(entries)
    if not entries:
        return (1, 0, 0, 1)
    # Short runs by the convergent recurrence, then a balanced product tree:
    # matrix entries grow exponentially with the word length.
    mats = [_run_product(entries[i : i + _RUN]) for i in range(0, len(entries), _RUN)]
    while len(mats) > 1:
        paired = [_mul(mats[i], mats[i + 1]) for i in range(0, len(mats) - 1, 2)]
        if len(mats) % 2:
            paired.append(mats[-1])
        mats = paired
    return mats[0]


def _run_product(entries):
    p, pp, q, qq = 1, 0, 0, 1
    for c in entries:
        p, pp = c * p + pp, p
        q, qq = c * q + qq, q
    return (p, pp, q, qq)


def _mul(m, n):
    return (
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )


# ---- continued fractions ----------------------------------------------


@dataclass(frozen=True)
class PeriodicCF:
    """``[preperiod; period]`` with the period repeating forever.

    Any integer entries are allowed; :meth:`is_canonical` tells whether this is
    the unique simple expansion with minimal preperiod and period.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(x) for x in self.preperiod))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))
        if not self.period:
            raise ValueError("period must have at least one entry")

    @property
    def N(self) -> int:
        return len(self.preperiod)

    @property
    def k(self) -> int:
        return len(self.period)

    def entries(self) -> Iterator[int]:
        """The infinite entry sequence c1, c2, ..."""
        yield from self.preperiod
        while True:
            yield from self.period

    def is_canonical(self) -> bool:
        seq = self.preperiod + self.period
        if any(c < 1 for c in seq[1:]):
            return False
        if self.N == 0 and self.period[0] < 1:
            return False
        if minimal_period(self.period) != self.k:
            return False
        return self.N == 0 or self.preperiod[-1] != self.period[-1]

    def canonical(self) -> "PeriodicCF":
        """Same entry sequence with minimal period and preperiod (entries untouched)."""
        period = self.period[: minimal_period(self.period)]
        pre = list(self.preperiod)
        while pre and pre[-1] == period[-1]:
            pre.pop()
            period = period[-1:] + period[:-1]
        return PeriodicCF(tuple(pre), period)

    def __str__(self):
        return format_cf(self)


def minimal_period(seq: Sequence[int]) -> int:
    k = len(seq)
    for d in range(1, k + 1):
        if k % d == 0 and all(seq[i] == seq[i % d] for i in range(k)):
            return d
    return k


def format_cf(cf: PeriodicCF) -> str:
    pre = ",".join(str(c) for c in cf.preperiod)
    per = ",".join(str(c) for c in cf.period)
    return f"[{pre};{per}]"


def format_cf_overline(cf: PeriodicCF) -> str:
    """Comma rendering with the period marked, e.g. ``[2,\\overline{1,1,1,4}]``."""
    per = ",".join(str(c) for c in cf.period)
    parts = [str(c) for c in cf.preperiod] + [f"\\overline{{{per}}}"]
    return "[" + ",".join(parts) + "]"


_CF_RE = re.compile(r"^\s*\[\s*([^;\]]*)\s*;\s*([^;\]]*)\s*\]\s*$")


def _parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def parse_cf(text: str) -> PeriodicCF:
    """Parse ``"[b1,...,bN;a1,...,ak]"`` (the preperiod may be empty)."""
    m = _CF_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse continued fraction {text!r}; expected [b1,...;a1,...]")
    try:
        pre, per = _parse_int_list(m.group(1)), _parse_int_list(m.group(2))
    except ValueError as exc:
        raise ParseError(f"non-integer entry in {text!r}") from exc
    if not per:
        raise ParseError(f"empty period in {text!r}")
    return PeriodicCF(pre, per)


# ---- quadratic of a fixed point ---------------------------------------


@dataclass(frozen=True)
class QuadCoeffs:
    """Primitive integer quadratic ``A x^2 + B x + C`` with ``A > 0`` and
    positive non-square discriminant."""

    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A <= 0:
            raise DegenerateFixedPoint(f"leading coefficient must be positive, got A={self.A}")
        if gcd(gcd(self.A, self.B), self.C) != 1:
            raise DegenerateFixedPoint(f"coefficients ({self.A},{self.B},{self.C}) are not primitive")
        disc = self.discriminant
        if disc <= 0 or is_square(disc):
            raise DegenerateFixedPoint(
                f"discriminant {disc} of ({self.A},{self.B},{self.C}) is not a positive non-square"
            )

    @classmethod
    def normalized(cls, A: int, B: int, C: int) -> "QuadCoeffs":
        """Scale ``(A, B, C)`` to the primitive triple with ``A > 0``."""
        if A == 0:
            raise DegenerateFixedPoint("A = 0: the fixed-point equation is not quadratic")
        g = gcd(gcd(A, B), C)
        if A < 0:
            g = -g
        return cls(A // g, B // g, C // g)

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def roots(self) -> tuple[QuadraticSurd, QuadraticSurd]:
        """The two real roots, smaller first."""
        d = self.discriminant
        lo = surd_make(-self.B, -1, 2 * self.A, d)
        hi = surd_make(-self.B, 1, 2 * self.A, d)
        return lo, hi

    def reduced_root(self) -> QuadraticSurd | None:
        for r in self.roots():
            if surd_is_reduced(r):
                return r
        return None

    def value_at(self, x):
        return self.A * x * x + self.B * x + self.C

    def __str__(self):
        return f"({self.A},{self.B},{self.C})"


def quad_coeffs(m: IntMatrix) -> QuadCoeffs:
    """Quadratic fixed by the Mobius map of ``m``: ``(e21, e22 - e11, -e12)``."""
    return QuadCoeffs.normalized(m.e21, m.e22 - m.e11, -m.e12)


def pell_check(qc: QuadCoeffs, m: IntMatrix, k: int) -> bool:
    lhs = qc.C * m.e21 ** 2 - qc.B * m.e21 * m.e22 + qc.A * m.e22 ** 2
    return lhs == (-1) ** k * qc.A


# ---- expansion and evaluation -----------------------------------------


def _initial_state(x: QuadraticSurd) -> tuple[int, int, int]:
    """Write ``x = (P + sqrt(D)) / Q`` with ``Q | D - P^2``; returns ``(P, Q, D)``."""
    a, b, c, d = x.fields()
    D = b * b * d
    P, Q = (a, c) if b > 0 else (-a, -c)
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def expand(theta: QuadraticSurd) -> PeriodicCF:
    """Canonical periodic expansion of ``theta``.

    Walks the complete quotients ``(P + sqrt(D)) / Q``.  A state lies on the
    cycle iff it is reduced, so the first reduced state ends the preperiod and
    the period closes at the first repetition of that state.
    """
    P, Q, D = _initial_state(theta)
    r = isqrt(D)
    pre: list[int] = []
    # reduced: 0 < P < sqrt(D) and sqrt(D) - P < Q < sqrt(D) + P
    while not (0 < P <= r and r < P + Q <= 2 * P + r):
        if Q > 0:
            c = (P + r) // Q
        else:
            c = -((P + r) // -Q) - 1
        pre.append(c)
        P = c * Q - P
        Q = (D - P * P) // Q
    P0, Q0 = P, Q
    period: list[int] = []
    while True:
        c = (P + r) // Q
        period.append(c)
        P = c * Q - P
        Q = (D - P * P) // Q
        if P == P0 and Q == Q0:
            break
    return PeriodicCF(tuple(pre), tuple(period))


def tail_value(period: Sequence[int]) -> QuadraticSurd:
    """Value of the purely periodic fraction ``[; period]``: the reduced fixed point."""
    # unvalidated: det of the full word is (-1)^k by construction
    w = IntMatrix(*_word_tuple(period))
    try:
        qc = quad_coeffs(w)
    except DegenerateFixedPoint as exc:
        raise DegenerateWord(f"period {tuple(period)} has a degenerate fixed quadratic") from exc
    root = qc.reduced_root()
    if root is None:
        raise DegenerateWord(f"period {tuple(period)} has no convergent (reduced) fixed point")
    return root


def evaluate(cf: PeriodicCF) -> QuadraticSurd:
    x = tail_value(cf.period)
    for b in reversed(cf.preperiod):
        x = b + x.reciprocal()
    return x


def unroll(cf: PeriodicCF, m: int) -> PeriodicCF:
    if m < 0:
        raise ValueError("unroll count must be non-negative")
    return PeriodicCF(cf.preperiod + cf.period * m, cf.period)


def convergents(cf: PeriodicCF, n: int) -> list[Fraction]:
    """First ``n`` convergents ``p_i / q_i``."""
    if n < 1:
        raise ValueError("need at least one convergent")
    out = []
    p_prev, q_prev, p, q = 0, 1, 1, 0
    entries = cf.entries()
    for _ in range(n):
        c = next(entries)
        p_prev, q_prev, p, q = p, q, c * p + p_prev, c * q + q_prev
        if q == 0:
            raise DegenerateWord("convergent with zero denominator (non-canonical entries)")
        out.append(Fraction(p, q))
    return out


def matrix_word(cf: PeriodicCF) -> UnimodularMatrix:
    """``B(b1)..B(bN) A(a1)..A(ak) B(bN)^-1..B(b1)^-1``."""
    pre = _word_tuple(cf.preperiod)
    # B(bN)^-1 .. B(b1)^-1 is the inverse of B(b1)..B(bN); det B(c) = -1
    sign = (-1) ** cf.N
    pre_inv = (sign * pre[3], -sign * pre[1], -sign * pre[2], sign * pre[0])
    return UnimodularMatrix(*_mul(_mul(pre, _word_tuple(cf.period)), pre_inv))


def equivalent(x: QuadraticSurd, y: QuadraticSurd) -> bool:
    """GL2(Z)-equivalence: the periods agree up to cyclic rotation."""
    if x == y:
        return True
    if x.delta != y.delta:
        return False
    return same_cycle(expand(x).period, expand(y).period)


def same_cycle(p: Sequence[int], q: Sequence[int]) -> bool:
    if len(p) != len(q):
        return False
    p, q = tuple(p), tuple(q)
    doubled = p + p
    return any(doubled[i : i + len(q)] == q for i in range(len(p)))


def is_convergent_good(theta: QuadraticSurd, approx: Fraction) -> bool:
    """Exact test of ``|theta - p/q| < 1/q^2``."""
    p, q = approx.numerator, approx.denominator
    z = theta * (q * q) - p * q
    return -1 < z < 1


def fixes(m: IntMatrix, x: QuadraticSurd) -> bool:
    return mobius_apply(m, x) == x
