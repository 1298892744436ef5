"""Exact integer, rational, quadratic-surd and integer-polynomial arithmetic.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`.
A :class:`QuadraticSurd` holds ``(a + b*sqrt(delta)) / c`` in a canonical
form: ``c > 0``, ``gcd(a, b, c) == 1``, ``b != 0`` and ``delta`` square-free,
so two surds are equal exactly when their fields are equal.  No floating point
is used for any decision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational as _RationalABC
from typing import Union

from .errors import (
    NegativeDiscriminant,
    ParseError,
    PoleHit,
    RationalValue,
    SquareDiscriminant,
    ZeroDenominator,
)

Number = Union[int, Fraction]

_SMALL_PRIMES_LIMIT = 1000


def _primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


_SMALL_PRIMES = _primes_upto(_SMALL_PRIMES_LIMIT)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def icbrt(n: int) -> int:
    """Floor of the cube root of ``n >= 0``."""
    if n < 8:
        return 1 if n else 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x ** 3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def square_part(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * m`` with ``m`` square-free; returns ``(s, m)``."""
    if n <= 0:
        raise ValueError("square_part needs a positive integer")
    s, m = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    if n == 1:
        return s, m
    # Every prime factor of n now exceeds the trial limit.
    if is_square(n):
        return s * isqrt(n), m
    if n < _SMALL_PRIMES_LIMIT ** 3:
        # at most two prime factors, not a square, so square-free
        return s, m * n
    p = _SMALL_PRIMES_LIMIT
    limit = icbrt(n)
    while p <= limit:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
            if n == 1:
                return s, m
            if is_square(n):
                return s * isqrt(n), m
            limit = icbrt(n)
        p += 1
        if p > 10 ** 6:
            return _square_part_sympy(n, s, m)
    return s, m * n


def _square_part_sympy(n, s, m):
    from sympy import factorint

    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def is_squarefree(n: int) -> bool:
    return n > 0 and square_part(n)[0] == 1


def sign_of(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for ``d`` a positive non-square."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and b > 0:
        return 1
    if a <= 0 and b < 0:
        return -1
    diff = a * a - b * b * d
    # diff != 0 because sqrt(d) is irrational
    return (diff > 0) - (diff < 0) if a > 0 else (diff < 0) - (diff > 0)


def floor_surd_parts(a: int, b: int, c: int, d: int) -> int:
    """``floor((a + b*sqrt(d)) / c)`` for non-square ``d > 0`` and ``c != 0``."""
    if c < 0:
        a, b, c = -a, -b, -c
    if b == 0:
        return a // c
    r = isqrt(b * b * d)
    # b*sqrt(d) lies strictly between consecutive integers
    lower = a + r if b > 0 else a - r - 1
    return lower // c


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


def _from_parts(a: int, b: int, c: int, d: int):
    """Value ``(a + b*sqrt(d))/c``, as a Fraction when ``b == 0``."""
    if b == 0:
        return Fraction(a, c)
    return surd_make(a, b, c, d)


@dataclass(frozen=True, eq=False)
class QuadraticSurd:
    """The real number ``(a + b*sqrt(delta)) / c``, always canonical.

    Build instances with :func:`surd_make`; the constructor trusts its input.
    Arithmetic with ints, Fractions and surds over the same ``delta`` is
    exact and yields a Fraction whenever the irrational part cancels.
    """

    a: int
    b: int
    c: int
    delta: int

    # ---- identity ----------------------------------------------------
    def fields(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.delta)

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return self.fields() == other.fields()
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("surd",) + self.fields())

    def __repr__(self):
        return f"QuadraticSurd({format_surd(self)})"

    def __str__(self):
        return format_surd(self)

    def __float__(self):
        return (self.a + self.b * self.delta ** 0.5) / self.c

    # ---- arithmetic --------------------------------------------------
    def _coerce(self, other):
        """Return ``other`` as ``(a, b, c)`` over ``self.delta``, or None."""
        if isinstance(other, QuadraticSurd):
            if other.delta != self.delta:
                raise ValueError(
                    f"surds live in different fields: sqrt({self.delta}) vs sqrt({other.delta})"
                )
            return other.a, other.b, other.c
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return f.numerator, 0, f.denominator
        return None

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.c, self.delta)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a2, b2, c2 = o
        return _from_parts(self.a * c2 + a2 * self.c, self.b * c2 + b2 * self.c, self.c * c2, self.delta)

    __radd__ = __add__

    def __sub__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a2, b2, c2 = o
        a, b, d = self.a, self.b, self.delta
        return _from_parts(a * a2 + b * b2 * d, a * b2 + b * a2, self.c * c2, d)

    __rmul__ = __mul__

    def reciprocal(self):
        # c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        den = self.a * self.a - self.b * self.b * self.delta
        return surd_make(self.c * self.a, -self.c * self.b, den, self.delta)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.reciprocal()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a2, _, c2 = o
        if a2 == 0:
            raise ZeroDivisionError("division of a surd by zero")
        return surd_make(self.a * c2, self.b * c2, self.c * a2, self.delta)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        result: object = Fraction(1)
        base: object = self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    # ---- ordering ----------------------------------------------------
    def sign(self) -> int:
        return sign_of(self.a, self.b, self.delta)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare surd with {type(other).__name__}")
        a2, b2, c2 = o
        # sign((a/c) - (a2/c2) + (b/c - b2/c2) sqrt d), denominators positive
        return sign_of(self.a * c2 - a2 * self.c, self.b * c2 - b2 * self.c, self.delta)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __floor__(self):
        return surd_floor(self)


def surd_make(a: int, b: int, c: int, delta: int) -> QuadraticSurd:
    """Canonical surd equal to ``(a + b*sqrt(delta)) / c``."""
    if c == 0:
        raise ZeroDenominator("surd denominator is zero")
    if delta < 0:
        raise NegativeDiscriminant(f"delta must be positive, got {delta}")
    if is_square(delta):
        raise SquareDiscriminant(f"delta = {delta} is a perfect square")
    if b == 0:
        raise RationalValue("b = 0 makes the value rational")
    s, m = square_part(delta)
    b *= s
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(a, b), c)
    return QuadraticSurd(a // g, b // g, c // g, m)


def surd_floor(x: QuadraticSurd) -> int:
    return floor_surd_parts(x.a, x.b, x.c, x.delta)


def surd_conjugate(x: QuadraticSurd) -> QuadraticSurd:
    return QuadraticSurd(x.a, -x.b, x.c, x.delta)


def surd_is_reduced(x: QuadraticSurd) -> bool:
    """True iff ``x > 1`` and its conjugate lies in ``(-1, 0)``."""
    conj = surd_conjugate(x)
    return x > 1 and -1 < conj < 0


def mobius_apply(m, x: QuadraticSurd) -> QuadraticSurd:
    """``(e11*x + e12) / (e21*x + e22)`` for an integer matrix ``m``."""
    a, b, c, d = x.fields()
    n1, n2 = m.e11 * a + m.e12 * c, m.e11 * b
    d1, d2 = m.e21 * a + m.e22 * c, m.e21 * b
    norm = d1 * d1 - d2 * d2 * d
    if norm == 0:
        # sqrt(d) irrational: only d1 == d2 == 0 gets here
        raise PoleHit("Mobius denominator vanishes")
    # (n1 + n2 r)(d1 - d2 r) / norm with r = sqrt(d)
    return surd_make(n1 * d1 - n2 * d2 * d, n2 * d1 - n1 * d2, norm, d)


# ---- text I/O ---------------------------------------------------------

_SURD_RE = re.compile(
    r"""^\s*\(\s*([+-]?\d+)\s*([+-])\s*([+-]?\d+)\s*\*\s*sqrt\s*\(\s*(\d+)\s*\)\s*\)
        \s*/\s*([+-]?\d+)\s*$""",
    re.VERBOSE,
)


def format_surd(x: QuadraticSurd) -> str:
    op = "+" if x.b > 0 else "-"
    return f"({x.a}{op}{abs(x.b)}*sqrt({x.delta}))/{x.c}"


def parse_surd(text: str) -> QuadraticSurd:
    """Parse ``"(a+b*sqrt(delta))/c"``; the result is canonicalized."""
    m = _SURD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse surd {text!r}; expected (a+b*sqrt(delta))/c")
    a, op, b, delta, c = m.groups()
    b_val = int(b) if op == "+" else -int(b)
    return surd_make(int(a), b_val, int(c), int(delta))


def format_rational(q: Number) -> str:
    q = _as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse rational {text!r}") from exc


# ---- polynomials ------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first; trailing zeros are stripped."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """From a comma-separated coefficient list, e.g. ``"-2,1"`` for ``t - 2``."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as exc:
            raise ParseError(f"cannot parse polynomial coefficients {text!r}") from exc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t) -> Fraction:
        return poly_eval(self, t)

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)


def poly_eval(p: IntPolynomial, t: Number) -> Fraction:
    t = _as_fraction(t)
    acc = Fraction(0)
    for coeff in reversed(p.coeffs):
        acc = acc * t + coeff
    return acc
