"""From elliptic surfaces to quadratic irrationals.

A fiber of a Legendre surface ``y^2 = x(x-1)(x - alpha(t))`` at rational ``t``
is sent to the fixed point of the matrix ``((b-1, 1), (b-2, 1))`` with
``(b-2)/(b+2) = alpha(t)``.  A polynomial continued-fraction section is
checked against that value fiber by fiber.  Picard numbers, minimal models
and the complex-multiplication table are computed from continued-fraction
shape data alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .cf import (
    IntMatrix,
    PeriodicCF,
    QuadCoeffs,
    equivalent,
    evaluate,
    expand,
    quad_coeffs,
)
from .errors import (
    DomainError,
    IdentityViolation,
    InvalidD,
    NonCanonicalEntry,
    NonIntegerEntry,
    PoleInAlpha,
    SingularFiber,
)
from .exact import IntPolynomial, QuadraticSurd, is_squarefree, surd_make


@dataclass(frozen=True)
class LegendreSurface:
    """``y^2 = x(x-1)(x - alpha(t))`` with ``alpha = alpha_num / alpha_den``."""

    alpha_num: IntPolynomial
    alpha_den: IntPolynomial

    def __post_init__(self):
        if self.alpha_den.is_zero():
            raise ValueError("alpha denominator is the zero polynomial")
        if self.alpha_num.is_zero() or self.alpha_num == self.alpha_den:
            raise ValueError("alpha must not be identically 0 or 1")

    def alpha(self, t) -> Fraction:
        den = self.alpha_den(t)
        if den == 0:
            raise PoleInAlpha(f"alpha has a pole at t = {t}")
        return self.alpha_num(t) / den


# The surface y^2 = x(x-1)(x - (t-2)/(t+2)).
EXAMPLE_SURFACE = LegendreSurface(IntPolynomial((-2, 1)), IntPolynomial((2, 1)))


def legendre_b(surface: LegendreSurface, t) -> Fraction:
    """``b = 2(1 + alpha)/(1 - alpha)``."""
    alpha = surface.alpha(t)
    if alpha in (0, 1):
        raise SingularFiber(f"alpha(t) = {alpha} at t = {t}: degenerate Legendre fiber")
    return 2 * (1 + alpha) / (1 - alpha)


@dataclass(frozen=True)
class SurfaceMatrix:
    """Rational matrix ``(((3a+1)/(1-a), 1), (4a/(1-a), 1))`` at one fiber."""

    alpha: Fraction
    e11: Fraction
    e12: Fraction
    e21: Fraction
    e22: Fraction

    @property
    def singular(self) -> bool:
        # alpha = 0 gives the parabolic matrix ((1,1),(0,1))
        return self.alpha == 0

    def rows(self):
        return ((self.e11, self.e12), (self.e21, self.e22))

    def cleared(self) -> IntMatrix:
        """Integer matrix after multiplying by the common denominator."""
        entries = (self.e11, self.e12, self.e21, self.e22)
        m = lcm(*(e.denominator for e in entries))
        return IntMatrix(*(int(e * m) for e in entries))


def surface_matrix(surface: LegendreSurface, t) -> SurfaceMatrix:
    alpha = surface.alpha(t)
    if alpha == 1:
        raise SingularFiber(f"alpha(t) = 1 at t = {t}")
    one = Fraction(1)
    return SurfaceMatrix(alpha, (3 * alpha + 1) / (1 - alpha), one, 4 * alpha / (1 - alpha), one)


def fixed_point(qc: QuadCoeffs) -> QuadraticSurd:
    """The reduced root when there is one, otherwise the larger root."""
    root = qc.reduced_root()
    return root if root is not None else qc.roots()[1]


def surface_theta(surface: LegendreSurface, t) -> QuadraticSurd:
    m = surface_matrix(surface, t)
    if m.singular:
        raise SingularFiber(f"alpha(t) = 0 at t = {t}: parabolic fiber matrix")
    return fixed_point(quad_coeffs(m.cleared()))


# ---- polynomial sections ----------------------------------------------


@dataclass(frozen=True)
class CFSection:
    """Continued fraction whose entries are integer polynomials in ``t``."""

    preperiod_polys: tuple[IntPolynomial, ...]
    period_polys: tuple[IntPolynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod_polys", tuple(self.preperiod_polys))
        object.__setattr__(self, "period_polys", tuple(self.period_polys))
        if not self.period_polys:
            raise ValueError("a section needs at least one period polynomial")

    @property
    def N(self) -> int:
        return len(self.preperiod_polys)

    @property
    def k(self) -> int:
        return len(self.period_polys)


# [t-1; 1, t-2]
EXAMPLE_SECTION = CFSection(
    (IntPolynomial((-1, 1)),),
    (IntPolynomial((1,)), IntPolynomial((-2, 1))),
)


def section_eval(section: CFSection, t) -> PeriodicCF:
    """Entries at ``t``; the result is value-valid but not necessarily minimal."""
    values = []
    for poly in section.preperiod_polys + section.period_polys:
        v = poly(t)
        if v.denominator != 1:
            raise NonIntegerEntry(f"entry {poly} is {v} at t = {t}, not an integer")
        values.append(v.numerator)
    if any(v < 1 for v in values[1:]):
        raise NonCanonicalEntry(f"entries {values} at t = {t}: entries after the first must be >= 1")
    return PeriodicCF(tuple(values[: section.N]), tuple(values[section.N :]))


@dataclass(frozen=True)
class FiberCheck:
    t: Fraction
    status: str  # "ok" or the error class name
    literal: bool = False
    equivalent: bool = False
    section_theta: QuadraticSurd | None = None
    surface_theta: QuadraticSurd | None = None
    detail: str = ""


@dataclass
class SectionReport:
    checks: list[FiberCheck] = field(default_factory=list)

    @property
    def all_equivalent(self) -> bool:
        return all(c.status == "ok" and c.equivalent for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)


def check_fiber(section: CFSection, surface: LegendreSurface, t) -> FiberCheck:
    t = Fraction(t)
    try:
        left = evaluate(section_eval(section, t))
        right = surface_theta(surface, t)
    except DomainError as exc:
        return FiberCheck(t, type(exc).__name__, detail=str(exc))
    return FiberCheck(t, "ok", left == right, equivalent(left, right), left, right)


def section_verify(section: CFSection, surface: LegendreSurface, t_range: Iterable) -> SectionReport:
    return SectionReport([check_fiber(section, surface, t) for t in t_range])


# ---- Picard numbers ---------------------------------------------------


def picard(section) -> int:
    """``N + k`` for a section (or any object with ``N`` and ``k``)."""
    return section.N + section.k


def tate_shioda_check(rho: int, r: int, m_list: Sequence[int] = ()) -> bool:
    """``rho == r + 2 + sum(m_v - 1)``."""
    if any(m < 1 for m in m_list):
        raise ValueError("fiber component counts must be >= 1")
    return rho == r + 2 + sum(m - 1 for m in m_list)


def minimal_model_theta(p: int) -> QuadraticSurd:
    """Value of ``[p; 2p]``, which must equal ``sqrt(1 + p^2)``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    theta = evaluate(PeriodicCF((p,), (2 * p,)))
    if theta * theta != 1 + p * p or theta != surd_make(0, 1, 1, 1 + p * p):
        raise IdentityViolation(f"[{p}; {2 * p}] evaluated to {theta}, not sqrt({1 + p * p})")
    return theta


# ---- complex multiplication -------------------------------------------


@dataclass(frozen=True)
class CMSpec:
    D: int
    f: int = 1

    def validate(self) -> None:
        if self.D <= 1 or not is_squarefree(self.D):
            raise InvalidD(f"D = {self.D} must be a square-free integer > 1")
        if self.f < 1:
            raise InvalidD(f"conductor f = {self.f} must be >= 1")


def cm_theta(spec: CMSpec) -> QuadraticSurd:
    """``sqrt(f^2 D)`` for ``D = 2, 3 mod 4``; ``(1 + sqrt(f^2 D))/2`` for ``D = 1 mod 4``."""
    spec.validate()
    if spec.D % 4 == 1:
        return surd_make(1, spec.f, 2, spec.D)
    return surd_make(0, spec.f, 1, spec.D)


@dataclass(frozen=True)
class CMRow:
    D: int
    f: int
    theta: QuadraticSurd
    cf: PeriodicCF
    palindrome_ok: bool
    picard: int

    @property
    def k(self) -> int:
        return self.cf.k


def one_step_form(cf: PeriodicCF) -> PeriodicCF:
    """Rewrite a purely periodic fraction as ``[a1; a2, ..., ak, a1]``."""
    if cf.N:
        return cf
    return PeriodicCF(cf.period[:1], cf.period[1:] + cf.period[:1])


def palindrome_shape(cf: PeriodicCF, last_offset: int) -> bool:
    """Period is ``(s, last)`` with ``s`` a palindrome and ``last = 2*b1 - last_offset``."""
    if cf.N != 1:
        return False
    head, last = cf.period[:-1], cf.period[-1]
    return head == head[::-1] and last == 2 * cf.preperiod[0] - last_offset


def cm_row(spec: CMSpec) -> CMRow:
    theta = cm_theta(spec)
    # CM sections have exactly one preperiod entry
    cf = one_step_form(expand(theta))
    offset = 1 if spec.D % 4 == 1 else 0
    return CMRow(spec.D, spec.f, theta, cf, palindrome_shape(cf, offset), 1 + cf.k)


def squarefree_upto(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if is_squarefree(d)]

