"""Exception classes.

Every domain failure derives from :class:`DomainError`; malformed text input
raises :class:`ParseError`.  The CLI maps the two families to distinct exit
codes.
"""


class RMTorusError(Exception):
    pass


class ParseError(RMTorusError, ValueError):
    pass


class DomainError(RMTorusError, ValueError):
    pass


# exact core
class ZeroDenominator(DomainError):
    pass


class SquareDiscriminant(DomainError):
    pass


class NegativeDiscriminant(DomainError):
    pass


class RationalValue(DomainError):
    pass


class PoleHit(DomainError):
    pass


# continued fractions
class DegenerateWord(DomainError):
    pass


class DegenerateFixedPoint(DomainError):
    pass


class NotUnimodular(DomainError):
    pass


# BEJ variety
class LengthMismatch(DomainError):
    pass


class NonMemberPresent(DomainError):
    pass


# surfaces
class PoleInAlpha(DomainError):
    pass


class SingularFiber(DomainError):
    pass


class NonIntegerEntry(DomainError):
    pass


class NonCanonicalEntry(DomainError):
    pass


class IdentityViolation(DomainError):
    """An identity that must hold by construction failed: a bug, not bad input."""


class InvalidD(DomainError):
    pass
