"""Exception hierarchy.

The CLI prints ``type(err).__name__`` verbatim, so class names are part of
the user-visible surface.
"""


class ModularError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroSeries(ModularError, ZeroDivisionError):
    pass


class NotDivisible(ModularError):
    pass


class InsufficientPrecision(ModularError):
    pass


class InvalidWeight(ModularError, ValueError):
    pass


class NegativeWeight(InvalidWeight):
    pass


class UnsupportedClass(ModularError):
    pass


class NoneKnown(UnsupportedClass):
    """No modular solution is known (and none is expected) for this weight."""


class ForbiddenWeight(ModularError):
    pass


class MuUndefined(ModularError):
    pass


class SeedInconsistent(ModularError):
    pass


class Resonant(ModularError):
    pass


class IndicialDegenerate(ModularError):
    pass


class UnsupportedBeta(ModularError):
    pass


class NotQuasimodular(ModularError):
    pass


class OddWeight(ModularError, ValueError):
    pass


class IdentityFailure(ModularError, AssertionError):
    """A closed formula disagreed with its brute-force evaluation."""
