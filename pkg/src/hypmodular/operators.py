"""Serre derivative, degree-1 Rankin-Cohen bracket and the hypergeometric-type
second-order operator, in its E2' form and in its iterated-Serre form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidWeight, NegativeWeight
from .forms import catalog
from .qseries import QSeries, Rational


def as_weight(k, allow_negative: bool = True) -> Fraction:
    """Parse a weight: an int, Fraction or "p/q" string with denominator 1 or 2."""
    if isinstance(k, float):
        raise InvalidWeight("weights must be exact; pass an int, Fraction or 'p/q'")
    if isinstance(k, str):
        if "." in k or "e" in k.lower():
            raise InvalidWeight(f"weight {k!r}: decimal notation is not accepted")
    try:
        k = Fraction(k)
    except (ValueError, ZeroDivisionError) as err:
        raise InvalidWeight(f"cannot parse weight {k!r}") from err
    if k.denominator not in (1, 2):
        raise InvalidWeight(f"weight {k} must be integral or half-integral")
    if k < 0 and not allow_negative:
        raise NegativeWeight(f"weight {k} is negative")
    return k


def _companion(name: str, f: QSeries) -> QSeries:
    # enough terms that multiplying by it does not lower f's trunc
    return catalog(name, max(math.ceil(f.trunc - f.lead), 0))


def serre(f: QSeries, k: Rational) -> QSeries:
    """f' - (k/12) E2 f."""
    k = Fraction(k)
    return f.theta() - _companion("E2", f) * f * (k / 12)


def rc_bracket(f: QSeries, k: Rational, g: QSeries, l: Rational) -> QSeries:
    """k f g' - l f' g."""
    return f * g.theta() * Fraction(k) - f.theta() * g * Fraction(l)


@dataclass(frozen=True)
class OperatorResidual:
    series: QSeries
    vanish_order: Fraction

    @property
    def vanishes(self) -> bool:
        return self.series.is_zero()

    def vanishes_through(self, order: Rational) -> bool:
        """True iff every coefficient up to and including q^order is known and zero."""
        return self.vanish_order > Fraction(order)


def _residual(r: QSeries) -> OperatorResidual:
    return OperatorResidual(r, r.lead)


def kz_operator(f: QSeries, k: Rational, alpha: Rational = 0) -> QSeries:
    """f'' - ((k+1)/6) E2 f' + (k(k+1)/12 E2' + alpha E4) f."""
    k = Fraction(k)
    e2 = _companion("E2", f)
    df = f.theta()
    out = df.theta() - e2 * df * ((k + 1) / 6) + e2.theta() * f * (k * (k + 1) / 12)
    if alpha:
        out = out + _companion("E4", f) * f * Fraction(alpha)
    return out


def kz_apply(f: QSeries, k: Rational) -> OperatorResidual:
    return _residual(kz_operator(f, k))


def kz_sharp_apply(f: QSeries, k: Rational) -> OperatorResidual:
    """d_{k+2} d_k f - (k(k+2)/144) E4 f."""
    k = Fraction(k)
    r = serre(serre(f, k), k + 2) - _companion("E4", f) * f * (k * (k + 2) / 144)
    return _residual(r)
