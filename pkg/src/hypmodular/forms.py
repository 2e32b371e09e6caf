"""Named modular forms of level 1, 2, 3 and 4 as exact q-series.

Eisenstein-type forms are built from divisor sums, cusp forms from their
divisor-sum expansions with the eta-quotient recipe kept as an independent
second route (see :func:`alternate`).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .qseries import QSeries, Rational, constant, from_function, zero

# -- divisor sums ----------------------------------------------------------

DIVISOR_KINDS = ("sigma", "odd_sigma", "odd_cosigma", "char3", "char3_weighted")


def legendre3(d: int) -> int:
    """The character (d/3)."""
    r = d % 3
    return 0 if r == 0 else 1 if r == 1 else -1


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _term(kind: str, d: int, n: int, r: int) -> int:
    if kind == "sigma":
        return d ** r
    if kind == "odd_sigma":
        return d ** r if d & 1 else 0
    if kind == "odd_cosigma":
        return (n // d) ** r if d & 1 else 0
    if kind == "char3":
        return legendre3(d)
    if kind == "char3_weighted":
        return legendre3(d) * (n // d) ** 2
    raise ValueError(f"unknown divisor-sum kind {kind!r}; expected one of {DIVISOR_KINDS}")


def divisor_sum(n: int, kind: str = "sigma", r: int = 1) -> int:
    """Divisor sums of the catalog.

    ``sigma``: sum of d**r; ``odd_sigma``: same over odd d; ``odd_cosigma``:
    sum of (n/d)**r over odd d; ``char3``: sum of (d/3); ``char3_weighted``:
    sum of (d/3)*(n/d)**2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return sum(_term(kind, d, n, r) for d in divisors(n))


def divisor_sum_table(size: int, kind: str = "sigma", r: int = 1) -> list[int]:
    """``table[n] == divisor_sum(n, kind, r)`` for 1 <= n < size; ``table[0] == 0``."""
    table = [0] * max(size, 1)
    for d in range(1, size):
        for m in range(d, size, d):
            table[m] += _term(kind, d, m, r)
    return table


# -- eta quotients ---------------------------------------------------------


def euler_product(n: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - q^k) below q^n (pentagonal numbers)."""
    out = [0] * max(n, 0)
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            p = j * (3 * j - 1) // 2
            if p < n:
                out[p] += -1 if j & 1 else 1
                hit = True
        if not hit:
            return out
        k += 1


@dataclass(frozen=True)
class EtaSpec:
    """Formal product of eta(m*tau)**e over ``factors`` = {m: e}."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, factors: Mapping[int, int]) -> EtaSpec:
        for m in factors:
            if m < 1:
                raise ValueError("eta multipliers must be positive integers")
        return cls(tuple(sorted((m, e) for m, e in factors.items() if e)))

    @property
    def lead(self) -> Fraction:
        return Fraction(sum(m * e for m, e in self.factors), 24)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)


def eta_expand(spec: EtaSpec | Mapping[int, int], trunc: Rational) -> QSeries:
    if not isinstance(spec, EtaSpec):
        spec = EtaSpec.of(spec)
    trunc = Fraction(trunc)
    rel = trunc - spec.lead
    if rel <= 0:
        return zero(trunc)
    n = math.ceil(rel)
    prod = constant(1, n)
    for m, e in spec.factors:
        size = -(-n // m)
        base = QSeries(euler_product(size), trunc=size).dilate(m)
        prod = prod * base ** e
    return prod.shift(spec.lead).truncate(trunc)


# -- theta series ----------------------------------------------------------


def theta_series(kind: str, trunc: Rational) -> QSeries:
    """``theta3_2tau`` = sum q^(n^2); ``halftheta2_2tau`` = sum_{n>=0} q^((n+1/2)^2)."""
    trunc = Fraction(trunc)
    if kind == "theta3_2tau":
        n = max(math.ceil(trunc), 0)
        c = [0] * n
        k = 0
        while k * k < n:
            c[k * k] += 1 if k == 0 else 2
            k += 1
        return QSeries(c, trunc=trunc)
    if kind == "halftheta2_2tau":
        lead = Fraction(1, 4)
        n = max(math.ceil(trunc - lead), 0)
        c = [0] * n
        k = 0
        while k * (k + 1) < n:
            c[k * (k + 1)] = 1
            k += 1
        return QSeries(c, lead, 1, trunc)
    raise ValueError(f"unknown theta kind {kind!r}")


# -- the catalog -----------------------------------------------------------


def _eisenstein(c: int, kind: str, r: int) -> Callable[[Fraction], QSeries]:
    def build(trunc):
        table = divisor_sum_table(max(math.ceil(trunc), 1), kind, r)
        return from_function(lambda n: c * table[n] if n else 1, trunc)
    return build


def _cusp(kind: str, r: int) -> Callable[[Fraction], QSeries]:
    def build(trunc):
        table = divisor_sum_table(max(math.ceil(trunc), 1), kind, r)
        return from_function(lambda n: table[n], trunc)
    return build


def _root_sum(lead: Fraction, den: int, kind: str, keep) -> Callable[[Fraction], QSeries]:
    # coefficient of q^(n/den) for n = den*lead, den*lead + 1, ...
    def build(trunc):
        first = int(lead * den)
        top = max(math.ceil(trunc * den), first + 1)
        table = divisor_sum_table(top, kind, 1)
        return from_function(lambda i: table[first + i] if keep(first + i) else 0,
                             trunc, lead, Fraction(1, den))
    return build


def _hauptmodul(num: str, power: int, den: str) -> Callable[[Fraction], QSeries]:
    def build(trunc):
        t = trunc + 2
        return (catalog(num, t) ** power / catalog(den, t)).truncate(trunc)
    return build


def _delta(trunc):
    e4, e6 = catalog("E4", trunc), catalog("E6", trunc)
    return ((e4 ** 3 - e6 ** 2) / 1728).truncate(trunc)


def _e2_level4(trunc):
    e2 = catalog("E2", trunc)
    return ((4 * e2_dilated(4, trunc) - e2) / 3).truncate(trunc)


@dataclass(frozen=True)
class FormInfo:
    name: str
    weight: Fraction
    group: str
    character: str
    lead: Fraction
    build: Callable[[Fraction], QSeries] = field(repr=False, compare=False)
    alt: Callable[[Fraction], QSeries] | None = field(default=None, repr=False, compare=False)


def _info(name, weight, group, lead, build, alt=None, character="trivial"):
    return FormInfo(name, Fraction(weight), group, character, Fraction(lead), build, alt)


def _eta(factors):
    return lambda trunc: eta_expand(factors, trunc)


FORMS: dict[str, FormInfo] = {f.name: f for f in [
    _info("E2", 2, "SL2(Z) (quasimodular)", 0, _eisenstein(-24, "sigma", 1)),
    _info("E4", 4, "SL2(Z)", 0, _eisenstein(240, "sigma", 3)),
    _info("E6", 6, "SL2(Z)", 0, _eisenstein(-504, "sigma", 5)),
    _info("Delta", 12, "SL2(Z)", 1, _delta, _eta({1: 24})),
    _info("j", 0, "SL2(Z)", -1, _hauptmodul("E4", 3, "Delta")),
    _info("eta", Fraction(1, 2), "SL2(Z) (multiplier)", Fraction(1, 24), _eta({1: 1})),
    _info("E2_2", 2, "Gamma0(2)", 0, _eisenstein(24, "odd_sigma", 1),
          lambda t: (2 * e2_dilated(2, t) - catalog("E2", t)).truncate(t)),
    _info("Delta4_2", 4, "Gamma0(2)", 1, _cusp("odd_cosigma", 3), _eta({2: 16, 1: -8})),
    _info("j_2", 0, "Gamma0(2)", -1, _hauptmodul("E2_2", 2, "Delta4_2")),
    _info("sqrtDelta4_2", 2, "Gamma(2)", Fraction(1, 2),
          _root_sum(Fraction(1, 2), 2, "sigma", lambda n: n & 1), _eta({2: 8, 1: -4})),
    _info("E1_3", 1, "Gamma0(3)", 0, _eisenstein(6, "char3", 1), character="(d/3)"),
    _info("Delta3_3", 3, "Gamma0(3)", 1, _cusp("char3_weighted", 2), _eta({3: 9, 1: -3}),
          character="(d/3)"),
    _info("j_3", 0, "Gamma0(3)", -1, _hauptmodul("E1_3", 3, "Delta3_3")),
    _info("cbrtDelta3_3", 1, "Gamma0^0(3)", Fraction(1, 3),
          _root_sum(Fraction(1, 3), 3, "char3", lambda n: n % 3), _eta({3: 3, 1: -1}),
          character="(d/3)"),
    _info("E2_4", 2, "Gamma0(4)", 0, _e2_level4, lambda t: theta_series("theta3_2tau", t) ** 4),
    _info("Delta2_4", 2, "Gamma0(4)", 1,
          _root_sum(Fraction(1), 1, "sigma", lambda n: n & 1), _eta({4: 8, 2: -4})),
    _info("j_4", 0, "Gamma0(4)", -1, _hauptmodul("E2_4", 1, "Delta2_4")),
    _info("theta3_2tau", Fraction(1, 2), "Gamma0(4)", 0, lambda t: theta_series("theta3_2tau", t)),
    _info("halftheta2_2tau", Fraction(1, 2), "Gamma0^0(4)", Fraction(1, 4),
          lambda t: theta_series("halftheta2_2tau", t), _eta({4: 2, 2: -1})),
]}

FORM_IDS = tuple(FORMS)

_cache: dict[str, QSeries] = {}
_cache_lock = threading.Lock()


def catalog(name: str, trunc: Rational) -> QSeries:
    """Exact expansion of a named form, known for every exponent below ``trunc``."""
    try:
        info = FORMS[name]
    except KeyError:
        raise KeyError(f"unknown form {name!r}; known: {', '.join(FORM_IDS)}") from None
    trunc = Fraction(trunc)
    with _cache_lock:
        hit = _cache.get(name)
    if hit is not None and hit.trunc >= trunc:
        return hit.truncate(trunc)
    s = info.build(trunc)
    with _cache_lock:
        old = _cache.get(name)
        if old is None or old.trunc < s.trunc:
            _cache[name] = s
    return s


def alternate(name: str, trunc: Rational) -> QSeries:
    """The second construction recipe of a form (eta quotient, dilation, theta power)."""
    alt = FORMS[name].alt
    if alt is None:
        raise KeyError(f"{name} has a single recipe")
    return alt(Fraction(trunc)).truncate(Fraction(trunc))


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def e2_dilated(m: int, trunc: Rational) -> QSeries:
    """E2(m*tau)."""
    trunc = Fraction(trunc)
    return catalog("E2", trunc / m).dilate(m)
