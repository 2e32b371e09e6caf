"""Truncated q-series with exact rational coefficients and fractional exponents.

A series is stored as ``q**lead * sum(c_i * q**(i*step))`` known exactly for
every exponent strictly below ``trunc``.  Coefficients are kept as a tuple of
integer numerators over one common denominator so that products reduce to
integer convolutions (Kronecker substitution into a single big-integer
multiply for long operands).

``step`` is the stride of the support: the largest rational ``s`` such that
all nonzero terms below ``trunc`` sit on ``lead + s*Z``.  It is recomputed on
construction, so eta quotients like ``q**(1/4) * (1 + q**2 + q**6 + ...)``
are stored without padding zeros.  A series with at most one nonzero term
carries ``step=None``.  Equality and hashing look at content only.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Union

from .errors import InsufficientPrecision, NotDivisible, ZeroSeries

Rational = Union[int, Fraction]

# below this operand length the schoolbook product wins
_KRONECKER_MIN = 16
DEFAULT_EXP_DEN = 24


def _fgcd(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    d = lcm(a.denominator, b.denominator)
    return Fraction(gcd(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator)), d)


def _count(lead: Fraction, step: Fraction | None, trunc: Fraction) -> int:
    if trunc <= lead:
        return 0
    if step is None:
        return 1
    return math.ceil((trunc - lead) / step)


# -- integer polynomial kernels -------------------------------------------


def _pack(v: list[int], nb: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(nb, "little") for c in v)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nb, "little") for c in v)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(x: list[int], y: list[int], n: int) -> list[int]:
    mx = max(map(abs, x))
    my = max(map(abs, y))
    if not mx or not my:
        return [0] * n
    bound = mx * my * min(len(x), len(y))
    nb = (bound.bit_length() + 1) // 8 + 1
    size = len(x) + len(y) - 1
    half = 1 << (8 * nb - 1)
    offset = int.from_bytes(half.to_bytes(nb, "little") * size, "little")
    raw = (_pack(x, nb) * _pack(y, nb) + offset).to_bytes(nb * size, "little")
    m = min(n, size)
    out = [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(m)]
    out.extend([0] * (n - m))
    return out


def convolve(x: list[int], y: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer polynomials."""
    x = x[:n]
    y = y[:n]
    if not x or not y:
        return [0] * n
    if min(len(x), len(y)) >= _KRONECKER_MIN:
        return _kronecker(x, y, n)
    out = [0] * n
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y[: n - i]):
                out[i + j] += xi * yj
    return out


def _inverse(u: list[int], n: int) -> tuple[list[int], int]:
    """Newton iteration for 1/u mod x**n; returns (numerators, denominator)."""
    u0 = u[0]
    w, wd = ([1], u0) if u0 > 0 else ([-1], -u0)
    m = 1
    while m < n:
        m2 = min(2 * m, n)
        t = [-c for c in convolve(u[:m2], w, m2)]
        t[0] += 2 * wd
        w = convolve(w, t, m2)
        wd = wd * wd
        g = gcd(wd, *w)
        if g > 1:
            w = [c // g for c in w]
            wd //= g
        m = m2
    return w, wd


# -- the series type -------------------------------------------------------


class QSeries:
    __slots__ = ("_lead", "_step", "_num", "_den", "_trunc")

    def __init__(self, coeffs: Iterable[Rational] = (), lead: Rational = 0,
                 step: Rational = 1, trunc: Rational | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        lead = Fraction(lead)
        step = Fraction(step)
        if trunc is None:
            trunc = lead + len(coeffs) * step
        self._init(lead, step, nums, den, Fraction(trunc))

    @classmethod
    def _raw(cls, lead, step, nums, den, trunc) -> QSeries:
        obj = cls.__new__(cls)
        obj._init(lead, step, nums, den, trunc)
        return obj

    def _init(self, lead: Fraction, step: Fraction | None, nums, den: int, trunc: Fraction):
        if step is not None and step <= 0:
            raise ValueError("step must be positive")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            nums = [-c for c in nums]
        n = _count(lead, step, trunc)
        nums = list(nums[:n])
        if len(nums) < n:
            nums.extend([0] * (n - len(nums)))
        first = next((i for i, c in enumerate(nums) if c), None)
        if first is None:
            lead, step, nums, den = trunc, None, [], 1
        else:
            if first:
                lead += first * step
                nums = nums[first:]
            g = 0
            for i in range(1, len(nums)):
                if nums[i]:
                    g = gcd(g, i)
                    if g == 1:
                        break
            if g == 0:
                step = None
                nums = nums[:1]
            elif g > 1:
                step *= g
                nums = nums[::g]
            c = gcd(den, *nums)
            if c > 1:
                nums = [x // c for x in nums]
                den //= c
        setattr_ = object.__setattr__
        setattr_(self, "_lead", lead)
        setattr_(self, "_step", step)
        setattr_(self, "_num", tuple(nums))
        setattr_(self, "_den", den)
        setattr_(self, "_trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    def __reduce__(self):
        return (QSeries._raw, (self._lead, self._step, self._num, self._den, self._trunc))

    # -- views ----------------------------------------------------------

    @property
    def lead(self) -> Fraction:
        """Exponent of the first nonzero term (``trunc`` for a zero series)."""
        return self._lead

    @property
    def trunc(self) -> Fraction:
        """First exponent whose coefficient is not known."""
        return self._trunc

    @property
    def step(self) -> Fraction | None:
        return self._step

    @property
    def exp_den(self) -> int:
        """Smallest grid denominator N on which lead, trunc and all terms lie."""
        d = lcm(self._lead.denominator, self._trunc.denominator)
        if self._step is not None:
            d = lcm(d, self._step.denominator)
        return d

    @property
    def lead_exp(self) -> int:
        return int(self._lead * self.exp_den)

    @property
    def trunc_exp(self) -> int:
        return int(self._trunc * self.exp_den)

    @property
    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list on the ``1/exp_den`` grid from ``lead`` to ``trunc``."""
        return self.grid_coeffs(self.exp_den)

    def grid_coeffs(self, exp_den: int) -> list[Fraction]:
        if (self._lead * exp_den).denominator != 1 or (self._trunc * exp_den).denominator != 1 \
                or (self._step is not None and (self._step * exp_den).denominator != 1):
            raise ValueError(f"series does not live on the 1/{exp_den} grid")
        n = int((self._trunc - self._lead) * exp_den)
        out = [Fraction(0)] * n
        for e, c in self.terms():
            out[int((e - self._lead) * exp_den)] = c
        return out

    def is_zero(self) -> bool:
        return not self._num

    def __len__(self) -> int:
        return len(self._num)

    def exponents(self) -> Iterator[Fraction]:
        """Lattice exponents lead, lead+step, ... below trunc."""
        for i in range(len(self._num)):
            yield self._lead + i * self._step if i else self._lead

    def lattice(self) -> list[tuple[Fraction, Fraction]]:
        return [(e, Fraction(c, self._den)) for e, c in zip(self.exponents(), self._num)]

    def lattice_coeffs(self) -> list[Fraction]:
        return [Fraction(c, self._den) for c in self._num]

    def terms(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Nonzero terms as (exponent, coefficient)."""
        for e, c in zip(self.exponents(), self._num):
            if c:
                yield e, Fraction(c, self._den)

    def __getitem__(self, e: Rational) -> Fraction:
        e = Fraction(e)
        if e >= self._trunc:
            raise InsufficientPrecision(f"coefficient of q^{e} needs trunc > {e}, have {self._trunc}")
        if not self._num or e < self._lead:
            return Fraction(0)
        if self._step is None:
            return Fraction(self._num[0], self._den) if e == self._lead else Fraction(0)
        i = (e - self._lead) / self._step
        if i.denominator != 1:
            return Fraction(0)
        return Fraction(self._num[int(i)], self._den)

    def leading_coefficient(self) -> Fraction:
        if not self._num:
            raise ZeroSeries("zero series has no leading coefficient")
        return Fraction(self._num[0], self._den)

    # -- structural transforms ------------------------------------------

    def truncate(self, trunc: Rational) -> QSeries:
        trunc = Fraction(trunc)
        if trunc >= self._trunc:
            return self
        return QSeries._raw(self._lead, self._step, self._num, self._den, trunc)

    def shift(self, e: Rational) -> QSeries:
        """Multiply by q**e."""
        e = Fraction(e)
        return QSeries._raw(self._lead + e, self._step, self._num, self._den, self._trunc + e)

    def dilate(self, m: Rational) -> QSeries:
        """Substitute q -> q**m (tau -> m*tau)."""
        m = Fraction(m)
        if m <= 0:
            raise ValueError("dilation factor must be positive")
        step = None if self._step is None else self._step * m
        return QSeries._raw(self._lead * m, step, self._num, self._den, self._trunc * m)

    def theta(self) -> QSeries:
        """The operator q*d/dq."""
        if not self._num:
            return self
        if self._step is None:
            e = self._lead
            return QSeries._raw(e, None, [self._num[0] * e.numerator], self._den * e.denominator, self._trunc)
        d = lcm(self._lead.denominator, self._step.denominator)
        a = int(self._lead * d)
        s = int(self._step * d)
        nums = [c * (a + i * s) for i, c in enumerate(self._num)]
        return QSeries._raw(self._lead, self._step, nums, self._den * d, self._trunc)

    # -- arithmetic -----------------------------------------------------

    def _scatter(self, lead: Fraction, step: Fraction | None, n: int, mult: int) -> list[int]:
        out = [0] * n
        if not self._num:
            return out
        start = 0 if step is None else int((self._lead - lead) / step)
        stride = 1 if self._step is None else int(self._step / step)
        for i, c in enumerate(self._num):
            j = start + i * stride
            if j >= n:
                break
            out[j] = c * mult
        return out

    def _add(self, other: QSeries, sign: int) -> QSeries:
        trunc = min(self._trunc, other._trunc)
        # pair each operand with its sign; a - a must not negate both copies
        live = [(s, m) for s, m in ((self, 1), (other, sign)) if s._num and s._lead < trunc]
        if not live:
            return QSeries._raw(trunc, None, (), 1, trunc)
        lead = min(s._lead for s, _ in live)
        step = None
        for s, _ in live:
            step = _fgcd(step, s._step)
            if s._lead != lead:
                step = _fgcd(step, s._lead - lead)
        den = lcm(*(s._den for s, _ in live))
        n = _count(lead, step, trunc)
        acc = [0] * n
        for s, m in live:
            mult = m * (den // s._den)
            for j, c in enumerate(s._scatter(lead, step, n, mult)):
                if c:
                    acc[j] += c
        return QSeries._raw(lead, step, acc, den, trunc)

    def __add__(self, other):
        if isinstance(other, QSeries):
            return self._add(other, 1)
        if isinstance(other, (int, Fraction)):
            return self._add(constant(other, self._trunc), 1)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self._add(other, -1)
        if isinstance(other, (int, Fraction)):
            return self._add(constant(other, self._trunc), -1)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return constant(other, self._trunc)._add(self, -1)
        return NotImplemented

    def __neg__(self) -> QSeries:
        return QSeries._raw(self._lead, self._step, [-c for c in self._num], self._den, self._trunc)

    def scale(self, c: Rational) -> QSeries:
        c = Fraction(c)
        return QSeries._raw(self._lead, self._step, [x * c.numerator for x in self._num],
                            self._den * c.denominator, self._trunc)

    def _mul(self, other: QSeries) -> QSeries:
        a, b = self, other
        trunc = min(a._trunc + b._lead, b._trunc + a._lead)
        lead = a._lead + b._lead
        if not a._num or not b._num or lead >= trunc:
            return QSeries._raw(trunc, None, (), 1, trunc)
        step = _fgcd(a._step, b._step)
        n = _count(lead, step, trunc)
        x = a._scatter(a._lead, step, n, 1)
        y = b._scatter(b._lead, step, n, 1)
        return QSeries._raw(lead, step, convolve(x, y, n), a._den * b._den, trunc)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return self._mul(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> QSeries:
        """Multiplicative inverse; precision relative to the lead is preserved."""
        if not self._num:
            raise ZeroSeries(f"series vanishes through q^{self._trunc}")
        lead, trunc = -self._lead, self._trunc - 2 * self._lead
        n = len(self._num)
        if self._step is None:
            c = self._num[0]
            return QSeries._raw(lead, None, [self._den], c, trunc)
        w, wd = _inverse(list(self._num), n)
        return QSeries._raw(lead, self._step, [c * self._den for c in w], wd, trunc)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self._mul(other.inv())
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inv().scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> QSeries:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = constant(1, self._trunc - self._lead)
        base = self
        while True:
            if e & 1:
                result = result._mul(base)
            e >>= 1
            if not e:
                return result
            base = base._mul(base)

    def divide_exact(self, other: QSeries, min_lead: Rational | None = 0) -> QSeries:
        """``self / other``, raising NotDivisible if the quotient has a pole below ``min_lead``."""
        q = self / other
        if min_lead is not None and q._lead < min_lead:
            raise NotDivisible(f"quotient starts at q^{q._lead} < q^{Fraction(min_lead)}")
        return q

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._trunc == other._trunc and list(self.terms()) == list(other.terms())

    def __hash__(self):
        return hash((self._trunc, tuple(self.terms())))

    def __repr__(self):
        return f"QSeries({self.format(8)})"

    def __str__(self):
        return self.format(10)

    def format(self, max_terms: int = 10) -> str:
        parts = []
        for idx, (e, c) in enumerate(self.terms()):
            if idx == max_terms:
                parts.append("...")
                break
            if e == 0:
                mono = str(c)
            else:
                qe = "q" if e == 1 else f"q^{e}" if e.denominator == 1 and e > 0 else f"q^({e})"
                mono = qe if c == 1 else f"-{qe}" if c == -1 else f"{c}*{qe}"
            parts.append(mono)
        parts.append(f"O(q^{self._trunc})" if self._trunc.denominator == 1 else f"O(q^({self._trunc}))")
        return " + ".join(parts).replace("+ -", "- ")


# -- constructors and functional aliases --------------------------------


def zero(trunc: Rational) -> QSeries:
    trunc = Fraction(trunc)
    return QSeries._raw(trunc, None, (), 1, trunc)


def constant(c: Rational, trunc: Rational) -> QSeries:
    c = Fraction(c)
    return QSeries._raw(Fraction(0), None, [c.numerator], c.denominator, Fraction(trunc))


def monomial(c: Rational, e: Rational, trunc: Rational) -> QSeries:
    c = Fraction(c)
    return QSeries._raw(Fraction(e), None, [c.numerator], c.denominator, Fraction(trunc))


def from_function(f, trunc: int, lead: Rational = 0, step: Rational = 1) -> QSeries:
    """Series with coefficient ``f(i)`` at ``q**(lead + i*step)`` for exponents below ``trunc``."""
    lead, step = Fraction(lead), Fraction(step)
    n = _count(lead, step, Fraction(trunc))
    return QSeries([f(i) for i in range(n)], lead, step, trunc)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def sub(a: QSeries, b: QSeries) -> QSeries:
    return a - b


def scale(c: Rational, a: QSeries) -> QSeries:
    return a.scale(c)


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def inv(a: QSeries) -> QSeries:
    return a.inv()


def pow_int(a: QSeries, e: int) -> QSeries:
    return a ** e


def theta_deriv(a: QSeries) -> QSeries:
    return a.theta()


# -- JSON wire format ------------------------------------------------------


def to_json_dict(s: QSeries, exp_den: int | None = None) -> dict:
    n = s.exp_den
    if exp_den is not None:
        if exp_den % n:
            raise ValueError(f"exp_den {exp_den} is not a multiple of the series grid {n}")
        n = exp_den
    coeffs = s.grid_coeffs(n)
    return {
        "exp_den": str(n),
        "lead_exp": str(int(s.lead * n)),
        "trunc": str(int(s.trunc * n)),
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in coeffs],
    }


def from_json_dict(d: dict) -> QSeries:
    n = int(d["exp_den"])
    if n <= 0:
        raise ValueError("exp_den must be positive")
    lead = Fraction(int(d["lead_exp"]), n)
    trunc = Fraction(int(d["trunc"]), n)
    coeffs = [Fraction(int(p), int(q)) for p, q in d["coeffs"]]
    if len(coeffs) != int(d["trunc"]) - int(d["lead_exp"]):
        raise ValueError("coeffs length must equal trunc - lead_exp")
    return QSeries(coeffs, lead, Fraction(1, n), trunc)


def dumps(s: QSeries, exp_den: int | None = None) -> str:
    return json.dumps(to_json_dict(s, exp_den))


def loads(text: str) -> QSeries:
    return from_json_dict(json.loads(text))
