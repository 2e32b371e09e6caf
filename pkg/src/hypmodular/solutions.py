"""Solutions of the hypergeometric-type equation for each residue class of k.

Modular families are finite hypergeometric sums in catalog forms; the
k = 6n+5 family is quasimodular and comes from the polynomials P_n, Q_n.
The ladder moves solutions between weights k-6, k, k+6, and
:func:`frobenius_solve` is an independent series-recurrence oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (ForbiddenWeight, IndicialDegenerate, MuUndefined, NoneKnown,
                     NotDivisible, Resonant, SeedInconsistent, UnsupportedBeta,
                     UnsupportedClass)
from .forms import catalog, divisor_sum_table, eta_expand
from .operators import as_weight, kz_apply, kz_operator, rc_bracket
from .qseries import QSeries, Rational, constant, monomial, zero


class ResidueClass(enum.Enum):
    Lvl1 = "Lvl1"            # k even, k = 0, 4 mod 6
    Lvl2 = "Lvl2"            # k even, k = 2 mod 6
    Lvl3 = "Lvl3"            # k odd, k = 1, 3 mod 6
    Quasi = "Quasi"          # k odd, k = 5 mod 6
    Lvl4 = "Lvl4"            # k half-integral, k = 1/2 mod 3
    NoneKnown = "NoneKnown"  # other half-integral k


def classify_weight(k) -> ResidueClass:
    k = as_weight(k, allow_negative=False)
    if k.denominator == 2:
        return ResidueClass.Lvl4 if (k - Fraction(1, 2)) % 3 == 0 else ResidueClass.NoneKnown
    r = int(k) % 6
    return {0: ResidueClass.Lvl1, 4: ResidueClass.Lvl1, 2: ResidueClass.Lvl2,
            1: ResidueClass.Lvl3, 3: ResidueClass.Lvl3, 5: ResidueClass.Quasi}[r]


def pochhammer(a: Rational, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for t in range(n):
        out *= a + t
    return out


def hyp_coefficient(a: Rational, b: Rational, c: Rational, i: int) -> Fraction:
    """(a)_i (b)_i / ((c)_i i!)."""
    return pochhammer(a, i) * pochhammer(b, i) / (pochhammer(c, i) * math.factorial(i))


def _powers(base: QSeries, start: int, stride: int, count: int) -> list[QSeries]:
    """[base**(start + t*stride) for t in range(count)], sharing the multiplications."""
    if count <= 0:
        return []
    lo = start + (count - 1) * stride if stride < 0 else start
    step = base ** abs(stride)
    # base**0 is exactly 1; do not let it inherit base's relative precision
    chain = [base ** lo if lo else constant(1, base.trunc)]
    for _ in range(count - 1):
        chain.append(chain[-1] * step)
    return chain[::-1] if stride < 0 else chain


def _finite_sum(coeffs: list[Fraction], xs: list[QSeries], ys: list[QSeries]) -> QSeries:
    total = None
    for c, x, y in zip(coeffs, xs, ys):
        term = x * y * c
        total = term if total is None else total + term
    return total


# -- closed-form families ---------------------------------------------------


def _unsupported(k: Fraction, cls: ResidueClass, what: str):
    if cls is ResidueClass.NoneKnown:
        return NoneKnown(f"NoneKnown: no known modular solution for k={k} (none is expected)")
    return UnsupportedClass(f"{what} not available for k={k} (class {cls.value})")


def solve_normalized(k, trunc: Rational) -> QSeries:
    """The solution 1 + O(q) of the modular families, as a finite hypergeometric sum."""
    k = as_weight(k, allow_negative=False)
    trunc = Fraction(trunc)
    cls = classify_weight(k)
    if cls is ResidueClass.Lvl1:
        kk = int(k)
        lead_e6 = kk % 12 in (6, 10)
        w = kk - 6 if lead_e6 else kk
        imax = w // 12
        cs = [hyp_coefficient(Fraction(-w, 12), Fraction(-(w - 4), 12), Fraction(-(kk - 5), 6), i)
              * 1728 ** i for i in range(imax + 1)]
        s = _finite_sum(cs, _powers(catalog("Delta", trunc), 0, 1, imax + 1),
                        _powers(catalog("E4", trunc), w // 4, -3, imax + 1))
        if lead_e6:
            s = s * catalog("E6", trunc)
    elif cls is ResidueClass.Lvl2:
        kk = int(k)
        imax = kk // 4
        cs = [hyp_coefficient(Fraction(-kk, 4), Fraction(-(kk - 2), 4), Fraction(-(kk - 5), 6), i)
              * 64 ** i for i in range(imax + 1)]
        s = _finite_sum(cs, _powers(catalog("Delta4_2", trunc), 0, 1, imax + 1),
                        _powers(catalog("E2_2", trunc), kk // 2, -2, imax + 1))
    elif cls is ResidueClass.Lvl3:
        kk = int(k)
        imax = kk // 3
        cs = [hyp_coefficient(Fraction(-kk, 3), Fraction(-(kk - 1), 3), Fraction(-(kk - 5), 6), i)
              * 27 ** i for i in range(imax + 1)]
        s = _finite_sum(cs, _powers(catalog("Delta3_3", trunc), 0, 1, imax + 1),
                        _powers(catalog("E1_3", trunc), kk, -3, imax + 1))
    elif cls is ResidueClass.Lvl4:
        n = int((2 * k - 1) / 6)
        cs = [hyp_coefficient(-Fraction(n), -k / 2, -(k - 5) / 6, i) * 16 ** i
              for i in range(n + 1)]
        # E2_4**(k/2 - i) = theta3(2 tau)**(2k - 4i)
        s = _finite_sum(cs, _powers(catalog("Delta2_4", trunc), 0, 1, n + 1),
                        _powers(catalog("theta3_2tau", trunc), int(2 * k), -4, n + 1))
    else:
        raise _unsupported(k, cls, "normalized solution")
    return s.truncate(trunc)


def solve_cuspidal(k, trunc: Rational) -> QSeries:
    """The solution q^((k+1)/6) + O(q^((k+7)/6)) of the level 2, 3, 4 families."""
    k = as_weight(k, allow_negative=False)
    trunc = Fraction(trunc)
    cls = classify_weight(k)
    if cls is ResidueClass.Lvl2:
        kk = int(k)
        imax = (kk - 2) // 12
        cs = [hyp_coefficient(Fraction(-(kk - 2), 12), Fraction(-(kk - 8), 12), Fraction(kk + 7, 6), i)
              * 64 ** i for i in range(imax + 1)]
        # Delta4_2**((k+1)/6 + i) = sqrtDelta4_2**((k+1)/3 + 2i)
        s = _finite_sum(cs, _powers(catalog("sqrtDelta4_2", trunc), (kk + 1) // 3, 2, imax + 1),
                        _powers(catalog("E2_2", trunc), (kk - 2) // 6, -2, imax + 1))
    elif cls is ResidueClass.Lvl3:
        kk = int(k)
        imax = (kk - 1) // 6
        cs = [hyp_coefficient(Fraction(-(kk - 1), 6), Fraction(-(kk - 3), 6), Fraction(kk + 7, 6), i)
              * 27 ** i for i in range(imax + 1)]
        s = _finite_sum(cs, _powers(catalog("cbrtDelta3_3", trunc), (kk + 1) // 2, 3, imax + 1),
                        _powers(catalog("E1_3", trunc), (kk - 1) // 2, -3, imax + 1))
    elif cls is ResidueClass.Lvl4:
        n = int((2 * k - 1) / 6)
        cs = [hyp_coefficient(-Fraction(n), -(k - 2) / 6, (k + 7) / 6, i) * 16 ** i
              for i in range(n + 1)]
        # Delta2_4**((k+1)/6 + i) = halftheta2_2tau**(2n + 1 + 4i)
        s = _finite_sum(cs, _powers(catalog("halftheta2_2tau", trunc), 2 * n + 1, 4, n + 1),
                        _powers(catalog("E2_4", trunc), n, -1, n + 1))
    else:
        raise _unsupported(k, cls, "cuspidal solution")
    return s.truncate(trunc)


# -- polynomials P_n, Q_n and the quasimodular family ----------------------


@dataclass(frozen=True)
class PolyQ:
    """Univariate polynomial with rational coefficients, ``coeffs[i]`` at x**i."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: PolyQ) -> PolyQ:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyQ(tuple(x + y for x, y in zip(a, b)))

    def scale(self, c: Rational) -> PolyQ:
        return PolyQ(tuple(x * c for x in self.coeffs))

    def times_x(self) -> PolyQ:
        return PolyQ((Fraction(0),) + self.coeffs) if self.coeffs else self

    def __call__(self, x):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def parity(self) -> int | None:
        """0 or 1 if only even or only odd degrees occur, else None."""
        degs = {i % 2 for i, c in enumerate(self.coeffs) if c}
        return degs.pop() if len(degs) == 1 else (0 if not degs else None)

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
                cs = str(c) if (c != 1 or i == 0) else ""
                terms.append(f"{cs}{'*' if cs and mono else ''}{mono}")
        return " + ".join(terms) or "0"


def lam(n: int) -> Fraction:
    return Fraction(12 * (6 * n + 1) * (6 * n + 5), n * (n + 1))


@lru_cache(maxsize=None)
def pq_polynomials(n: int) -> tuple[PolyQ, PolyQ]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    p_prev, p = PolyQ((1,)), PolyQ((0, 1))
    q_prev, q = PolyQ(()), PolyQ((1,))
    if n == 0:
        return p_prev, q_prev
    for m in range(1, n):
        p_prev, p = p, p.times_x() + p_prev.scale(lam(m))
        q_prev, q = q, q.times_x() + q_prev.scale(lam(m))
    return p, q


def _split_parity(poly: PolyQ, n: int, e6: QSeries, delta: QSeries) -> QSeries:
    """sqrt(Delta)**n * poly(E6/sqrt(Delta)) for a polynomial of parity n."""
    total = zero(min(e6.trunc, delta.trunc))
    for i, c in enumerate(poly.coeffs):
        if c:
            if (n - i) % 2:
                raise ValueError("polynomial parity does not match n")
            total = total + e6 ** i * delta ** ((n - i) // 2) * c
    return total


def quasimodular_solution(n: int, trunc: Rational) -> QSeries:
    """Weight 6n+6 quasimodular solution for k = 6n+5 (leading term at q^(n+1))."""
    trunc = Fraction(trunc)
    p, q = pq_polynomials(n)
    e6, delta = catalog("E6", trunc), catalog("Delta", trunc)
    f5 = catalog("E4", trunc).theta() / 240
    s = _split_parity(p, n, e6, delta) * f5 - _split_parity(q, n + 1, e6, delta)
    return s.truncate(trunc)


def known_solution(k, trunc: Rational, kind: str = "normalized") -> QSeries:
    """Dispatch by family name: normalized, cuspidal or quasi."""
    k = as_weight(k, allow_negative=False)
    if kind == "normalized":
        return solve_normalized(k, trunc)
    if kind == "cuspidal":
        return solve_cuspidal(k, trunc)
    if kind == "quasi":
        if classify_weight(k) is not ResidueClass.Quasi:
            raise UnsupportedClass(f"quasimodular family needs k = 5 mod 6, got k={k}")
        return quasimodular_solution(int(k - 5) // 6, trunc)
    raise ValueError(f"unknown family {kind!r}")


# -- ladder ----------------------------------------------------------------


def divide_by_delta(s: QSeries) -> QSeries:
    if s.is_zero():
        return zero(s.trunc - 1)
    return s / catalog("Delta", math.ceil(s.trunc - s.lead) + 2)


def descend(F: QSeries, k) -> QSeries:
    """(k-5)/(288 k (k-4)) [F, E4]/Delta, a solution of weight k-6 if F solves weight k."""
    k = as_weight(k)
    if k in (0, 4, 5):
        raise ForbiddenWeight(f"descent is undefined at k={k}")
    e4 = catalog("E4", max(math.ceil(F.trunc - F.lead), 0))
    quotient = divide_by_delta(rc_bracket(F, k, e4, 4))
    if not quotient.is_zero() and quotient.lead not in (0, (k - 5) / 6):
        raise NotDivisible(f"[F,E4]/Delta starts at q^{quotient.lead}; "
                           f"expected an indicial exponent of weight {k - 6}")
    return quotient * ((k - 5) / (288 * k * (k - 4)))


def mu(k, i: int) -> Fraction:
    k = Fraction(k)
    w = k + 6 * i
    den = (w + 1) * (w - 5)
    if den == 0:
        raise MuUndefined(f"mu_{i} is undefined for k={k}")
    return 432 * w * (w - 4) / den


@dataclass(frozen=True)
class LadderState:
    base: Fraction
    rungs: tuple[tuple[Fraction, QSeries], ...]
    mus: tuple[Fraction, ...]
    vanish_orders: tuple[Fraction, ...] | None = None

    def series(self, weight) -> QSeries:
        w = Fraction(weight)
        for kk, s in self.rungs:
            if kk == w:
                return s
        raise KeyError(f"no rung of weight {w}")

    @property
    def verified(self) -> bool | None:
        if self.vanish_orders is None:
            return None
        return all(o >= s.trunc for o, (_, s) in zip(self.vanish_orders, self.rungs))


def ladder_seed(k, F_k: QSeries, mu0: Rational | None = None) -> QSeries | None:
    """The partner F_{k-6} that makes (F_k, F_{k-6}) a consistent seed pair:
    3 [F_k, E4] / (2 (k+1) mu_0 Delta).  None when mu_0 = 0 (the zero seed).

    It may have a negative leading exponent; only Delta*F_{k-6} enters the ladder.
    """
    k = as_weight(k)
    m0 = Fraction(mu0) if mu0 is not None else mu(k, 0)
    if m0 == 0:
        return None
    e4 = catalog("E4", max(math.ceil(F_k.trunc - F_k.lead), 0))
    return divide_by_delta(rc_bracket(F_k, k, e4, 4)) * (3 / (2 * (k + 1) * m0))


def ascend_ladder(k, F_k: QSeries, F_km6: QSeries | None, steps: int,
                  mu0: Rational | None = None, verify: bool = False) -> LadderState:
    """Rungs F_{k+6i+6} = E6 F_{k+6i} + mu_i Delta F_{k+6i-6}, i < steps.

    ``F_km6=None`` stands for the zero seed.  ``mu0`` overrides the first
    constant (needed at k = 5, where the closed form has a pole).
    """
    k = as_weight(k)
    if F_km6 is None:
        F_km6 = zero(F_k.trunc)
    mus = [Fraction(mu0) if mu0 is not None else mu(k, 0)]
    mus += [mu(k, i) for i in range(1, steps)]

    e4 = catalog("E4", max(math.ceil(F_k.trunc - F_k.lead), 0))
    lhs = rc_bracket(F_k, k, e4, 4)
    rhs = F_km6 * catalog("Delta", max(math.ceil(F_km6.trunc - F_km6.lead), 1)) \
        * (Fraction(2, 3) * (k + 1) * mus[0])
    if not (lhs - rhs).is_zero():
        raise SeedInconsistent(f"[F_k, E4] != (2/3)(k+1) mu_0 Delta F_(k-6) "
                               f"at q^{(lhs - rhs).lead}")

    rungs = [(k, F_k)]
    prev, cur = F_km6, F_k
    for i in range(steps):
        e6 = catalog("E6", max(math.ceil(cur.trunc - cur.lead), 0))
        delta = catalog("Delta", max(math.ceil(prev.trunc - prev.lead), 1))
        prev, cur = cur, e6 * cur + delta * prev * mus[i]
        rungs.append((k + 6 * (i + 1), cur))

    orders = None
    if verify:
        orders = tuple(kz_apply(s, w).vanish_order for w, s in rungs)
    return LadderState(k, tuple(rungs), tuple(mus), orders)


# -- series-recurrence oracle ----------------------------------------------


def indicial_roots(k) -> tuple[Fraction, Fraction]:
    k = Fraction(k)
    return Fraction(0), (k + 1) / 6


def frobenius_solve(k, branch: str, trunc: Rational) -> QSeries:
    """Power-series solution q^rho (1 + ...) by direct coefficient recurrence.

    Substituting sum c_m q^(rho+m) with E2 = 1 - 24 sum sigma(n) q^n gives
    c_m (rho+m)(rho+m-(k+1)/6) =
        -sum_{j=1..m} c_{m-j} sigma(j) [4(k+1)(rho+m-j) - 2k(k+1) j].
    """
    k = as_weight(k)
    trunc = Fraction(trunc)
    r0, r1 = indicial_roots(k)
    if r0 == r1:
        raise IndicialDegenerate("indicial roots coincide at k = -1")
    if branch == "zero":
        rho, other = r0, r1
    elif branch == "cusp":
        rho, other = r1, r0
    else:
        raise ValueError(f"branch must be 'zero' or 'cusp', got {branch!r}")
    gap = other - rho
    if gap > 0 and gap.denominator == 1:
        raise Resonant(f"exponent gap {gap} is a positive integer at k={k}; "
                       f"the q^{rho} branch needs logarithmic terms")
    n = max(math.ceil(trunc - rho), 0)
    sigma = divisor_sum_table(n, "sigma", 1)
    a = 4 * (k + 1)
    b = 2 * k * (k + 1)
    c = [Fraction(1)] if n else []
    wc = [rho] if n else []   # (rho + t) c_t
    for m in range(1, n):
        s = Fraction(0)
        for j in range(1, m + 1):
            if sigma[j]:
                s += sigma[j] * (a * wc[m - j] - b * j * c[m - j])
        e = rho + m
        cm = -s / (e * (e - (k + 1) / 6))
        c.append(cm)
        wc.append(e * cm)
    return QSeries(c, rho, 1, trunc)


# -- Delta-power twist -----------------------------------------------------


def twist_alpha(k, beta: Rational) -> Fraction:
    beta = Fraction(beta)
    return -beta * beta - (Fraction(k) + 1) * beta / 6


def any_solution(k, trunc: Rational) -> QSeries:
    """Some exact solution of weight k: a modular family if one exists, else the oracle."""
    k = as_weight(k)
    if k >= 0:
        cls = classify_weight(k)
        if cls is ResidueClass.Quasi:
            return quasimodular_solution(int(k - 5) // 6, trunc)
        if cls is not ResidueClass.NoneKnown:
            return solve_normalized(k, trunc)
    try:
        return frobenius_solve(k, "zero", trunc)
    except Resonant:
        return frobenius_solve(k, "cusp", trunc)


def verify_delta_twist(k, beta: Rational, trunc: Rational) -> bool:
    """Check that g * Delta**(-beta) solves the alpha-shifted equation of weight k
    whenever g solves the weight k + 12 beta equation, alpha = -beta^2 - (k+1) beta/6."""
    k = as_weight(k)
    beta = Fraction(beta)
    if (24 * beta).denominator != 1:
        raise UnsupportedBeta(f"Delta^{beta} is not on the q^(1/24) grid")
    trunc = Fraction(trunc)
    if beta == 0:
        g = any_solution(k, trunc)
        return kz_apply(g, k).vanishes
    k2 = k + 12 * beta
    g = any_solution(k2, trunc + beta + 1)
    twist = eta_expand({1: int(-24 * beta)}, math.ceil(g.trunc - g.lead) - beta + 1)
    f = (g * twist).truncate(trunc)
    res = kz_operator(f, k, twist_alpha(k, beta))
    return res.is_zero() and res.trunc >= trunc


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class SolutionReport:
    weight: Fraction
    family: str
    leading_exponent: Fraction
    leading_coefficient: Fraction
    vanish_order: Fraction
    through: Fraction
    normalization: str
    contract_ok: bool
    positivity: str | None = field(default=None)

    @property
    def verified(self) -> bool:
        return self.vanish_order > self.through and self.contract_ok

    def to_dict(self) -> dict:
        return {
            "weight": str(self.weight),
            "family": self.family,
            "leading_exponent": str(self.leading_exponent),
            "leading_coefficient": str(self.leading_coefficient),
            "vanish_order": str(self.vanish_order),
            "through": str(self.through),
            "normalization": self.normalization,
            "contract_ok": self.contract_ok,
            "verified": self.verified,
            "positivity": self.positivity,
        }

    def to_text(self) -> str:
        return "\n".join(f"{key}: {val}" for key, val in self.to_dict().items())


def check_contract(f: QSeries, k, family: str) -> tuple[bool, str]:
    """Leading-term contract of each family."""
    k = Fraction(k)
    if f.is_zero():
        return False, "zero series"
    rho = (k + 1) / 6
    if family == "normalized":
        ok = f.lead == 0 and f.leading_coefficient() == 1 \
            and (f - monomial(1, 0, f.trunc)).lead >= 1
        return ok, "1+O(q)"
    if family == "cuspidal":
        ok = f.lead == rho and f.leading_coefficient() == 1 \
            and (f - monomial(1, rho, f.trunc)).lead >= rho + 1
        return ok, "q^((k+1)/6)+O(q^((k+7)/6))"
    if family == "quasi":
        return f.lead == rho, "c*q^((k+1)/6)+O(q^((k+7)/6))"
    raise ValueError(f"unknown family {family!r}")


def verify_family(k, family: str, through: Rational) -> SolutionReport:
    """Build a family member exact through q^through and check the equation there."""
    k = as_weight(k, allow_negative=False)
    through = Fraction(through)
    f = known_solution(k, through + 1, family)
    ok, norm = check_contract(f, k, family)
    res = kz_apply(f, k)
    return SolutionReport(k, family, f.lead, f.leading_coefficient() if not f.is_zero() else Fraction(0),
                          res.vanish_order, through, norm, ok)
