"""Positivity checks and their supporting inequalities, expansions in 1/j,
decomposition in the ring generated by E2, E4, E6, and the identity suite."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import IdentityFailure, InsufficientPrecision, NotQuasimodular, OddWeight
from .forms import alternate, catalog, divisor_sum, eta_expand, legendre3
from .operators import kz_apply, rc_bracket, serre
from .qseries import QSeries, Rational, from_function
from .solutions import hyp_coefficient, quasimodular_solution, solve_cuspidal

try:  # big-int elimination is several times faster on GMP integers
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

# -- positivity ------------------------------------------------------------


@dataclass(frozen=True)
class PositivityReport:
    checked_through: Fraction
    status: str                       # AllPositive | NonNegativeWithZeros | Violation
    first_nonpositive: Fraction | None = None
    coefficient: Fraction | None = None

    @property
    def all_positive(self) -> bool:
        return self.status == "AllPositive"

    def __str__(self):
        if self.first_nonpositive is None:
            return f"{self.status} through q^{self.checked_through}"
        return (f"{self.status} through q^{self.checked_through}: "
                f"coefficient {self.coefficient} at q^{self.first_nonpositive}")


def check_positivity(f: QSeries, through: Rational, step: Rational | None = None) -> PositivityReport:
    """Scan the coefficients at f.lead + i*step up to and including q^through.

    ``step`` defaults to the stride of f's support, so a theta series such as
    q^(1/4)(1 + q^2 + q^6 + ...) is judged on the exponents it can occupy.
    """
    through = Fraction(through)
    if through >= f.trunc:
        raise InsufficientPrecision(f"need trunc > {through}, series has trunc {f.trunc}")
    if f.is_zero():
        return PositivityReport(through, "Violation", f.lead, Fraction(0))
    step = Fraction(step) if step is not None else (f.step or Fraction(1))
    first_zero = None
    e = f.lead
    while e <= through:
        c = f[e]
        if c < 0:
            return PositivityReport(through, "Violation", e, c)
        if c == 0 and first_zero is None:
            first_zero = e
        e += step
    if first_zero is not None:
        return PositivityReport(through, "NonNegativeWithZeros", first_zero, Fraction(0))
    return PositivityReport(through, "AllPositive")


def char3_case_check(p: int, e: int) -> tuple[int, int]:
    """Both character sums at n = p^e by brute force, checked against their closed forms."""
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    if e < 0:
        raise ValueError("e must be nonnegative")
    plain = sum(legendre3(p ** t) for t in range(e + 1))
    weighted = sum(legendre3(p ** t) * p ** (2 * (e - t)) for t in range(e + 1))
    chi = legendre3(p)
    if p == 3:
        closed = (1, p ** (2 * e))
    elif chi == 1:
        closed = (e + 1, (p ** (2 * e + 2) - 1) // (p * p - 1))
    elif e % 2 == 0:
        closed = (1, (p ** (2 * e + 2) + 1) // (p * p + 1))
    else:
        closed = (0, (p ** (2 * e + 2) - 1) // (p * p + 1))
    if (plain, weighted) != closed:
        raise IdentityFailure(f"p={p}, e={e}: brute force {(plain, weighted)} != closed form {closed}")
    return plain, weighted


def alpha_bound_check(alpha: Rational, through: Rational) -> PositivityReport:
    """Positivity of E2_4 - alpha*Delta2_4 on the full integer grid."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    t = Fraction(through) + 1
    return check_positivity(catalog("E2_4", t) - catalog("Delta2_4", t) * alpha, through, step=1)


def sigma_gap_identity(n: int) -> int:
    """sigma(4n) - 4 sigma(n), checked to equal 3 sigma(odd part of n)."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n
    while m % 2 == 0:
        m //= 2
    gap = divisor_sum(4 * n) - 4 * divisor_sum(n)
    if gap != 3 * divisor_sum(m):
        raise IdentityFailure(f"sigma(4n)-4sigma(n) != 3 sigma(m) at n={n}")
    return gap


def halfint_a(n: int, i: int) -> Fraction:
    """Coefficient a_i of the cuspidal solution at k = (6n+1)/2."""
    return hyp_coefficient(-n, Fraction(-(2 * n - 1), 4), Fraction(2 * n + 5, 4), i)


def halfint_ratio(n: int, i: int) -> Fraction:
    """a_{i+1}/a_i."""
    return Fraction(-n + i) * (Fraction(-(2 * n - 1), 4) + i) / ((Fraction(2 * n + 5, 4) + i) * (i + 1))


def halfint_sign_window(n: int) -> bool:
    """Sign pattern of a_i (positive below (2n+3)/4, alternating after) and
    0 <= -16 a_{i+1}/a_i < 8 on the window (2n+3)/4 < i <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    edge = Fraction(2 * n + 3, 4)
    a = [halfint_a(n, i) for i in range(n + 1)]
    for i in range(n + 1):
        if i < edge:
            if a[i] <= 0:
                return False
        elif a[i] * a[i - 1] >= 0:
            return False
    for i in range(n + 1):
        if i > edge:
            r = -16 * halfint_ratio(n, i)
            if not 0 <= r < 8:
                return False
    return True


def halfint_grouping(n: int) -> list[tuple[int, Fraction | None]]:
    """Groups of the a_i: (i, alpha) pairs a_i (16A)^i B^(n-i-1) (B - alpha A) when
    a_i > 0 >= a_{i+1}, or (i, None) for a lone positive term."""
    a = [halfint_a(n, i) for i in range(n + 2)]
    groups = []
    i = 0
    while i <= n:
        if a[i] <= 0:
            raise IdentityFailure(f"unpaired nonpositive a_{i} = {a[i]} at n={n}")
        if i < n and a[i + 1] < 0:
            groups.append((i, -16 * halfint_ratio(n, i)))
            i += 2
        else:
            groups.append((i, None))
            i += 1
    return groups


def halfint_positivity_chain(n: int, through: Rational) -> bool:
    """Positivity of the k = (6n+1)/2 cuspidal solution through the pairing argument.

    Every pair factor B - alpha*A must have alpha in [0, 8) and pass
    :func:`alpha_bound_check`; the regrouped sum must reproduce the solution.
    """
    through = Fraction(through)
    t = through + 2
    A, B = catalog("Delta2_4", t), catalog("E2_4", t)
    total = None
    for i, alpha in halfint_grouping(n):
        if alpha is None:
            term = (A * 16) ** i * B ** (n - i) * halfint_a(n, i)
        else:
            if not (0 <= alpha < 8 and alpha_bound_check(alpha, through).all_positive):
                return False
            term = (A * 16) ** i * B ** (n - i - 1) * (B - A * alpha) * halfint_a(n, i)
        total = term if total is None else total + term
    root = catalog("halftheta2_2tau", t) ** (2 * n + 1)
    k = Fraction(6 * n + 1, 2)
    return (root * total - solve_cuspidal(k, t)).truncate(through + 1).is_zero()


# -- expansion in powers of 1/j --------------------------------------------


def inverse_j(trunc: Rational) -> QSeries:
    """1/j = Delta/E4^3 = q - 744 q^2 + ..."""
    trunc = Fraction(trunc)
    return (catalog("Delta", trunc) / catalog("E4", trunc) ** 3).truncate(trunc)


def expand_in_inv_j(f: QSeries, depth: int, constant: bool = False) -> list[Fraction]:
    """Coefficients c_i with f = c_0 + sum_{i>=1} c_i j^(-i) + O(j^(-depth-1)).

    Returns c_1..c_depth, or c_0..c_depth with ``constant=True``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if not f.is_zero() and (f.lead < 0 or f.lead.denominator != 1
                            or (f.step is not None and f.step.denominator != 1)):
        raise ValueError("f must be a power series in integral powers of q")
    if f.trunc <= depth:
        raise InsufficientPrecision(f"depth {depth} needs trunc > {depth}, have {f.trunc}")
    c0 = f[0]
    if c0 and not constant:
        raise ValueError("f does not vanish at infinity; pass constant=True")
    r = f - c0
    u = inverse_j(math.ceil(f.trunc))
    upow = u
    out = [c0] if constant else []
    for i in range(1, depth + 1):
        ci = r[i]
        out.append(ci)
        if ci:
            r = r - upow * ci
        upow = upow * u
    return out


def e4p_over_e6(trunc: Rational) -> QSeries:
    trunc = Fraction(trunc)
    return (catalog("E4", trunc).theta() / (catalog("E6", trunc) * 240)).truncate(trunc)


def atkin_target(trunc: Rational) -> QSeries:
    """E2 E4 / (E6 j)."""
    trunc = Fraction(trunc)
    t = trunc + 2
    s = catalog("E2", t) * catalog("E4", t) / (catalog("E6", t) * catalog("j", t))
    return s.truncate(trunc)


# -- quasimodular decomposition --------------------------------------------


def modular_basis(w: int) -> list[tuple[int, int]]:
    """Exponent pairs (a, b) with 4a + 6b = w, b ascending."""
    if w < 0 or w % 2:
        raise OddWeight(f"weight {w} must be even and nonnegative")
    return [((w - 6 * b) // 4, b) for b in range(w // 6 + 1) if (w - 6 * b) % 4 == 0]


def quasimodular_basis(w: int) -> list[tuple[int, int, int]]:
    """(i, a, b) with 2i + 4a + 6b = w: E2 power first, ascending."""
    if w < 0 or w % 2:
        raise OddWeight(f"weight {w} must be even and nonnegative")
    return [(i, a, b) for i in range(w // 2 + 1) for a, b in modular_basis(w - 2 * i)]


def _bareiss_solve(rows: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Exact solution of an overdetermined integer system by fraction-free elimination."""
    m, n = len(rows), len(rows[0]) if rows else 0
    A = [[_bigint(x) for x in row] + [_bigint(b)] for row, b in zip(rows, rhs)]
    prev = _bigint(1)
    for r in range(n):
        piv = next((i for i in range(r, m) if A[i][r]), None)
        if piv is None:
            raise InsufficientPrecision("q-expansion columns are not yet independent; raise trunc")
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        p = pr[r]
        for i in range(r + 1, m):
            row = A[i]
            x = row[r]
            if x:
                for j in range(r + 1, n + 1):
                    row[j] = (p * row[j] - x * pr[j]) // prev
            else:
                for j in range(r + 1, n + 1):
                    row[j] = (p * row[j]) // prev
            row[r] = 0
        prev = p
    for i in range(n, m):
        if A[i][n]:
            raise NotQuasimodular("linear system is inconsistent")
    sol = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = Fraction(int(A[r][n])) - sum(int(A[r][j]) * sol[j] for j in range(r + 1, n))
        sol[r] = s / int(A[r][r])
    return sol


@dataclass(frozen=True)
class QuasiDecomposition:
    weight: int
    parts: tuple[tuple[int, QSeries, dict], ...]   # (E2 power, modular part, {(a, b): coeff})
    trunc: Fraction = field(default=Fraction(0))

    def recombine(self, trunc: Rational | None = None) -> QSeries:
        t = Fraction(trunc) if trunc is not None else self.trunc
        e2 = catalog("E2", t)
        total = None
        for i, m, _ in self.parts:
            term = e2 ** i * m.truncate(t)
            total = term if total is None else total + term
        return total

    def coefficients(self) -> dict[tuple[int, int, int], Fraction]:
        return {(i, a, b): c for i, _, mono in self.parts for (a, b), c in mono.items()}


def _monomial_series(i: int, a: int, b: int, trunc) -> QSeries:
    return catalog("E2", trunc) ** i * catalog("E4", trunc) ** a * catalog("E6", trunc) ** b


def decompose_quasimodular(F: QSeries, w: int) -> QuasiDecomposition:
    """Write F = sum_i E2^i m_i with m_i in the span of E4^a E6^b, 4a + 6b = w - 2i."""
    basis = quasimodular_basis(w)
    if not F.is_zero() and (F.lead < 0 or F.lead.denominator != 1
                            or (F.step is not None and F.step.denominator != 1)):
        raise NotQuasimodular("F is not a power series in integral powers of q")
    rows_avail = math.ceil(F.trunc)
    dim = len(basis)
    if rows_avail < dim:
        raise InsufficientPrecision(f"{dim} unknowns need at least {dim} coefficients")
    cols = [_monomial_series(i, a, b, rows_avail) for i, a, b in basis]
    den = 1
    target = [F[e] for e in range(rows_avail)]
    for c in target:
        den = math.lcm(den, c.denominator)
    rhs_all = [int(c * den) for c in target]
    mat_all = [[int(col[e]) for col in cols] for e in range(rows_avail)]

    n_rows = min(rows_avail, dim + 10)
    while True:
        try:
            sol = _bareiss_solve(mat_all[:n_rows], rhs_all[:n_rows])
            break
        except InsufficientPrecision:
            if n_rows == rows_avail:
                raise
            n_rows = rows_avail
    sol = [s / den for s in sol]

    parts = []
    for i in range(w // 2 + 1):
        mono = {(a, b): c for (ii, a, b), c in zip(basis, sol) if ii == i and c}
        if not mono:
            continue
        m = None
        for (a, b), c in mono.items():
            term = catalog("E4", rows_avail) ** a * catalog("E6", rows_avail) ** b * c
            m = term if m is None else m + term
        parts.append((i, m, mono))
    dec = QuasiDecomposition(w, tuple(parts), Fraction(rows_avail))
    if parts:
        back = dec.recombine()
    else:
        back = F.scale(0)
    if not (back - F).is_zero():
        raise NotQuasimodular(f"recombination differs at q^{(back - F).lead}")
    return dec


def decompose_family_solution(n: int, trunc: Rational | None = None) -> QuasiDecomposition:
    """Decomposition of the weight 6n+6 quasimodular solution for k = 6n+5."""
    w = 6 * n + 6
    dim = len(quasimodular_basis(w))
    t = Fraction(trunc) if trunc is not None else Fraction(dim + 20)
    return decompose_quasimodular(quasimodular_solution(n, t), w)


# -- hypergeometric identity behind the level-2 ladder ---------------------


def _hyp_in_t(a, b, c, scale: int, top: int) -> dict[int, Fraction]:
    """2F1(a, b; c; scale*t) as {power of t: coefficient} for powers < top."""
    return {i: hyp_coefficient(a, b, c, i) * scale ** i for i in range(max(top, 0))}


def _lmul(p: dict[int, Fraction], q: dict[int, Fraction], top: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, x in p.items():
        for j, y in q.items():
            if i + j < top:
                out[i + j] = out.get(i + j, Fraction(0)) + x * y
    return out


def level2_ladder_identity(k: Rational, order: int) -> bool:
    """x^3 F(-(k+6)/4, -(k+4)/4; -(k+1)/6; 64/x) = (x^3 - 576x^2) F(-k/4, -(k-2)/4; -(k-5)/6; 64/x)
    + 432 k(k-4)/((k-5)(k+1)) (x^2 - 128x + 4096) F(-(k-6)/4, -(k-8)/4; -(k-11)/6; 64/x),
    compared as Laurent series in t = 1/x for powers t^-3 .. t^(order-1)."""
    k = Fraction(k)
    top = order
    n = top + 3
    f1 = _hyp_in_t(-(k + 6) / 4, -(k + 4) / 4, -(k + 1) / 6, 64, n)
    f2 = _hyp_in_t(-k / 4, -(k - 2) / 4, -(k - 5) / 6, 64, n)
    f3 = _hyp_in_t(-(k - 6) / 4, -(k - 8) / 4, -(k - 11) / 6, 64, n)
    K = 432 * k * (k - 4) / ((k - 5) * (k + 1))
    lhs = _lmul({-3: Fraction(1)}, f1, top)
    rhs = _lmul({-3: Fraction(1), -2: Fraction(-576)}, f2, top)
    for p, c in _lmul({-2: K, -1: -128 * K, 0: 4096 * K}, f3, top).items():
        rhs[p] = rhs.get(p, Fraction(0)) + c
    return all(lhs.get(p, 0) == rhs.get(p, 0) for p in range(-3, top))


# -- identity suite --------------------------------------------------------


def _A(t):
    return catalog("Delta4_2", t)


def _B(t):
    return catalog("E2_2", t)


def _id_delta_eta(t):
    return catalog("Delta", t), eta_expand({1: 24}, t)


def _id_e4_level2(t):
    return catalog("E4", t), _A(t) * 192 + _B(t) ** 2


def _id_serre_A(t):
    return serre(_A(t), 4), _A(t) * _B(t) * Fraction(2, 3)


def _id_serre_B(t):
    return serre(_B(t), 2), _A(t) * 32 - _B(t) ** 2 / 6


def _id_e6_level2(t):
    return catalog("E6", t), _B(t) ** 3 - _A(t) * _B(t) * 576


def _id_delta_level2(t):
    A, B = _A(t), _B(t)
    return catalog("Delta", t), A * B ** 4 - A ** 2 * B ** 2 * 128 + A ** 3 * 4096


def _id_sqrt_root(t):
    return catalog("sqrtDelta4_2", t) ** 2, _A(t)


def _id_cbrt_root(t):
    return catalog("cbrtDelta3_3", t) ** 3, catalog("Delta3_3", t)


def _id_theta3_root(t):
    return catalog("theta3_2tau", t) ** 4, catalog("E2_4", t)


def _id_theta2_root(t):
    return catalog("halftheta2_2tau", t) ** 4, catalog("Delta2_4", t)


def _id_theta2_8tau(t):
    theta2_8 = catalog("halftheta2_2tau", Fraction(t) / 4).dilate(4) * 2
    th = catalog("theta3_2tau", t)
    return theta2_8, th - catalog("theta3_2tau", Fraction(t) / 4).dilate(4)


def _dual(name):
    def check(t):
        return catalog(name, t), alternate(name, t)
    check.__name__ = f"_dual_{name}"
    return check


def _id_e2_level4_sigma(t):
    def coeff(n):
        if n == 0:
            return 1
        c = 8 * divisor_sum(n)
        return c - 32 * divisor_sum(n // 4) if n % 4 == 0 else c
    return catalog("E2_4", t), from_function(coeff, t)


def _id_e2_deriv(t):
    e2 = catalog("E2", t)
    return e2.theta(), (e2 ** 2 - catalog("E4", t)) / 12


def _id_e4_deriv(t):
    return catalog("E4", t).theta(), (catalog("E2", t) * catalog("E4", t) - catalog("E6", t)) / 3


def _id_serre_e4(t):
    return serre(catalog("E4", t), 4), catalog("E6", t) * Fraction(-1, 3)


def _id_serre_e6(t):
    return serre(catalog("E6", t), 6), catalog("E4", t) ** 2 * Fraction(-1, 2)


def _id_delta_deriv(t):
    d = catalog("Delta", t)
    return d.theta(), catalog("E2", t) * d


def _id_bracket_f5(t):
    f5 = catalog("E4", t).theta() / 240
    return rc_bracket(f5, 5, catalog("E4", t), 4), catalog("Delta", t) * -4


def _id_bracket_trivial(t):
    e4 = catalog("E4", t)
    one = QSeries([1], trunc=t)
    return rc_bracket(one, 0, e4, 4) + rc_bracket(e4, 4, e4, 4), e4.scale(0)


def _id_f11_descent(t):
    from .solutions import descend
    f11 = quasimodular_solution(1, t + 1)
    return descend(f11, 11), catalog("E4", t).theta() / 240


IDENTITIES: dict[str, Callable] = {
    "Delta = (E4^3 - E6^2)/1728 = eta^24": _id_delta_eta,
    "E4 = 192 A + B^2": _id_e4_level2,
    "d4(A) = (2/3) A B": _id_serre_A,
    "d2(B) = 32 A - B^2/6": _id_serre_B,
    "E6 = B^3 - 576 A B": _id_e6_level2,
    "Delta = A B^4 - 128 A^2 B^2 + 4096 A^3": _id_delta_level2,
    "sqrtDelta4_2^2 = Delta4_2": _id_sqrt_root,
    "cbrtDelta3_3^3 = Delta3_3": _id_cbrt_root,
    "theta3(2tau)^4 = E2_4": _id_theta3_root,
    "(theta2(2tau)/2)^4 = Delta2_4": _id_theta2_root,
    "theta2(8tau) = theta3(2tau) - theta3(8tau)": _id_theta2_8tau,
    "E2_4 = 1 + 8 sum sigma(n) q^n - 32 sum sigma(n) q^4n": _id_e2_level4_sigma,
    "E2' = (E2^2 - E4)/12": _id_e2_deriv,
    "E4' = (E2 E4 - E6)/3": _id_e4_deriv,
    "d(E4) = -E6/3": _id_serre_e4,
    "d(E6) = -E4^2/2": _id_serre_e6,
    "Delta' = E2 Delta": _id_delta_deriv,
    "[E4'/240, E4] = -4 Delta": _id_bracket_f5,
    "[1, E4] = [E4, E4] = 0": _id_bracket_trivial,
    "E4'/240 = 5/(288*11*7) [F11, E4]/Delta": _id_f11_descent,
}
for _name in ("E2_2", "Delta4_2", "sqrtDelta4_2", "Delta3_3", "cbrtDelta3_3", "Delta2_4",
              "halftheta2_2tau"):
    IDENTITIES[f"{_name}: divisor-sum recipe = second recipe"] = _dual(_name)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    through: int
    first_mismatch: Fraction | None = None

    def __str__(self):
        tail = "" if self.passed else f" (first mismatch at q^{self.first_mismatch})"
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}{tail}"


def _run_identity(args) -> IdentityResult:
    name, order = args
    lhs, rhs = IDENTITIES[name](order + 1)
    diff = lhs - rhs
    ok = diff.is_zero() and diff.trunc > order
    mismatch = None if ok else (diff.lead if not diff.is_zero() else diff.trunc)
    return IdentityResult(name, ok, order, mismatch)


def identity_suite(order: int = 200, jobs: int = 1) -> list[IdentityResult]:
    """Check every registered identity through q^order; results in registry order."""
    tasks = [(name, order) for name in IDENTITIES]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_identity, tasks))
    return [_run_identity(t) for t in tasks]


# -- lattice theta functions -----------------------------------------------

# root lattice -> (catalog form, weight k of the equation it solves)
LATTICE_FORMS = {"A1": ("theta3_2tau", Fraction(1, 2)), "A2": ("E1_3", Fraction(1)),
                 "D4": ("E2_2", Fraction(2)), "E8": ("E4", Fraction(4))}


def _norm_counts(dim: int, top: int, half: bool) -> list[int]:
    """Counts of x in Z^dim (or (Z+1/2)^dim) with even coordinate sum, by 4*|x|^2 < top."""
    # table[n][p]: vectors so far with 4|x|^2 = n and coordinate-sum parity p
    # (for half-integral x the parity is that of sum(x_i - 1/2))
    table = [[0, 0] for _ in range(top)]
    table[0][0] = 1
    r = math.isqrt(top) + 1
    vals = [(t, (2 * t + 1) ** 2) for t in range(-r, r)] if half else [(t, 4 * t * t) for t in range(-r, r + 1)]
    for _ in range(dim):
        nxt = [[0, 0] for _ in range(top)]
        for n in range(top):
            for p in (0, 1):
                c = table[n][p]
                if c:
                    for t, w in vals:
                        if n + w < top:
                            nxt[n + w][(p + t) & 1] += c
        table = nxt
    return [row[0] for row in table]


def lattice_theta(name: str, trunc: int) -> QSeries:
    """sum over lattice vectors v of q^((v,v)/2), by direct counting."""
    trunc = int(trunc)
    if name == "A1":
        counts = [0] * trunc
        for x in range(-math.isqrt(trunc), math.isqrt(trunc) + 1):
            if x * x < trunc:
                counts[x * x] += 1
    elif name == "A2":
        # (v,v)/2 = a^2 + ab + b^2
        counts = [0] * trunc
        r = 2 * math.isqrt(trunc) + 2
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                m = a * a + a * b + b * b
                if m < trunc:
                    counts[m] += 1
    elif name in ("D4", "E8"):
        dim = 4 if name == "D4" else 8
        top = 8 * trunc                       # 4|v|^2 = 8 m
        whole = _norm_counts(dim, top, False)
        half = _norm_counts(dim, top, True) if name == "E8" else [0] * top
        counts = [whole[8 * m] + half[8 * m] for m in range(trunc)]
    else:
        raise KeyError(f"unknown lattice {name!r}; known: {', '.join(LATTICE_FORMS)}")
    return QSeries(counts, trunc=trunc)


def lattice_check(name: str, through: int) -> bool:
    """Direct count agrees with the catalog form, which solves the equation at its weight."""
    form, k = LATTICE_FORMS[name]
    t = through + 1
    f = catalog(form, t)
    return lattice_theta(name, t) == f and kz_apply(f, k).vanishes
