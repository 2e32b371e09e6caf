"""Independent reference implementations used as test oracles.

Everything here is deliberately naive: dict-of-exponent series, trial
division divisor sums and term-by-term products, so it shares no code
path with the library.
"""

from fractions import Fraction

# coefficients printed in the source displays (exponent -> coefficient)
PRINTED = {
    "E4": {0: 1, 1: 240, 2: 2160, 3: 6720},
    "E6": {0: 1, 1: -504, 2: -16632, 3: -122976},
    "Delta": {1: 1, 2: -24, 3: 252, 4: -1472},
    "j": {-1: 1, 0: 744, 1: 196884, 2: 21493760},
    "eta": {Fraction(1, 24): 1, Fraction(25, 24): -1, Fraction(49, 24): -1,
            Fraction(73, 24): 0, Fraction(97, 24): 0, Fraction(121, 24): 1},
    "E2_2": {0: 1, 1: 24, 2: 24, 3: 96},
    "Delta4_2": {1: 1, 2: 8, 3: 28, 4: 64},
    "j_2": {-1: 1, 0: 40, 1: 276, 2: -2048},
    "sqrtDelta4_2": {Fraction(1, 2): 1, Fraction(3, 2): 4, Fraction(5, 2): 6, Fraction(7, 2): 8},
    "E1_3": {0: 1, 1: 6, 2: 0, 3: 6, 4: 6},
    "Delta3_3": {1: 1, 2: 3, 3: 9, 4: 13},
    "j_3": {-1: 1, 0: 15, 1: 54, 2: -76},
    "cbrtDelta3_3": {Fraction(1, 3): 1, Fraction(4, 3): 1, Fraction(7, 3): 2,
                     Fraction(10, 3): 0, Fraction(13, 3): 2},
    "E2_4": {0: 1, 1: 8, 2: 24, 3: 32, 4: 24},
    "Delta2_4": {1: 1, 2: 0, 3: 4, 4: 0, 5: 6, 6: 0, 7: 8},
    "j_4": {-1: 1, 0: 8, 1: 20, 2: 0, 3: -62, 4: 0, 5: 216},
    "theta3_2tau": {0: 1, 1: 2, 2: 0, 3: 0, 4: 2, 5: 0, 8: 0, 9: 2},
    "halftheta2_2tau": {Fraction(1, 4): 1, Fraction(5, 4): 0, Fraction(9, 4): 1,
                        Fraction(25, 4): 1, Fraction(49, 4): 1},
}

# printed polynomials, coefficient lists in ascending degree
PRINTED_P = {2: [462, 0, 1], 3: [0, 904, 0, 1], 4: [201894, 0, 1341, 0, 1]}
PRINTED_Q = {2: [0, 1], 3: [442, 0, 1], 4: [0, 879, 0, 1]}


def sigma(n, r=1):
    return sum(d ** r for d in range(1, n + 1) if n % d == 0)


def chi3(d):
    return (0, 1, -1)[d % 3]


def naive_mul(a, b, trunc):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e < trunc:
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def naive_pow(a, n, trunc):
    out = {Fraction(0): Fraction(1)}
    for _ in range(n):
        out = naive_mul(out, a, trunc)
    return out


def as_dict(s):
    return {e: c for e, c in s.terms()}


def eta_product(factors, n):
    """prod_m prod_k (1 - q^(mk))^e_m as a dict of integer exponents < n, by
    multiplying factor by factor (negative e via the geometric series)."""
    out = {0: 1}
    for m, e in factors.items():
        for k in range(1, n):
            step = m * k
            if step >= n:
                break
            for _ in range(abs(e)):
                if e > 0:
                    nxt = dict(out)
                    for x, c in out.items():
                        if x + step < n:
                            nxt[x + step] = nxt.get(x + step, 0) - c
                else:
                    # multiply by 1/(1 - q^step) = sum q^(t*step)
                    nxt = {}
                    for x in sorted(out):
                        c = out[x]
                        y = x
                        while y < n:
                            nxt[y] = nxt.get(y, 0) + c
                            y += step
                out = {x: c for x, c in nxt.items() if c}
    return out


def hyp_term(a, b, c, i):
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    num = Fraction(1)
    for t in range(i):
        num *= (a + t) * (b + t) / ((c + t) * (t + 1))
    return num


def apply_kz_naive(f, k, trunc):
    """Residual of the equation on a dict series with E2 built from sigma."""
    k = Fraction(k)
    e2 = {Fraction(0): Fraction(1)}
    for n in range(1, int(trunc) + 2):
        e2[Fraction(n)] = Fraction(-24 * sigma(n))
    df = {e: e * c for e, c in f.items()}
    ddf = {e: e * c for e, c in df.items()}
    de2 = {e: e * c for e, c in e2.items()}
    out = dict(ddf)
    for e, c in naive_mul(e2, df, trunc).items():
        out[e] = out.get(e, 0) - (k + 1) / 6 * c
    for e, c in naive_mul(de2, f, trunc).items():
        out[e] = out.get(e, 0) + k * (k + 1) / 12 * c
    return {e: c for e, c in out.items() if c and e < trunc}
