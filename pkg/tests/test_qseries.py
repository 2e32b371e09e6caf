from fractions import Fraction

import pytest

from hypmodular.errors import InsufficientPrecision, NotDivisible, ZeroSeries
from hypmodular.qseries import (QSeries, constant, dumps, from_function, from_json_dict, loads,
                                monomial, to_json_dict, zero)

from oracles import as_dict, naive_mul

F = Fraction


def test_normalizes_leading_zeros_and_stride():
    s = QSeries([0, 0, 1, 0, 3, 0, 5], trunc=7)
    assert s.lead == 2
    assert s.step == 2
    assert s.trunc == 7
    assert s.lattice_coeffs() == [1, 3, 5]
    assert s.coeffs == [1, 0, 3, 0, 5]


def test_single_term_has_no_step():
    s = monomial(F(3, 4), F(1, 3), 5)
    assert s.step is None
    assert s[F(1, 3)] == F(3, 4)
    assert s[1] == 0


def test_zero_series_lead_equals_trunc():
    z = zero(7)
    assert z.is_zero() and z.lead == 7 and z.trunc == 7
    assert QSeries([0, 0], trunc=2) == z.truncate(2)


def test_getitem_refuses_unknown_coefficients():
    s = QSeries([1, 2, 3])
    assert s[2] == 3
    with pytest.raises(InsufficientPrecision):
        s[3]
    assert s[F(1, 2)] == 0  # off-lattice but known


def test_mul_precision_rule():
    a = QSeries([1, 1], lead=1, trunc=10)       # q + q^2 + O(q^10)
    b = QSeries([1, 2, 3], lead=0, trunc=5)     # 1 + 2q + 3q^2 + O(q^5)
    p = a * b
    assert p.trunc == min(10 + 0, 5 + 1)
    assert as_dict(p) == naive_mul(as_dict(a), as_dict(b), p.trunc)


def test_mul_long_operands_match_naive():
    # long enough to take the packed big-integer route
    a = from_function(lambda i: (-1) ** i * (i * i + 1), 60)
    b = from_function(lambda i: F(i + 1, 3), 60, lead=F(1, 2))
    p = a * b
    assert p.trunc == 60
    assert as_dict(p) == naive_mul(as_dict(a), as_dict(b), p.trunc)


def test_inverse_and_division():
    e = from_function(lambda i: 1 if i == 0 else -i, 30)
    inv = e.inv()
    assert (e * inv) == constant(1, 30)
    q_over = monomial(1, 1, 20) + from_function(lambda i: i, 20, lead=2)
    r = q_over.inv()
    assert r.lead == -1 and r.trunc == 20 - 2
    with pytest.raises(ZeroSeries):
        zero(5).inv()


def test_pow_matches_repeated_product():
    s = QSeries([1, 3, -2, 5], trunc=12)
    assert s ** 3 == s * s * s
    assert s ** 0 == constant(1, 12)
    assert (s ** -2) * s ** 2 == constant(1, 12)


def test_divide_exact():
    a = QSeries([1, 2, 1], lead=2, trunc=20)
    b = QSeries([1, 1], lead=1, trunc=20)
    q = a.divide_exact(b)
    assert q.lead == 1
    with pytest.raises(NotDivisible):
        b.divide_exact(a)


def test_theta_dilate_shift():
    s = QSeries([1, 2, 3], lead=F(1, 2), trunc=F(7, 2))
    assert as_dict(s.theta()) == {F(1, 2): F(1, 2), F(3, 2): 3, F(5, 2): F(15, 2)}
    d = s.dilate(2)
    assert d.lead == 1 and d.step == 2 and d.trunc == 7
    assert s.shift(F(-1, 2)).lead == 0


def test_add_uses_min_trunc():
    a = QSeries([1, 1], trunc=10)
    b = QSeries([1], lead=F(1, 3), trunc=4)
    c = a + b
    assert c.trunc == 4
    assert as_dict(c) == {0: 1, 1: 1, F(1, 3): 1}
    assert c.step == F(1, 3)


def test_equality_is_content_based():
    a = QSeries([1, 0, 2], trunc=5)
    b = from_function(lambda i: [1, 0, 2, 0, 0][i], 5)
    assert a == b and hash(a) == hash(b)
    assert a != a.truncate(4)


def test_immutable():
    s = QSeries([1])
    with pytest.raises(AttributeError):
        s.foo = 1


def test_json_wire_format():
    s = QSeries([1, F(-1, 2)], lead=F(1, 4), step=F(1, 2), trunc=F(5, 4))
    d = to_json_dict(s)
    assert d == {"exp_den": "4", "lead_exp": "1", "trunc": "5",
                 "coeffs": [["1", "1"], ["0", "1"], ["-1", "2"], ["0", "1"]]}
    assert from_json_dict(d) == s
    assert loads(dumps(s, exp_den=24)) == s
    with pytest.raises(ValueError):
        to_json_dict(s, exp_den=6)


def test_json_big_integers_as_strings():
    big = 10 ** 60 + 7
    s = QSeries([big], trunc=1)
    assert to_json_dict(s)["coeffs"] == [[str(big), "1"]]
    assert loads(dumps(s))[0] == big


def test_format():
    s = QSeries([1, -24, 252], lead=1, trunc=4)
    assert s.format() == "q - 24*q^2 + 252*q^3 + O(q^4)"


def test_subtracting_a_series_from_itself():
    # both operands are the same object; only the second may be negated
    for s in (QSeries([1]), QSeries([1, 2], lead=F(1, 3), trunc=3)):
        assert (s - s).is_zero()
        assert s + s == s * 2
