from fractions import Fraction

import pytest

from hypmodular.errors import (ForbiddenWeight, IndicialDegenerate, MuUndefined, NegativeWeight,
                               NoneKnown, NotDivisible, Resonant, SeedInconsistent,
                               UnsupportedBeta, UnsupportedClass)
from hypmodular.forms import catalog
from hypmodular.operators import kz_apply
from hypmodular.qseries import QSeries, constant, zero
from hypmodular.solutions import (PolyQ, ResidueClass, ascend_ladder, check_contract,
                                  classify_weight, descend, frobenius_solve, hyp_coefficient,
                                  indicial_roots, known_solution, ladder_seed, lam, mu, pochhammer,
                                  pq_polynomials, quasimodular_solution, solve_cuspidal,
                                  solve_normalized, twist_alpha, verify_delta_twist,
                                  verify_family)

from oracles import PRINTED_P, PRINTED_Q, apply_kz_naive, as_dict, hyp_term

F = Fraction
T = 40


@pytest.mark.parametrize("k,cls", [
    (0, "Lvl1"), (4, "Lvl1"), (6, "Lvl1"), (10, "Lvl1"), (2, "Lvl2"), (8, "Lvl2"),
    (1, "Lvl3"), (3, "Lvl3"), (9, "Lvl3"), (5, "Quasi"), (11, "Quasi"),
    (F(1, 2), "Lvl4"), (F(7, 2), "Lvl4"), (F(3, 2), "NoneKnown"), (F(5, 2), "NoneKnown"),
    (F(9, 2), "NoneKnown"),
])
def test_classify(k, cls):
    assert classify_weight(k) is ResidueClass(cls)


def test_classify_rejects_negative():
    with pytest.raises(NegativeWeight):
        classify_weight(-6)


def test_pochhammer_and_hyp_coefficient():
    assert pochhammer(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2)
    assert pochhammer(-2, 3) == 0
    for i in range(6):
        assert hyp_coefficient(F(-7, 12), F(-1, 4), F(-1, 3), i) == hyp_term(F(-7, 12), F(-1, 4), F(-1, 3), i)


@pytest.mark.parametrize("k,form", [(0, None), (4, "E4"), (6, "E6"), (2, "E2_2"), (1, "E1_3"),
                                    (F(1, 2), "theta3_2tau")])
def test_small_normalized_solutions(k, form):
    f = solve_normalized(k, T)
    want = constant(1, T) if form is None else catalog(form, T)
    assert f == want


def test_normalized_e4e6_at_10():
    assert solve_normalized(10, T) == catalog("E4", T) * catalog("E6", T)


@pytest.mark.parametrize("k,form", [(2, "sqrtDelta4_2"), (1, "cbrtDelta3_3"),
                                    (F(1, 2), "halftheta2_2tau")])
def test_small_cuspidal_solutions(k, form):
    assert solve_cuspidal(k, T) == catalog(form, T)


@pytest.mark.parametrize("k", [12, 16, 8, 14, 3, 7, 9, F(7, 2), F(13, 2)])
def test_families_against_naive_operator(k):
    t = 18
    for fam in ("normalized", "cuspidal"):
        try:
            f = known_solution(k, t, fam)
        except UnsupportedClass:
            continue
        assert apply_kz_naive(as_dict(f), k, t) == {}


@pytest.mark.parametrize("k", [F(3, 2), F(5, 2), F(9, 2), F(11, 2)])
def test_none_known(k):
    with pytest.raises(NoneKnown) as err:
        solve_normalized(k, 10)
    assert "NoneKnown" in str(err.value)
    with pytest.raises(NoneKnown):
        solve_cuspidal(k, 10)


def test_level_one_has_no_cuspidal_generator():
    with pytest.raises(UnsupportedClass):
        solve_cuspidal(12, 10)
    with pytest.raises(UnsupportedClass):
        solve_normalized(11, 10)


def test_lambda_and_polynomials():
    assert lam(1) == 12 * 7 * 11 / F(2)
    for n, coeffs in PRINTED_P.items():
        assert pq_polynomials(n)[0].coeffs == tuple(coeffs)
    for n, coeffs in PRINTED_Q.items():
        assert pq_polynomials(n)[1].coeffs == tuple(coeffs)
    p, q = pq_polynomials(0)
    assert p == PolyQ((1,)) and q.degree < 0


def test_polynomial_parity():
    for n in range(12):
        p, q = pq_polynomials(n)
        assert p.parity() == n % 2
        if n:
            assert q.parity() == (n + 1) % 2


def test_f5_and_f11():
    e4 = catalog("E4", T)
    f5 = e4.theta() / 240
    assert quasimodular_solution(0, T) == f5
    f11 = catalog("E6", T) * f5 - catalog("Delta", T)
    assert quasimodular_solution(1, T) == f11
    # the q terms cancel: F11 = -462 q^2 - 25872 q^3 - ...
    assert f11.lead == 2 and f11[2] == -462 and f11[3] == -25872


@pytest.mark.parametrize("n", range(6))
def test_quasimodular_residual(n):
    k = 6 * n + 5
    assert kz_apply(quasimodular_solution(n, 60), k).vanishes


def test_descend_examples():
    f11 = quasimodular_solution(1, T + 1)
    assert descend(f11, 11) == catalog("E4", T).theta() / 240
    assert descend(catalog("E6", T + 1), 6) == constant(1, T)
    for k in (0, 4, 5):
        with pytest.raises(ForbiddenWeight):
            descend(catalog("E4", T), k)


def test_descend_rejects_non_solution():
    with pytest.raises(NotDivisible):
        # [F, E4]/Delta would start at q^(-1/2), not an exponent of weight 2
        descend(QSeries([1, 1], lead=F(1, 2), trunc=T), 8)


def test_mu():
    assert mu(11, 0) == 462
    assert mu(5, 1) == 462
    with pytest.raises(MuUndefined):
        mu(5, 0)
    with pytest.raises(MuUndefined):
        mu(-1, 0)


def test_ladder_from_one():
    st = ascend_ladder(0, constant(1, T), None, 3)
    assert st.series(6) == catalog("E6", T)
    for w, s in st.rungs:
        assert s == solve_normalized(w, T).truncate(s.trunc)


def test_ladder_quasi_seed():
    f5 = quasimodular_solution(0, T)
    st = ascend_ladder(5, f5, constant(1, T), 4, mu0=-1, verify=True)
    assert st.series(11) == quasimodular_solution(1, T).truncate(st.series(11).trunc)
    assert st.verified
    for w, s in st.rungs[2:]:
        ref = quasimodular_solution((int(w) - 5) // 6, T)
        assert s * ref.leading_coefficient() == (ref * s.leading_coefficient()).truncate(s.trunc)


def test_ladder_seed_inconsistent():
    with pytest.raises(SeedInconsistent):
        ascend_ladder(2, catalog("E2_2", T), None, 2)


def test_ladder_seed_partner():
    f2 = catalog("E2_2", T)
    st = ascend_ladder(2, f2, ladder_seed(2, f2), 3, verify=True)
    assert st.verified
    assert st.series(8) == solve_normalized(8, T).truncate(st.series(8).trunc)
    assert ladder_seed(4, catalog("E4", T)) is None


def test_indicial_and_frobenius():
    assert indicial_roots(5) == (0, 1)
    assert frobenius_solve(4, "zero", T) == catalog("E4", T)
    assert frobenius_solve(5, "cusp", T) == (catalog("E4", T).theta() / 240)
    assert frobenius_solve(2, "cusp", T) == catalog("sqrtDelta4_2", T)
    with pytest.raises(Resonant):
        frobenius_solve(11, "zero", T)
    with pytest.raises(IndicialDegenerate):
        frobenius_solve(-1, "zero", T)
    with pytest.raises(ValueError):
        frobenius_solve(4, "sideways", T)


def test_frobenius_solves_naive_equation():
    for k in (F(3, 2), F(5, 2), 7):
        f = frobenius_solve(k, "zero", 15)
        assert apply_kz_naive(as_dict(f), k, 15) == {}


def test_twist():
    assert twist_alpha(4, 1) == -1 - F(5, 6)
    for k, beta in ((4, 1), (0, 1), (2, F(1, 2)), (1, F(1, 4))):
        assert verify_delta_twist(k, beta, 30)
    with pytest.raises(UnsupportedBeta):
        verify_delta_twist(4, F(1, 48), 10)


def test_verify_family_report():
    rep = verify_family(F(7, 2), "cuspidal", 50)
    assert rep.verified and rep.leading_exponent == F(3, 4)
    d = rep.to_dict()
    assert d["normalization"] == "q^((k+1)/6)+O(q^((k+7)/6))"
    assert "verified: True" in rep.to_text()
    rep = verify_family(17, "quasi", 30)
    assert rep.verified and rep.leading_exponent == 3


def test_check_contract():
    ok, _ = check_contract(catalog("E4", 10), 4, "normalized")
    assert ok
    ok, _ = check_contract(catalog("E4", 10) * 2, 4, "normalized")
    assert not ok
    ok, _ = check_contract(zero(5), 4, "cuspidal")
    assert not ok
