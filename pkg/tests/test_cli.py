import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hypmodular.cli import dispatch
from hypmodular.forms import catalog
from hypmodular.qseries import from_json_dict


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_e4(capsys):
    code, out, _ = run(capsys, "expand", "E4", "--terms", "4")
    assert code == 0 and out == "1, 240, 2160, 6720\n"


def test_expand_shows_lead_and_zeros(capsys):
    _, out, _ = run(capsys, "expand", "Delta2_4", "--terms", "5")
    assert out == "q^1: 1, 0, 4, 0, 6\n"
    _, out, _ = run(capsys, "expand", "j", "--terms", "3")
    assert out == "q^-1: 1, 744, 196884\n"


def test_expand_json_round_trip(capsys):
    _, out, _ = run(capsys, "expand", "sqrtDelta4_2", "--terms", "6", "--json")
    s = from_json_dict(json.loads(out))
    assert s == catalog("sqrtDelta4_2", Fraction(13, 2))


def test_expand_csv(capsys):
    _, out, _ = run(capsys, "expand", "halftheta2_2tau", "--terms", "3", "--format", "csv",
                    "--exp-den", "24")
    assert out.splitlines() == ["exp_num,exp_den,coeff_num,coeff_den",
                                "6,24,1,1", "30,24,0,1", "54,24,1,1"]


def test_solve_quasi_verify(capsys):
    code, out, _ = run(capsys, "solve", "--k", "11", "--kind", "quasi", "--verify", "--terms", "50")
    assert code == 0 and out.startswith("q^2: -462, -25872,")


def test_solve_none_known(capsys):
    code, _, err = run(capsys, "solve", "--k", "3/2", "--kind", "normalized")
    assert code == 1 and "NoneKnown" in err


def test_usage_errors():
    for argv in (["solve", "--k", "1.5"], ["expand", "E8"], ["solve"], ["nosuch"],
                 ["expand", "E4", "--terms", "0"]):
        with pytest.raises(SystemExit) as exc:
            dispatch(argv)
        assert exc.value.code == 2


def test_domain_error_names(capsys):
    code, _, err = run(capsys, "oracle", "--k", "5", "--branch", "zero")
    assert code == 1 and err.startswith("Resonant:")
    code, _, err = run(capsys, "solve", "--k", "12", "--kind", "cuspidal")
    assert code == 1 and err.startswith("UnsupportedClass:")
    code, _, err = run(capsys, "solve", "--k", "-6")
    assert code == 1 and err.startswith("NegativeWeight:")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--k", "7/2", "--family", "cuspidal", "--terms", "30")
    assert code == 0 and "verified: True" in out
    code, out, _ = run(capsys, "verify", "--k", "8", "--json", "--terms", "20")
    assert code == 0 and json.loads(out)["verified"] is True


def test_ladder(capsys):
    code, out, _ = run(capsys, "ladder", "--k", "5", "--kind", "quasi", "--steps", "2",
                       "--verify", "--terms", "5")
    assert code == 0
    assert "k=11  mu=462  residual_vanishes=True" in out
    code, out, _ = run(capsys, "ladder", "--k", "0", "--steps", "1", "--json", "--terms", "5")
    rungs = json.loads(out)
    assert [r["weight"] for r in rungs] == ["0", "6"]
    e6 = from_json_dict(rungs[1]["series"])
    assert e6 == catalog("E6", e6.trunc)


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--k", "2", "--branch", "cusp", "--terms", "5", "--verify")
    assert code == 0 and out == "q^1/2: 1, 4, 6, 8, 13\n"


def test_positivity(capsys):
    code, out, _ = run(capsys, "positivity", "--k", "14", "--terms", "100")
    assert code == 0 and "status: AllPositive" in out
    code, out, _ = run(capsys, "positivity", "--k", "1", "--terms", "20", "--json")
    assert code == 1 and json.loads(out)["first_nonpositive"] == "10/3"


def test_cf(capsys):
    _, out, _ = run(capsys, "cf", "--target", "e4p-over-e6", "--depth", "3")
    assert out == "1, 1266, 1806960\n"
    _, out, _ = run(capsys, "cf", "--target", "atkin", "--depth", "3", "--json")
    assert json.loads(out) == [["1", "1"], ["720", "1"], ["911520", "1"]]


def test_decompose(capsys):
    _, out, _ = run(capsys, "decompose", "--n", "0")
    assert out == "(-1/720)*E6 + (1/720)*E2*E4\n"
    _, out, _ = run(capsys, "decompose", "--n", "0", "--format", "csv")
    assert out.splitlines()[0] == "e2_power,e4_power,e6_power,coeff_num,coeff_den"


def test_suite(capsys):
    code, out, _ = run(capsys, "suite", "--order", "30")
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 20


def test_deterministic_output(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "solve", "--k", "13/2", "--kind", "cuspidal", "--json", "--terms", "40")
        outs.append(out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hypmodular", "expand", "E4", "--terms", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1, 240, 2160, 6720\n"
