import mpmath
import pytest

import zsigff

SAMPLE = dict(p=5, A="-t^2", B="t^2", P="(t,t)")


def test_kinds():
    assert {"zsigmondy", "growth", "criterion_table", "demo_supersingular"} <= set(zsigff.kinds())


def test_zsigmondy_scan():
    rep = zsigff.zsigmondy(n_max=12, **SAMPLE)
    assert rep["passed"]
    recs = rep["result"]["records"]
    assert [r["degree"] for r in recs] == [0, 0, 1, 2, 4, 5, 8, 10, 13, 16, 20, 23]
    assert rep["result"]["last_nonprimitive"] == 2
    assert recs[2]["new_support"] == ["t + 2"]


def test_verify_round_trip():
    rep = zsigff.seq(n_max=5, **SAMPLE)
    out = zsigff.verify(rep)
    assert out["ok"] and out["passed"]


def test_parse_error():
    with pytest.raises(zsigff.ParseError, match="offset 2"):
        zsigff.seq(p=5, A="t^^2", B="t^2", P="(t,t)")


def test_off_curve():
    with pytest.raises(zsigff.DomainError):
        zsigff.seq(p=5, A="-t^2", B="t^2", P="(t,0)")


@pytest.mark.parametrize(
    "p,r,ref", [(0, 2, 0.3949), (7, 4, 0.4956), (7, 3, 0.5581), (13, 3, 0.4209), (13, 2, 0.5320)]
)
def test_closed_bound_against_mpmath(p, r, ref):
    mpmath.mp.dps = 40
    z = mpmath.zeta(2)
    want = (z if p == 0 else z * mpmath.mpf(p) / (p - 1)) - sum(mpmath.mpf(1) / i**2 for i in range(1, r + 1))
    assert abs(float(want) - ref) < 1e-3
    rows = zsigff.criterion_table(p_list=[p], r_max=max(r, 2))["result"]["rows"]
    assert rows[0]["admissible"][r - 2] == (want < 0.5)


def test_table():
    rep = zsigff.criterion_table(p_list=[0, 5, 7, 11, 13, 17], r_max=12)
    assert rep["passed"]
    assert [row["summary"] for row in rep["result"]["rows"]] == [
        ">= 2", "5 or >= 10", ">= 4", ">= 3", ">= 3", ">= 2"]


def test_criterion_sum():
    res = zsigff.criterion_sum(25, 5, 2)["result"]
    assert res["divisor_set"] == [5, 25]
    assert res["sum"]["value"] == "6/25"


def test_demo():
    rep = zsigff.demo_supersingular(5, l_max=2)
    assert rep["passed"]
    assert all(lv["contained"] for lv in rep["result"]["levels"])


def test_growth_and_factor():
    rep = zsigff.growth(place="t + 1", n_max=8, **SAMPLE)
    assert rep["result"]["m"] == 4 and rep["result"]["mismatches"] == 0
    fac = zsigff.factor(5, "t^2 + 1")["result"]
    assert fac is not None
    assert zsigff.valuation(0, "t + 1", "1/(t^2+2*t+1)")["result"]["valuation"] == -2


def test_char_zero():
    rep = zsigff.heights(p=0, A="-t^2", B="t^2", P="(t,t)", n_max=8)
    assert rep["passed"]
