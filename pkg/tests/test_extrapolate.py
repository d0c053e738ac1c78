from fractions import Fraction

import pytest

from models.family import LadderReport
from utils.errors import InputContractError, LadderError
from utils.extrapolate import extrapolate, extrapolate_family, extrapolate_minor_flow, richardson
from utils.fluctuations import fluctuations_from_inf_moments
from utils.registry import get_family, principal_minor_flow


def test_richardson_removes_the_first_order_term():
    # Δ(d) = 3 + 2/d
    delta = lambda d: 3 + Fraction(2, d)
    assert richardson(10, delta(10), 20, delta(20)) == 3
    with pytest.raises(LadderError):
        richardson(4, Fraction(1), 4, Fraction(1))


@pytest.mark.parametrize("alpha,atoms,quantity", [
    (0, [1], "moments"),
    (Fraction(1, 2), [2, -1], "moments"),
    (-1, [0, 0, 3], "moments"),
    (0, [1], "cumulants"),
    (2, [-1], "cumulants"),
])
def test_point_mass_perturbation_is_exact(alpha, atoms, quantity):
    f = get_family("dirac_perturbation", alpha=alpha, atoms=atoms)
    reports = extrapolate_family(f, 6, [8, 16, 32], quantity)
    assert [r.n for r in reports] == [1, 2, 3, 4, 5, 6]
    for report in reports:
        n = report.n
        if quantity == "moments":
            expected = sum(Fraction(a) ** n - Fraction(alpha) ** n for a in atoms)
        else:
            expected = sum((a - alpha) ** n for a in atoms)
        assert all(delta == expected for _, delta in report.ladder)
        assert report.predicted == expected
        assert report.abs_error == 0


def test_hermite_cumulants_do_not_move():
    reports = extrapolate_family(get_family("hermite"), 4, [16, 32], "cumulants")
    assert all(r.richardson == 0 and r.abs_error == 0 for r in reports)


def test_hermite_moments():
    reports = extrapolate_family(get_family("hermite"), 4, [128, 256, 512])
    assert reports[3].predicted == -5
    assert abs(reports[3].richardson + 5) < Fraction(1, 10000)
    assert reports[1].richardson == -1


def test_hermite_ladders_agree_through_the_dictionary():
    f = get_family("hermite")
    law = f.meta(4).law
    # m_2 = 1 − 1/d and m_4 = 2 − 5/d + 3/d², so two rungs are exact
    mprime = [r.richardson for r in extrapolate_family(f, 4, [16, 32])]
    rhat = [r.richardson for r in extrapolate_family(f, 4, [16, 32], "cumulants")]
    assert mprime == [0, -1, 0, -5]
    assert fluctuations_from_inf_moments(law, mprime) == tuple(rhat) == (0, 0, 0, 0)


def test_bernoulli_ladders_agree_through_the_dictionary():
    f = get_family("bernoulli")
    meta = f.meta(4)
    mprime = [r.richardson for r in extrapolate_family(f, 4, [64, 128])]
    assert mprime == [0, 0, 0, 0]
    predicted = fluctuations_from_inf_moments(meta.law, mprime)
    assert predicted == meta.fluct.rhat == (0, 1, 0, -5)
    for report, target in zip(extrapolate_family(f, 4, [64, 128], "cumulants"), predicted):
        assert abs(report.richardson - target) < Fraction(1, 20)


@pytest.mark.slow
def test_laguerre_inverse_cumulant_fluctuation():
    reports = extrapolate_family(get_family("laguerre_inverse"), 2, [100, 200], "cumulants")
    assert abs(reports[1].richardson + 1) < Fraction(1, 10000)


def test_workers_do_not_change_results():
    f = get_family("bernoulli")
    one = extrapolate_family(f, 4, [16, 32, 64], workers=1)
    many = extrapolate_family(f, 4, [16, 32, 64], workers=3)
    assert [r.to_dict() for r in one] == [r.to_dict() for r in many]


def test_ladder_checks():
    f = get_family("hermite")
    with pytest.raises(LadderError):
        extrapolate_family(f, 2, [32])
    with pytest.raises(LadderError):
        extrapolate_family(f, 2, [32, 16])
    with pytest.raises(LadderError):
        extrapolate_family(f, 6, [4, 8])
    with pytest.raises(LadderError):
        extrapolate_family(get_family("bernoulli"), 2, [8, 15])
    with pytest.raises(InputContractError):
        extrapolate_family(f, 2, [8, 16], "entropy")


def test_minor_flow_of_shifted_power():
    flow = principal_minor_flow(get_family("dirac_perturbation", alpha=1, atoms=[]), 2)
    reports = extrapolate(flow, 3, [8, 16, 32])
    for report in reports:
        assert report.quantity == "minor_flow"
        assert all(delta == -2 for _, delta in report.ladder)
        assert report.predicted == -2
        assert report.abs_error == 0


def test_minor_flow_ladder_must_clear_s():
    flow = principal_minor_flow(get_family("hermite"), 3)
    with pytest.raises(LadderError):
        extrapolate_minor_flow(flow, 4, [6, 12])


def test_report_rows():
    report = LadderReport(2, "moments", [(8, Fraction(1, 2)), (16, Fraction(3, 4))], [Fraction(1)],
                          Fraction(1), Fraction(1), Fraction(0))
    rows = report.rows()
    assert rows[0] == [2, 8, "1/2", "", "1", ""]
    assert rows[1] == [2, 16, "3/4", "1", "1", "0"]
    assert report.to_dict()["steps"] == ["1"]
