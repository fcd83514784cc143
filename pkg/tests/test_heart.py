from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from abelstab.chern import ChernVector
from abelstab.heart import (
    F0,
    T0,
    HeartCase,
    HNInterval,
    SlopeKind,
    bg_reduction_ledger,
    classify_heart,
    interval,
    interval_member,
    sc_candidate,
    tilt_zero_cohomology_bounds,
)
from abelstab.numerics import DISTINGUISHED, bg_type
from abelstab.scalar import PLUS_INFINITY, ExtSlope

C = ChernVector.of
F = Fraction
P = DISTINGUISHED


@pytest.mark.parametrize(
    "v, case",
    [
        ((0, 0, 0, 1), HeartCase.POINT_LIKE),
        ((0, 0, 0, -1), HeartCase.INCONSISTENT),
        ((0, 0, 1, 0), HeartCase.TORSION_LIKE),
        ((-1, 0, 0, 0), HeartCase.POSITIVE_CH1B),
        ((1, 1, 1, 1), HeartCase.POSITIVE_CH1B),
        ((1, 0, 0, 0), HeartCase.INCONSISTENT),
        ((2, 1, 0, 0), HeartCase.INCONSISTENT),
        ((2, 1, 2, 0), HeartCase.TORSION_LIKE),
    ],
)
def test_classify_examples(v, case):
    assert classify_heart(C(*v), P) is case


def test_classify_zero_rejected():
    with pytest.raises(ValueError):
        classify_heart(ChernVector(), P)


def test_trichotomy_is_exhaustive():
    r = range(-3, 4)
    for e in itertools.product(r, repeat=4):
        if not any(e):
            continue
        v = C(*e)
        case = classify_heart(v, P)
        d = 6 * P.alpha_sq * (v.a1 - P.beta * v.a0)
        assert (case is HeartCase.POSITIVE_CH1B) == (d > 0)
        if d < 0:
            assert case is HeartCase.INCONSISTENT


@given(st.integers(1, 10**6))
def test_points_are_point_like(n):
    assert classify_heart(C(0, 0, 0, n), P) is HeartCase.POINT_LIKE


def test_intervals():
    assert T0.contains(PLUS_INFINITY) and not T0.contains(ExtSlope(0))
    assert F0.contains(ExtSlope(0)) and not F0.contains(PLUS_INFINITY)
    iv = HNInterval.parse("(0,+inf]")
    assert iv == T0 and str(iv) == "(0,+inf]"
    assert HNInterval.parse("[-1,0]") == interval(-1, 0)
    assert HNInterval.parse("(-inf,-1/2]").contains(ExtSlope(F(-1, 2)))
    for bad in ["0,1", "[1,0]", "(a,b)", "[0;1]"]:
        with pytest.raises(ValueError):
            HNInterval.parse(bad)


def test_interval_member():
    # mu_twisted of O at (3/4, 1/2) is -9/4
    assert interval_member(C(1, 0, 0, 0), F0)
    assert not interval_member(C(1, 0, 0, 0), T0)
    assert interval_member(C(1, 1, 1, 1), T0)
    assert interval_member(C(0, 1, 0, 0), T0)
    assert interval_member(C(1, 0, 0, 0), F0, which=SlopeKind.MU, p=None)
    assert interval_member(C(1, 1, 0, 0), interval(F(1, 2), 1), which=SlopeKind.MU, p=None)
    with pytest.raises(ValueError):
        interval_member(C(1, 0, 0, 0), F0, which=SlopeKind.NU, p=None)


def test_sc_candidate():
    assert sc_candidate(C(-1, 0, 0, 0), P)
    assert sc_candidate(C(1, 1, 1, 1), P)
    assert not sc_candidate(C(1, 2, 3, 4), P)
    assert not sc_candidate(C(0, 0, 0, 1), P)
    assert not sc_candidate(ChernVector(), P)


@pytest.mark.parametrize(
    "v, F_, delta, tb",
    [
        ((1, 2, 2, 3), (2, 1, 1, -1), 2, 0),
        ((-1, 0, 0, 0), (1, 1, 1, 1), 1, 1),
        ((1, 1, 1, 1), (0, 0, 0, -1), 1, 0),
    ],
)
def test_ledger_examples(v, F_, delta, tb):
    led = bg_reduction_ledger(C(*v))
    assert led.F == C(*F_)
    assert led.delta == delta and led.twoB1minusB0 == tb and led.bg_equiv


small = st.integers(-30, 30)


@given(small, small, small)
def test_ledger_invariants(a0, a1, a3):
    v = C(a0, a1, a1, a3)
    led = bg_reduction_ledger(v)
    assert led.F.a0 == a3 - a0 and led.F.a1 == led.F.a2 == a1 - a0
    assert led.delta == -a0 + 3 * a1 - a3
    assert led.bg_equiv
    assert bg_type(v, P) == (led.delta > 0)


def test_ledger_precondition():
    with pytest.raises(ValueError):
        bg_reduction_ledger(C(1, 2, 3, 4))


def test_ledger_json():
    assert bg_reduction_ledger(C(1, 2, 2, 3)).to_json() == {
        "F": [2, 1, 1, -1],
        "delta": "2",
        "twoB1minusB0": "0",
        "bg_equiv": True,
    }


def test_tilt_zero_cohomology_bounds():
    assert tilt_zero_cohomology_bounds(C(1, 0, 0, 0), C(1, 1, 1, 1)) == []
    assert tilt_zero_cohomology_bounds(None, None) == []
    assert tilt_zero_cohomology_bounds(C(1, 1, 0, 0), None) == ["H^-1: l^2 ch_1 must be <= 0"]
    assert len(tilt_zero_cohomology_bounds(C(1, 0, 1, 0), None)) == 1
    assert tilt_zero_cohomology_bounds(None, C(2, 0, 0, 0)) == ["H^0: l^2 ch_1 must be >= 2 b l^3 ch_0"]
    # on the edge a1 = a0 but ch_1^2 != 2 ch_0 ch_2
    assert len(tilt_zero_cohomology_bounds(None, C(1, 1, 0, 0))) == 1
