from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracles
from abelstab.chern import PSI, PSI_HAT, ChernVector, apply
from abelstab.numerics import (
    DISTINGUISHED,
    StabilityParams,
    bg_classical,
    bg_type,
    central_charge,
    discriminant,
    im_z_over_alpha,
    imz_at_distinguished,
    omega_sq_ch1,
    slope_mu,
    slope_mu_twisted,
    slope_report,
    tilt_slope,
    tilt_slope_over_alpha,
    twist_B,
)
from abelstab.scalar import PLUS_INFINITY, SQRT3, ExactComplex, QuadScalar

C = ChernVector.of
F = Fraction
P = DISTINGUISHED
small = st.integers(-50, 50)
vectors = st.builds(ChernVector, small, small, small, small).filter(lambda v: not v.is_zero())
# alpha^2 values whose square root lies in Q(sqrt 3)
alpha_sqs = st.sampled_from([F(3, 4), F(1, 4), F(1), F(3), F(4, 9), F(1, 12), F(27, 16)])
betas = st.fractions(min_value=-3, max_value=3, max_denominator=8)


def test_frozen_oracle_values():
    assert central_charge(C(1, 2, 3, 4), P) == ExactComplex(F(5, 2), F(3, 2) * SQRT3)
    assert central_charge(C(3, 0, 0, 0), P) == ExactComplex(-3, 0)
    assert discriminant(C(1, 2, 3, 4), P) == F(81, 4)
    assert discriminant(C(1, 0, 0, 0), P) == 0
    assert discriminant(C(1, 1, 1, 1), P) == 0


def test_twist_examples():
    assert twist_B(C(1, 0, 0, 0), F(1, 2)) == C(1, F(-1, 2), F(1, 4), F(-1, 8))
    assert twist_B(C(1, 1, 1, 1), F(1, 2)) == C(1, F(1, 2), F(1, 4), F(1, 8))


def _as_sympy(z: ExactComplex):
    return oracles.quad_to_sympy(z.re), oracles.quad_to_sympy(z.im)


@settings(max_examples=60, deadline=None)
@given(vectors, alpha_sqs, betas)
def test_central_charge_matches_oracle(v, s, beta):
    p = StabilityParams(s, beta)
    re, im = _as_sympy(central_charge(v, p))
    ore, oim = oracles.central_charge(tuple(v), s, beta)
    assert sp.simplify(re - ore) == 0 and sp.simplify(im - oim) == 0


@settings(max_examples=60, deadline=None)
@given(vectors, alpha_sqs, betas)
def test_discriminant_matches_oracle(v, s, beta):
    p = StabilityParams(s, beta)
    assert sp.simplify(oracles.quad_to_sympy(discriminant(v, p)) - oracles.discriminant(tuple(v), s, beta)) == 0


@given(vectors)
def test_imz_closed_form_at_distinguished(v):
    assert central_charge(v, P).im == imz_at_distinguished(v)


@given(vectors)
def test_imz_sign_flip_under_psi(v):
    z = central_charge(v, P).im
    assert central_charge(apply([PSI], v), P).im == -z
    assert central_charge(apply([PSI_HAT], v), P).im == -z


@given(vectors.filter(lambda v: v.a0 != 0))
def test_twisted_slope_identity(v):
    # at (3/4, 1/2): omega^2 ch1^B / ch0 = 9/2 (mu - 1/2)
    assert slope_mu_twisted(v, P).value == F(9, 2) * (slope_mu(v).value - F(1, 2))


@given(vectors.filter(lambda v: v.a1 == v.a2))
def test_bg_type_reduces_to_delta(v):
    assert bg_type(v, P) == (-v.a0 + 3 * v.a1 - v.a3 > 0)


def test_bg_examples():
    # O: ch3^B = -1/8 against 3 s ch1^B = -9/8
    assert bg_type(C(1, 0, 0, 0), P) is False
    assert bg_type(C(0, 1, 1, 0), P)
    assert bg_classical(C(1, 0, 0, 0)) and not bg_classical(C(1, 0, 1, 0))
    assert bg_type(C(1, 1, 1, 2), P, strict=False) == (F(1, 4) <= F(9, 8))


def test_tilt_slopes():
    assert tilt_slope(C(-1, 0, 0, 0), P) == 0
    assert tilt_slope(C(1, 1, 1, 1), P) == 0
    assert tilt_slope(C(0, 0, 0, 1), P) == PLUS_INFINITY
    assert tilt_slope(C(0, 0, 1, 0), P) == PLUS_INFINITY
    # O(l): ch^B = (1, 1/2, 1/4, 1/8), Im Z/alpha = 3/4 - 3/4 = 0
    # (1,2,3,4): ch^B = (1, 3/2, 5/4, ..); Im Z/alpha = 15/4 - 3/4 = 3, w^2 ch1 = 27/4
    assert tilt_slope_over_alpha(C(1, 2, 3, 4), P) == F(4, 9)
    assert tilt_slope(C(1, 2, 3, 4), P) == SQRT3 * F(2, 9)


def test_zero_vector_rejected():
    z = ChernVector()
    for fn in (slope_mu, lambda v: slope_mu_twisted(v, P), lambda v: tilt_slope(v, P)):
        with pytest.raises(ValueError):
            fn(z)


def test_general_alpha_path():
    p = StabilityParams(2, 0)
    assert p.alpha is None
    with pytest.raises(ValueError):
        central_charge(C(1, 2, 3, 4), p)
    with pytest.raises(ValueError):
        tilt_slope(C(1, 2, 3, 4), p)
    # rational parts stay available
    assert im_z_over_alpha(C(1, 2, 3, 4), p) == 9 - 2
    assert omega_sq_ch1(C(1, 2, 3, 4), p) == 24
    assert tilt_slope_over_alpha(C(1, 2, 3, 4), p) == F(7, 24)
    assert discriminant(C(1, 0, 0, 0), p) == 0
    assert StabilityParams(F(1, 3), 0).alpha == QuadScalar(0, F(1, 3))
    with pytest.raises(ValueError):
        StabilityParams(0, 0)


def test_slope_report_json():
    rep = slope_report(C(1, 2, 3, 4), P).to_json()
    assert rep == {
        "mu": "2",
        "mu_twisted": "27/4",
        "nu": "2/9*s3",
        "Z": {"re": "5/2", "im": "3/2*s3"},
        "disc": "81/4",
    }
