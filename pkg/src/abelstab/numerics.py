"""Stability functionals for omega = alpha*l, B = beta*l with l^3 = 6.

Only ``alpha**2`` is stored. Quantities of odd degree in omega (``Im Z``,
the tilt slope) carry one overall factor of ``alpha``; they are exposed both
as ``*_over_alpha`` rationals, valid for any ``alpha**2``, and as exact
``Q(sqrt 3)`` values whenever ``alpha`` itself lies in that field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernVector, tensor_L
from .scalar import PLUS_INFINITY, SQRT3, ExactComplex, ExtSlope, QuadScalar, Rational


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class StabilityParams:
    alpha_sq: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha_sq", Fraction(self.alpha_sq))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha_sq <= 0:
            raise ValueError(f"alpha^2 must be positive, got {self.alpha_sq}")

    @property
    def alpha(self) -> QuadScalar | None:
        """``sqrt(alpha_sq)`` in Q(sqrt 3), or None if it lies outside."""
        r = _rational_sqrt(self.alpha_sq)
        if r is not None:
            return QuadScalar(r)
        r = _rational_sqrt(self.alpha_sq / 3)
        if r is not None:
            return QuadScalar(0, r)
        return None

    def require_alpha(self) -> QuadScalar:
        a = self.alpha
        if a is None:
            raise ValueError(
                f"sqrt({self.alpha_sq}) is not in Q(sqrt 3); use the *_over_alpha variants"
            )
        return a

    def __str__(self) -> str:
        return f"(alpha^2={self.alpha_sq}, beta={self.beta})"


DISTINGUISHED = StabilityParams(Fraction(3, 4), Fraction(1, 2))


def _nonzero(v: ChernVector) -> None:
    if v.is_zero():
        raise ValueError("slope of the zero character is undefined")


def twist_B(v: ChernVector, beta: Rational) -> ChernVector:
    """The twisted character ``e^{-B} ch`` for ``B = beta*l``."""
    return tensor_L(v, -Fraction(beta))


def slope_mu(v: ChernVector) -> ExtSlope:
    _nonzero(v)
    if v.a0 == 0:
        return PLUS_INFINITY
    return ExtSlope(v.a1 / v.a0)


def omega_sq_ch1(v: ChernVector, p: StabilityParams) -> Fraction:
    """``omega^2 . ch_1^B`` as a number: ``6 * alpha^2 * ch_1^B``."""
    return 6 * p.alpha_sq * twist_B(v, p.beta).a1


def slope_mu_twisted(v: ChernVector, p: StabilityParams) -> ExtSlope:
    _nonzero(v)
    if v.a0 == 0:
        return PLUS_INFINITY
    return ExtSlope(omega_sq_ch1(v, p) / v.a0)


def im_z_over_alpha(v: ChernVector, p: StabilityParams) -> Fraction:
    """``Im Z / alpha = 3 ch_2^B - alpha^2 ch_0^B`` (normalized entries)."""
    b = twist_B(v, p.beta)
    return 3 * b.a2 - p.alpha_sq * b.a0


def re_z(v: ChernVector, p: StabilityParams) -> Fraction:
    """``Re Z = -ch_3^B + (omega^2/2) ch_1^B``."""
    b = twist_B(v, p.beta)
    return -b.a3 + 3 * p.alpha_sq * b.a1


def central_charge(v: ChernVector, p: StabilityParams) -> ExactComplex:
    alpha = p.require_alpha()
    return ExactComplex(re_z(v, p), alpha * im_z_over_alpha(v, p))


def tilt_slope_over_alpha(v: ChernVector, p: StabilityParams) -> ExtSlope:
    _nonzero(v)
    den = omega_sq_ch1(v, p)
    if den == 0:
        return PLUS_INFINITY
    return ExtSlope(im_z_over_alpha(v, p) / den)


def tilt_slope(v: ChernVector, p: StabilityParams) -> ExtSlope:
    alpha = p.require_alpha()
    reduced = tilt_slope_over_alpha(v, p)
    if not reduced.is_finite:
        return reduced
    return ExtSlope(alpha * reduced.value)


def discriminant(v: ChernVector, p: StabilityParams) -> QuadScalar:
    """Drezet discriminant ``(w^2 ch_1^B)^2 - 2 (w^3 ch_0^B)(w ch_2^B)``.

    ``w^3 ch_0^B = 6 alpha^3 ch_0^B`` and ``w ch_2^B = 3 alpha ch_2^B``; the
    product carries ``alpha^4`` and is therefore rational.
    """
    b = twist_B(v, p.beta)
    s = p.alpha_sq
    top = omega_sq_ch1(v, p)
    cross = 2 * (6 * b.a0) * (3 * b.a2) * s * s
    return QuadScalar(top * top - cross)


def bg_classical(v: ChernVector) -> bool:
    """Classical Bogomolov-Gieseker: ``a1^2 - a0*a2 >= 0``."""
    return v.a1 * v.a1 - v.a0 * v.a2 >= 0


def bg_type(v: ChernVector, p: StabilityParams, strict: bool = True) -> bool:
    """``ch_3^B < (omega^2/2) ch_1^B`` (``<=`` when ``strict`` is False)."""
    b = twist_B(v, p.beta)
    lhs, rhs = b.a3, 3 * p.alpha_sq * b.a1
    return lhs < rhs if strict else lhs <= rhs


@dataclass(frozen=True)
class SlopeReport:
    mu: ExtSlope
    mu_twisted: ExtSlope
    nu: ExtSlope
    Z: ExactComplex
    disc: QuadScalar

    def to_json(self) -> dict:
        return {
            "mu": str(self.mu),
            "mu_twisted": str(self.mu_twisted),
            "nu": str(self.nu),
            "Z": self.Z.to_json(),
            "disc": str(self.disc),
        }


def slope_report(v: ChernVector, p: StabilityParams) -> SlopeReport:
    return SlopeReport(
        mu=slope_mu(v),
        mu_twisted=slope_mu_twisted(v, p),
        nu=tilt_slope(v, p),
        Z=central_charge(v, p),
        disc=discriminant(v, p),
    )


def imz_at_distinguished(v: ChernVector) -> QuadScalar:
    """Closed form ``Im Z = (3 sqrt 3 / 2)(a2 - a1)`` at ``(3/4, 1/2)``."""
    return SQRT3 * Fraction(3, 2) * (v.a2 - v.a1)
