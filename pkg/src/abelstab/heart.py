"""Character-level shadows of membership in the tilted hearts.

Nothing here decides membership of an actual object: HN filtrations are not
visible from a Chern character. Every predicate is a necessary condition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .chern import PHI, ChernVector, Shift, TensorL, apply
from .numerics import (
    DISTINGUISHED,
    StabilityParams,
    bg_type,
    im_z_over_alpha,
    omega_sq_ch1,
    re_z,
    slope_mu,
    slope_mu_twisted,
    tilt_slope,
)
from .scalar import MINUS_INFINITY, PLUS_INFINITY, ExtSlope, parse_slope


class HeartCase(enum.Enum):
    POSITIVE_CH1B = "PositiveCh1B"
    TORSION_LIKE = "TorsionLike"
    POINT_LIKE = "PointLike"
    INCONSISTENT = "Inconsistent"


def classify_heart(v: ChernVector, p: StabilityParams) -> HeartCase:
    """Place ``v`` in the trichotomy satisfied by nonzero objects of the first tilt.

    ``INCONSISTENT`` means no nonzero object of the tilted heart has this
    character. The sign of ``Im Z`` is read off ``Im Z / alpha`` since
    ``alpha > 0``.
    """
    if v.is_zero():
        raise ValueError("cannot classify the zero character")
    d = omega_sq_ch1(v, p)
    if d > 0:
        return HeartCase.POSITIVE_CH1B
    if d < 0:
        return HeartCase.INCONSISTENT
    im = im_z_over_alpha(v, p)
    if im > 0:
        return HeartCase.TORSION_LIKE
    if im == 0 and -re_z(v, p) > 0:
        return HeartCase.POINT_LIKE
    return HeartCase.INCONSISTENT


@dataclass(frozen=True)
class HNInterval:
    """An interval of slopes; ``+inf`` is a legal closed upper endpoint."""

    lo: ExtSlope
    hi: ExtSlope
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    def contains(self, x: ExtSlope) -> bool:
        above = self.lo < x if self.lo_open else self.lo <= x
        below = x < self.hi if self.hi_open else x <= self.hi
        return above and below

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo},{self.hi}{right}"

    @classmethod
    def parse(cls, text: str) -> HNInterval:
        t = text.strip()
        if len(t) < 5 or t[0] not in "([" or t[-1] not in ")]" or "," not in t:
            raise ValueError(f"malformed interval {text!r}; expected e.g. (0,+inf]")
        lo, hi = t[1:-1].split(",")
        return cls(parse_slope(lo), parse_slope(hi), t[0] == "(", t[-1] == ")")


def interval(lo, hi, lo_open: bool = False, hi_open: bool = False) -> HNInterval:
    """Shorthand taking rationals, ``"+inf"`` or ``"-inf"`` as endpoints."""

    def conv(x):
        if isinstance(x, ExtSlope):
            return x
        if x == "+inf":
            return PLUS_INFINITY
        if x == "-inf":
            return MINUS_INFINITY
        return ExtSlope(Fraction(x))

    return HNInterval(conv(lo), conv(hi), lo_open, hi_open)


# The slope intervals used for coherent sheaves with the plain slope mu.
T0 = interval(0, "+inf", lo_open=True)
F0 = interval("-inf", 0, lo_open=True)


class SlopeKind(enum.Enum):
    MU = "mu"
    MU_TWISTED = "mu_twisted"
    NU = "nu"


def slope_of(v: ChernVector, which: SlopeKind, p: StabilityParams | None = None) -> ExtSlope:
    if which is SlopeKind.MU:
        return slope_mu(v)
    if p is None:
        raise ValueError(f"{which.value} needs stability parameters")
    if which is SlopeKind.MU_TWISTED:
        return slope_mu_twisted(v, p)
    return tilt_slope(v, p)


def interval_member(
    v: ChernVector,
    iv: HNInterval,
    which: SlopeKind = SlopeKind.MU_TWISTED,
    p: StabilityParams | None = DISTINGUISHED,
) -> bool:
    """Necessary condition for ``[slope-, slope+]`` of ``v`` to lie in ``iv``.

    The total slope lies between the extremal HN slopes, so it must lie in
    the interval whenever the object does.
    """
    return iv.contains(slope_of(v, which, p))


def sc_candidate(v: ChernVector, p: StabilityParams) -> bool:
    """Numerical shadow of "tilt-stable in the first tilt with tilt slope 0".

    The definition of the minimal-object class additionally asks that
    ``Ext^1(O_x, E)`` vanish for all points ``x``; that has no character-level
    counterpart and is not checked.
    """
    if v.is_zero() or classify_heart(v, p) is not HeartCase.POSITIVE_CH1B:
        return False
    return im_z_over_alpha(v, p) == 0


@dataclass(frozen=True)
class BGReductionLedger:
    F: ChernVector
    delta: Fraction
    twoB1minusB0: Fraction
    bg_equiv: bool

    def to_json(self) -> dict:
        from .chern import chern_to_json

        return {
            "F": chern_to_json(self.F),
            "delta": str(self.delta),
            "twoB1minusB0": str(self.twoB1minusB0),
            "bg_equiv": self.bg_equiv,
        }


def bg_reduction_ledger(v: ChernVector) -> BGReductionLedger:
    """Arithmetic of the B-G reduction through ``F = Phi(L^-1 v)[2]``.

    Requires ``a1 == a2`` (``Im Z = 0`` at the distinguished point).
    """
    if v.a1 != v.a2:
        raise ValueError(f"ledger needs a1 == a2 (Im Z = 0); got a1={v.a1}, a2={v.a2}")
    F = apply([Shift(2), PHI, TensorL(-1)], v)
    if F.a1 != F.a2:
        raise AssertionError(f"transform broke a1 == a2: {F}")
    delta = -v.a0 + 3 * v.a1 - v.a3
    two_b1_minus_b0 = 2 * F.a1 - F.a0
    return BGReductionLedger(
        F=F,
        delta=delta,
        twoB1minusB0=two_b1_minus_b0,
        bg_equiv=bg_type(v, DISTINGUISHED) == (delta > 0),
    )


def tilt_zero_cohomology_bounds(
    e_minus1: ChernVector | None, e_0: ChernVector | None, b: Fraction = Fraction(1, 2)
) -> list[str]:
    """Total-character bounds on the cohomology sheaves of a tilt-semistable
    object of tilt slope 0 at ``omega = sqrt(3) B``, ``B = b*l``.

    ``e_minus1`` and ``e_0`` are the characters of ``H^-1`` and ``H^0``.
    Returns the list of failed conditions (empty when all hold). The
    strict bounds on the extremal HN factors are not checkable from totals.
    """
    failures = []
    if e_minus1 is not None and not e_minus1.is_zero():
        if e_minus1.a1 > 0:
            failures.append("H^-1: l^2 ch_1 must be <= 0")
        elif (e_minus1.a1 == 0) != (e_minus1.a2 == 0):
            failures.append("H^-1: l^2 ch_1 = 0 must coincide with ch_2 = 0")
    if e_0 is not None and e_0.a0 != 0:
        # l^2 ch_1 >= 2 b l^3 ch_0  <=>  a1 >= 2 b a0
        edge = e_0.a1 - 2 * b * e_0.a0
        if edge < 0:
            failures.append("H^0: l^2 ch_1 must be >= 2 b l^3 ch_0")
        elif (edge == 0) != (e_0.a1 * e_0.a1 == e_0.a0 * e_0.a2):
            failures.append("H^0: equality must coincide with ch_1^2 = 2 ch_0 ch_2")
    return failures
