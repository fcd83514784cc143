"""Tilt-slope walls in the rational ``(s, beta)`` plane, ``s = alpha^2``.

With ``omega = alpha*l`` and ``B = beta*l``,

    nu(v) = alpha * N(v) / (6 s D(v)),
    N(v)  = 3 ch_2^B - s ch_0^B = 3 (a2 - 2 beta a1 + beta^2 a0) - s a0,
    D(v)  = ch_1^B = a1 - beta a0.

The factor ``alpha / 6s`` is common to every class, so the wall between
``v`` and ``w`` is the zero set of ``N(v) D(w) - N(w) D(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chern import ChernVector
from .numerics import DISTINGUISHED
from .scalar import Rational

Monomial = tuple[int, int]  # (power of s, power of beta)


class WallPolynomial:
    """Polynomial in ``s`` and ``beta`` with rational coefficients."""

    __slots__ = ("coeffs", "degenerate")

    def __init__(self, coeffs: Mapping[Monomial, Rational] | None = None, degenerate: bool = False) -> None:
        self.coeffs: dict[Monomial, Fraction] = {
            k: Fraction(c) for k, c in (coeffs or {}).items() if c != 0
        }
        self.degenerate = degenerate

    def __call__(self, s: Rational, beta: Rational) -> Fraction:
        s, beta = Fraction(s), Fraction(beta)
        return sum((c * s**i * beta**j for (i, j), c in self.coeffs.items()), Fraction(0))

    def __add__(self, other: WallPolynomial) -> WallPolynomial:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return WallPolynomial(out, self.degenerate or other.degenerate)

    def __neg__(self) -> WallPolynomial:
        return WallPolynomial({k: -c for k, c in self.coeffs.items()}, self.degenerate)

    def __sub__(self, other: WallPolynomial) -> WallPolynomial:
        return self + (-other)

    def __mul__(self, other: WallPolynomial) -> WallPolynomial:
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return WallPolynomial(out, self.degenerate or other.degenerate)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WallPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def s_degree(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    def in_s(self, beta: Rational) -> tuple[Fraction, Fraction]:
        """``(c1, c0)`` with ``W(s, beta) = c1*s + c0``; requires degree <= 1 in s."""
        if self.s_degree() > 1:
            raise ValueError("wall polynomial has degree > 1 in s")
        beta = Fraction(beta)
        c = [Fraction(0), Fraction(0)]
        for (i, j), coef in self.coeffs.items():
            c[i] += coef * beta**j
        return c[1], c[0]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = "*".join(
                x for x in (
                    "s" if i == 1 else f"s^{i}" if i else "",
                    "beta" if j == 1 else f"beta^{j}" if j else "",
                ) if x
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        flag = ", degenerate" if self.degenerate else ""
        return f"WallPolynomial({self}{flag})"


S = WallPolynomial({(1, 0): 1})
BETA = WallPolynomial({(0, 1): 1})


def const(c: Rational) -> WallPolynomial:
    return WallPolynomial({(0, 0): c})


def nu_numerator(v: ChernVector) -> WallPolynomial:
    """``Im Z / alpha`` as a polynomial: ``3 ch_2^B - s ch_0^B``."""
    return WallPolynomial(
        {(0, 0): 3 * v.a2, (0, 1): -6 * v.a1, (0, 2): 3 * v.a0, (1, 0): -v.a0}
    )


def ch1_twisted(v: ChernVector) -> WallPolynomial:
    """``ch_1^B = a1 - beta a0``; ``omega^2 ch_1^B`` is ``6 s`` times this."""
    return WallPolynomial({(0, 0): v.a1, (0, 1): -v.a0})


def wall_between(v: ChernVector, w: ChernVector) -> WallPolynomial:
    """Locus where ``v`` and ``w`` have equal finite tilt slope.

    If either class has ``ch_1^B`` identically zero (``a0 = a1 = 0``) its
    tilt slope is ``+inf`` everywhere and the result is flagged degenerate;
    it is then the zero set of ``-N(w) D(v)`` (or the mirror), which is the
    locus where the finite-slope class has tilt slope zero or vanishing
    denominator.
    """
    if v.is_zero() or w.is_zero():
        raise ValueError("walls are defined between nonzero classes")
    dv, dw = ch1_twisted(v), ch1_twisted(w)
    wall = nu_numerator(v) * dw - nu_numerator(w) * dv
    wall.degenerate = dv.is_zero() or dw.is_zero()
    return wall


def contains_distinguished_point(W: WallPolynomial) -> bool:
    return W(DISTINGUISHED.alpha_sq, DISTINGUISHED.beta) == 0


@dataclass(frozen=True)
class WallPoint:
    beta: Fraction
    s: Fraction | None  # None: every s > 0 lies on the wall at this beta

    @property
    def all_s(self) -> bool:
        return self.s is None


def sample_wall(W: WallPolynomial, beta_range: tuple[Rational, Rational], steps: int) -> list[WallPoint]:
    """Solve ``W(s, beta) = 0`` for ``s > 0`` on ``steps + 1`` evenly spaced betas."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    lo, hi = (Fraction(x) for x in beta_range)
    if hi < lo:
        raise ValueError("beta range must satisfy lo <= hi")
    out = []
    for k in range(steps + 1):
        beta = lo + (hi - lo) * k / steps
        c1, c0 = W.in_s(beta)
        if c1 == 0:
            if c0 == 0:
                out.append(WallPoint(beta, None))
            continue
        s = -c0 / c1
        if s > 0:
            out.append(WallPoint(beta, s))
    return out
