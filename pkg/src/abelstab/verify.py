"""Self-check suite behind ``abelstab verify``.

Each check returns ``(name, ok, detail)``. Expected values are literal data
below so that a regression in the library cannot silently move them.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Iterator

from .chern import PSI, PSI_HAT, ChernVector, apply, derived_dual, fmt_phi, shift
from .constraints import Claim, WitProfile, check_mukai_ss, enumerate_tables
from .heart import HeartCase, bg_reduction_ledger, classify_heart
from .numerics import (
    DISTINGUISHED,
    StabilityParams,
    bg_type,
    central_charge,
    discriminant,
    tilt_slope,
    tilt_slope_over_alpha,
)
from .scalar import QuadScalar
from .walls import BETA, S, const, contains_distinguished_point, nu_numerator, sample_wall, wall_between

Check = tuple[str, bool, str]

O = ChernVector(1, 0, 0, 0)
O_SHIFT = ChernVector(-1, 0, 0, 0)
L = ChernVector(1, 1, 1, 1)
POINT = ChernVector(0, 0, 0, 1)
BASIS = [ChernVector(*row) for row in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]


def random_vectors(n: int = 1000, lo: int = -100, hi: int = 100, seed: int = 20131) -> list[ChernVector]:
    rng = random.Random(seed)
    return [ChernVector(*(rng.randint(lo, hi) for _ in range(4))) for _ in range(n)]


def check_line_bundle_invariants() -> Check:
    p = DISTINGUISHED
    values = {
        "disc(O)": discriminant(O, p),
        "disc(L)": discriminant(L, p),
        "nu(O[1])": tilt_slope(O_SHIFT, p).value,
        "nu(L)": tilt_slope(L, p).value,
    }
    bad = {k: str(v) for k, v in values.items() if v != QuadScalar(0)}
    return "O, L, O[1]: discriminants and tilt slopes vanish", not bad, str(bad or values)


def check_functor_algebra() -> Check:
    fails = [str(e) for e in BASIS if fmt_phi(fmt_phi(e)) != -e]
    for v in random_vectors():
        if apply([PSI, PSI_HAT], v) != v or apply([PSI_HAT, PSI], v) != v:
            fails.append(str(v))
    return "functor algebra: Phi^2 = -id, Psi Psi^ = Psi^ Psi = id", not fails, f"{len(fails)} failures"


def check_imz_sign_flip() -> Check:
    p = DISTINGUISHED
    fails = []
    for v in random_vectors():
        z = central_charge(v, p).im
        if central_charge(apply([PSI], v), p).im != -z or central_charge(apply([PSI_HAT], v), p).im != -z:
            fails.append(str(v))
    return "Im Z flips sign under Psi and Psi^", not fails, f"{len(fails)} failures"


def check_bg_reduction() -> Check:
    count, fails = 0, []
    r = range(-6, 7)
    for a0, a1, a3 in itertools.product(r, r, r):
        v = ChernVector(a0, a1, a1, a3)
        count += 1
        led = bg_reduction_ledger(v)
        F = led.F
        ok = (
            F.a0 == a3 - a0
            and F.a1 == F.a2 == a1 - a0
            and bg_type(v, DISTINGUISHED) == (led.delta > 0)
            and led.delta == -a0 + 3 * a1 - a3
        )
        if not ok:
            fails.append(str(v))
    # 13**3 vectors with a1 = a2
    return "B-G reduction ledger over [-6,6]^4 with a1 = a2", not fails and count == 2197, f"{count} vectors, {len(fails)} failures"


def check_curve_transforms() -> Check:
    fails = []
    for alpha in range(1, 4):
        for beta in range(-3, 4):
            src = ChernVector(0, 0, alpha, beta)
            tables = enumerate_tables(src, 4, wit=WitProfile.of(1))
            found = [dict(t.nonzero_parts()) for t in tables]
            if beta <= 0:
                if {1: ChernVector(-beta, alpha, 0, 0)} not in found:
                    fails.append(f"{src}: missing table")
            elif found:
                fails.append(f"{src}: unexpected {found}")
    return "curve transforms: E^1 has character (-beta, alpha, 0, 0)", not fails, "; ".join(fails) or "ok"


def check_duality_identity() -> Check:
    fails = []
    for v in BASIS + random_vectors():
        lhs = shift(fmt_phi(derived_dual(v)), 3)
        if lhs != derived_dual(fmt_phi(v)):
            fails.append(str(v))
    return "duality identity (Phi RDelta)[3] = RDelta Phi", not fails, f"{len(fails)} failures"


def check_mukai_corollaries() -> Check:
    z = ChernVector()
    fails = []
    if check_mukai_ss(POINT, {(3, 0): POINT}):
        fails.append("skyscraper table rejected")
    for key in ((0, 0), (1, 0), (2, 3), (3, 3)):
        if not check_mukai_ss(POINT, {(3, 0): POINT, key: O}):
            fails.append(f"nonzero E2{key} accepted")
    if not check_mukai_ss(POINT, {(3, 0): POINT, (0, 1): O, (2, 0): z}):
        fails.append("E^10 != E^02 accepted")
    return "Mukai spectral sequence corollaries", not fails, "; ".join(fails) or "ok"


def check_homogeneous_shadow() -> Check:
    fails = []
    for r in (1, 2, 3):
        for chi in (-2, -1, 1, 2):
            if enumerate_tables(ChernVector(r, 0, 0, chi), 3, claims=[Claim.SEMISTABLE]):
                fails.append(f"({r},0,0,{chi}) admits a table")
        got = [dict(t.nonzero_parts()) for t in enumerate_tables(ChernVector(r, 0, 0, 0), 3, claims=[Claim.SEMISTABLE])]
        if got != [{3: ChernVector(0, 0, 0, r)}]:
            fails.append(f"({r},0,0,0) gives {got}")
    return "semistable (r,0,0,chi): only chi = 0, transform a length-r point sheaf", not fails, "; ".join(fails) or "ok"


def _grid() -> Iterator[StabilityParams]:
    for i in range(1, 21):
        for j in range(20):
            yield StabilityParams(Fraction(i, 8), Fraction(j - 10, 8))


def check_walls() -> Check:
    fails = []
    if nu_numerator(O_SHIFT) != S - const(3) * BETA * BETA:
        fails.append(f"nu(O[1]) numerator is {nu_numerator(O_SHIFT)}")
    if not contains_distinguished_point(nu_numerator(O_SHIFT)):
        fails.append("s = 3 beta^2 misses (3/4, 1/2)")
    if not contains_distinguished_point(wall_between(O_SHIFT, L)):
        fails.append("wall(O[1], L) misses (3/4, 1/2)")
    pairs = [(O_SHIFT, L), (O, ChernVector(1, 2, 3, 4)), (ChernVector(2, -1, 0, 5), ChernVector(0, 1, 1, 3))]
    for v, w in pairs:
        W = wall_between(v, w)
        for p in _grid():
            nv, nw = tilt_slope_over_alpha(v, p), tilt_slope_over_alpha(w, p)
            if not (nv.is_finite and nw.is_finite):
                continue
            if (W(p.alpha_sq, p.beta) == 0) != (nv == nw):
                fails.append(f"{v},{w} at {p}")
        for pt in sample_wall(W, (-2, 2), 40):
            if pt.all_s:
                continue
            p = StabilityParams(pt.s, pt.beta)
            nv, nw = tilt_slope_over_alpha(v, p), tilt_slope_over_alpha(w, p)
            if nv.is_finite and nw.is_finite and nv != nw:
                fails.append(f"root {pt} of wall({v},{w}) is not a wall point")
    return "wall geometry and 20x20 grid cross-validation", not fails, "; ".join(fails[:5]) or "ok"


def check_trichotomy() -> Check:
    p = DISTINGUISHED
    counts = {c: 0 for c in HeartCase}
    r = range(-4, 5)
    for e in itertools.product(r, r, r, r):
        if any(e):
            counts[classify_heart(ChernVector(*e), p)] += 1
    points_ok = all(classify_heart(ChernVector(0, 0, 0, n), p) is HeartCase.POINT_LIKE for n in range(1, 50))
    ok = points_ok and sum(counts.values()) == 9**4 - 1
    return "heart trichotomy over [-4,4]^4", ok, ", ".join(f"{c.value}={n}" for c, n in counts.items())


CHECKS: list[Callable[[], Check]] = [
    check_line_bundle_invariants,
    check_functor_algebra,
    check_imz_sign_flip,
    check_bg_reduction,
    check_curve_transforms,
    check_duality_identity,
    check_mukai_corollaries,
    check_homogeneous_shadow,
    check_walls,
    check_trichotomy,
]


def run_all() -> list[Check]:
    return [check() for check in CHECKS]
