"""Constraint tables for the cohomology sheaves of Fourier-Mukai transforms.

A :class:`DecompositionTable` proposes characters for ``E^i = H^i(Phi(E))``
given the character of a sheaf ``E``. The built-in rules are the
character-level consequences of the vanishing and slope results for
``Phi`` on coherent sheaves; everything object-level about those results
(reflexivity, HN factors, restriction to divisors, limit arguments) is lost
in the passage to characters and is not checked.

Slope claims are tested through the total slope only, which is a necessary
condition for every HN factor to lie in the interval.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .chern import PHI, PSI, PSI_HAT, ChernVector, FunctorTag, apply, derived_dual, fmt_phi, shift
from .heart import F0, T0, HeartCase, HNInterval, classify_heart, interval
from .numerics import DISTINGUISHED, slope_mu

DEGREES = (0, 1, 2, 3)
MAX_BOUND = 12


class Claim(enum.Enum):
    """Facts asserted about the source sheaf that its character cannot show."""

    T0 = "T0"
    F0 = "F0"
    TORSION = "torsion"
    COH_LE1 = "coh<=1"
    # Slope-semistable *reflexive* sheaf; the ch_3 = 0 input below is only
    # valid in that case (ideal sheaves of points are semistable with a3 < 0).
    SEMISTABLE = "semistable"
    HN_0_1 = "HN(0,1]"
    HN_M1_0 = "HN[-1,0]"
    HN_0_INF = "HN[0,+inf)"


CLAIM_INTERVALS: dict[Claim, HNInterval] = {
    Claim.T0: T0,
    Claim.F0: F0,
    Claim.HN_0_1: interval(0, 1, lo_open=True),
    Claim.HN_M1_0: interval(-1, 0),
    Claim.HN_0_INF: interval(0, "+inf", hi_open=True),
}


def parse_claim(text: str) -> Claim:
    t = text.strip()
    for c in Claim:
        if t == c.value or t.upper() == c.name:
            return c
    raise ValueError(f"unknown claim {text!r}; choose from {[c.value for c in Claim]}")


def close_claims(source: ChernVector, claims: Iterable[Claim]) -> frozenset[Claim]:
    """Add the claims forced by the character of a sheaf and by semistability."""
    out = set(claims)
    if source.is_zero():
        return frozenset(out)
    if source.a0 == 0:
        out |= {Claim.TORSION, Claim.T0}
        if source.a1 == 0:
            out.add(Claim.COH_LE1)
    if Claim.SEMISTABLE in out and source.a0 > 0:
        mu = slope_mu(source)
        for claim in (Claim.T0, Claim.F0, Claim.HN_0_1, Claim.HN_M1_0, Claim.HN_0_INF):
            if CLAIM_INTERVALS[claim].contains(mu):
                out.add(claim)
    return frozenset(out)


@dataclass(frozen=True)
class WitProfile:
    """Degrees in which the transform may have nonzero cohomology."""

    allowed_degrees: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "allowed_degrees", frozenset(self.allowed_degrees))
        if not self.allowed_degrees <= set(DEGREES):
            raise ValueError(f"WIT degrees must lie in 0..3, got {sorted(self.allowed_degrees)}")

    @classmethod
    def of(cls, *degrees: int) -> WitProfile:
        return cls(frozenset(degrees))

    def __str__(self) -> str:
        return "V(" + ",".join(str(d) for d in sorted(self.allowed_degrees)) + ")"


@dataclass(frozen=True)
class DecompositionTable:
    source: ChernVector
    parts: Mapping[int, ChernVector]
    annotations: Mapping[int, tuple[HNInterval, ...]] = field(default_factory=dict)
    claims: frozenset[Claim] = frozenset()
    wit: WitProfile | None = None
    functor: tuple[FunctorTag, ...] = (PHI,)

    def __post_init__(self) -> None:
        if not isinstance(self.parts, Mapping):
            raise ValueError("a decomposition table needs a parts mapping")
        bad = set(self.parts) - set(DEGREES)
        if bad:
            raise ValueError(f"part degrees must lie in 0..3, got {sorted(bad)}")
        object.__setattr__(self, "claims", frozenset(self.claims))
        object.__setattr__(self, "functor", tuple(self.functor))

    def part(self, degree: int) -> ChernVector:
        return self.parts.get(degree, ChernVector())

    def alternating_sum(self) -> ChernVector:
        total = ChernVector()
        for d in DEGREES:
            total = total + shift(self.part(d), d)
        return total

    def mass(self) -> Fraction:
        return sum((self.part(d).mass() for d in DEGREES), Fraction(0))

    def sort_key(self) -> tuple:
        return (self.mass(), tuple(tuple(self.part(d)) for d in DEGREES))

    def nonzero_parts(self) -> dict[int, ChernVector]:
        return {d: self.part(d) for d in DEGREES if not self.part(d).is_zero()}


# -- rules -----------------------------------------------------------------


@dataclass(frozen=True)
class Conclusion:
    """One per-degree conclusion; ``degree=None`` constrains the source."""

    degree: int | None
    kind: str  # "vanishes" | "interval" | "equals" | "a3_zero"
    interval: HNInterval | None = None
    value: ChernVector | None = None

    def holds(self, table: DecompositionTable) -> bool:
        if self.kind == "a3_zero":
            return table.source.a3 == 0
        part = table.part(self.degree)
        if self.kind == "vanishes":
            return part.is_zero()
        if self.kind == "equals":
            return part == self.value
        if self.kind == "interval":
            return part.is_zero() or self.interval.contains(slope_mu(part))
        raise AssertionError(self.kind)

    def holds_for_part(self, part: ChernVector) -> bool:
        return self.holds(DecompositionTable(ChernVector(), {self.degree: part}))

    def __str__(self) -> str:
        where = "source" if self.degree is None else f"part[{self.degree}]"
        if self.kind == "vanishes":
            return f"{where} = 0"
        if self.kind == "equals":
            return f"{where} = {self.value}"
        if self.kind == "interval":
            return f"{where} in HN{self.interval}"
        return "source a3 = 0"


def _vanish(d: int) -> Conclusion:
    return Conclusion(d, "vanishes")


def _within(d: int, iv: HNInterval) -> Conclusion:
    return Conclusion(d, "interval", interval=iv)


def _always(source: ChernVector) -> bool:
    return True


def _no_ch1_ch2(source: ChernVector) -> bool:
    return source.a1 == 0 and source.a2 == 0


def _homogeneous_shadow(source: ChernVector) -> tuple[Conclusion, ...]:
    # E filtered by degree-zero line bundles P_x: WIT_3, transform a
    # zero-dimensional sheaf of length rank(E).
    return (
        Conclusion(None, "a3_zero"),
        _vanish(0),
        _vanish(1),
        _vanish(2),
        Conclusion(3, "equals", value=ChernVector(0, 0, 0, source.a0)),
    )


@dataclass(frozen=True)
class ConstraintRule:
    """``requires`` claims on the source (and ``source_test`` on its
    character, and vanishing of the ``when_zero`` parts) imply the
    ``conclusions``. ``dynamic`` conclusions are computed from the source.
    """

    name: str
    anchor: str
    requires: frozenset[Claim]
    conclusions: tuple[Conclusion, ...] = ()
    when_zero: tuple[int, ...] = ()
    source_test: Callable[[ChernVector], bool] = _always
    dynamic: Callable[[ChernVector], tuple[Conclusion, ...]] | None = None

    def applies_to_source(self, source: ChernVector, claims: frozenset[Claim]) -> bool:
        return self.requires <= claims and self.source_test(source)

    def applies(self, table: DecompositionTable, claims: frozenset[Claim]) -> bool:
        return self.applies_to_source(table.source, claims) and all(
            table.part(d).is_zero() for d in self.when_zero
        )

    def conclusions_for(self, source: ChernVector) -> tuple[Conclusion, ...]:
        extra = self.dynamic(source) if self.dynamic is not None else ()
        return self.conclusions + extra


def builtin_rules() -> list[ConstraintRule]:
    """The vanishing and slope results for ``Phi`` on coherent sheaves."""
    R = ConstraintRule
    return [
        R("T0-no-E3", "E in T0 => E^3 = 0", frozenset({Claim.T0}), (_vanish(3),)),
        R("F0-no-E0", "E in F0 => E^0 = 0", frozenset({Claim.F0}), (_vanish(0),)),
        R("E3-in-T0", "E^3 in T0 for every sheaf", frozenset(), (_within(3, T0),)),
        R("E0-in-F0", "E^0 in F0 for every sheaf", frozenset(), (_within(0, F0),)),
        R("torsion-E2-in-T0", "E torsion => E^2 in T0", frozenset({Claim.TORSION}), (_within(2, T0),)),
        R("curve-E1-in-T0", "E in coh<=1 => E^1 in T0", frozenset({Claim.COH_LE1}), (_within(1, T0),)),
        R("F0-E1-in-F0", "E in F0 => E^1 in F0", frozenset({Claim.F0}), (_within(1, F0),)),
        # The limit arguments (mu+ -> 0, restriction to divisors) behind the
        # next two rules have no finite character shadow of their own.
        R(
            "HN-nonneg-E2",
            "E in HN[0,+inf), E^3 = 0 => E^2 in HN[0,+inf]",
            frozenset({Claim.HN_0_INF}),
            (_within(2, interval(0, "+inf")),),
            when_zero=(3,),
        ),
        R("T0-E2-in-T0", "E in T0 => E^2 in T0", frozenset({Claim.T0}), (_within(2, T0),)),
        R(
            "HN01-E0-bound",
            "E in HN(0,1] => E^0 in HN(-inf,-1/2]",
            frozenset({Claim.HN_0_1}),
            (_within(0, interval("-inf", Fraction(-1, 2), lo_open=True)),),
        ),
        R(
            "HNm10-E3-bound",
            "E in HN[-1,0] => E^3 in HN[1/2,+inf]",
            frozenset({Claim.HN_M1_0}),
            (_within(3, interval(Fraction(1, 2), "+inf")),),
        ),
        # The vanishing of ch_3 for such sheaves is taken as an axiom, not derived.
        R(
            "homogeneous-shadow",
            "semistable reflexive with ch_1 = ch_2 = 0 => ch_3 = 0, homogeneous",
            frozenset({Claim.SEMISTABLE}),
            source_test=_no_ch1_ch2,
            dynamic=_homogeneous_shadow,
        ),
    ]


# -- checking --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    degree: int | None
    message: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "degree": self.degree, "message": self.message}

    def __str__(self) -> str:
        where = "source" if self.degree is None else f"degree {self.degree}"
        return f"{self.rule} ({where}): {self.message}"


def source_violations(
    source: ChernVector, claims: frozenset[Claim], rank_nonneg: bool, effective: bool = True
) -> list[Violation]:
    out = []
    if rank_nonneg and source.a0 < 0:
        out.append(Violation("rank", None, f"source rank {source.a0} < 0"))
    elif effective and not _torsion_effective(source):
        out.append(Violation("effective", None, f"{source} is not the character of a sheaf"))
    if source.is_zero():
        return out
    if Claim.TORSION in claims and source.a0 != 0:
        out.append(Violation("claim:torsion", None, "torsion sheaf must have rank 0"))
    if Claim.COH_LE1 in claims and (source.a0 != 0 or source.a1 != 0):
        out.append(Violation("claim:coh<=1", None, "support of dim <= 1 forces a0 = a1 = 0"))
    mu = slope_mu(source)
    for claim, iv in CLAIM_INTERVALS.items():
        if claim in claims and not iv.contains(mu):
            out.append(Violation(f"claim:{claim.value}", None, f"slope {mu} not in {iv}"))
    return out


def _is_phi(table: DecompositionTable) -> bool:
    return table.functor == (PHI,)


def _torsion_effective(v: ChernVector) -> bool:
    # For rank 0: l^2.ch_1, then l.ch_2, then length; the first nonzero is positive.
    if v.a0 != 0:
        return True
    for x in (v.a1, v.a2, v.a3):
        if x:
            return x > 0
    return True


def _part_admissible(
    part: ChernVector, table_is_phi: bool, rank_nonneg: bool, effective: bool = True
) -> str | None:
    if part.is_zero():
        return None
    if table_is_phi:
        if rank_nonneg and part.a0 < 0:
            return f"rank {part.a0} < 0 is impossible for a sheaf"
        if effective and not _torsion_effective(part):
            return f"{part} is not the character of a torsion sheaf"
    elif classify_heart(part, DISTINGUISHED) is HeartCase.INCONSISTENT:
        return "no nonzero object of the tilted heart has this character"
    return None


def check_table(
    t: DecompositionTable,
    rules: Sequence[ConstraintRule] | None = None,
    rank_nonneg: bool = True,
    effective: bool = True,
) -> list[Violation]:
    """All violations of the identity, the profile, and the applicable rules.

    Rules only apply to ``Phi``-tables; tables for ``Psi``/``Psi-hat`` are
    checked for the identity, the profile and heart consistency of parts.
    """
    if t is None or getattr(t, "parts", None) is None:
        raise ValueError("malformed table: missing parts map")
    if rules is None:
        rules = builtin_rules()
    out: list[Violation] = []
    expected = apply(t.functor, t.source)
    got = t.alternating_sum()
    if got != expected:
        out.append(Violation("alternating-sum", None, f"sum (-1)^i parts = {got}, transform = {expected}"))

    phi = _is_phi(t)
    claims = close_claims(t.source, t.claims) if phi else t.claims
    if phi:
        out.extend(source_violations(t.source, claims, rank_nonneg, effective))

    for d, part in sorted(t.nonzero_parts().items()):
        if t.wit is not None and d not in t.wit.allowed_degrees:
            out.append(Violation("wit", d, f"nonzero part outside {t.wit}"))
        problem = _part_admissible(part, phi, rank_nonneg, effective)
        if problem:
            kind = ("rank" if part.a0 < 0 else "effective") if phi else "heart"
            out.append(Violation(kind, d, problem))
        for iv in t.annotations.get(d, ()):
            if not iv.contains(slope_mu(part)):
                out.append(Violation("annotation", d, f"slope {slope_mu(part)} not in {iv}"))

    if phi:
        for rule in rules:
            if not rule.applies(t, claims):
                continue
            for c in rule.conclusions_for(t.source):
                if not c.holds(t):
                    out.append(Violation(rule.name, c.degree, f"expected {c} [{rule.anchor}]"))
    return out


# -- enumeration -----------------------------------------------------------


def _box(bound: int) -> list[ChernVector]:
    r = range(-bound, bound + 1)
    return [ChernVector(*e) for e in itertools.product(r, r, r, r)]


@dataclass(frozen=True)
class _Search:
    source: ChernVector
    bound: int
    rules: tuple[ConstraintRule, ...]
    rank_nonneg: bool
    effective: bool
    claims: frozenset[Claim]
    wit: WitProfile | None
    annotations: Mapping[int, tuple[HNInterval, ...]]
    functor: tuple[FunctorTag, ...]
    free: tuple[int, ...]
    solved: int | None
    candidates: Mapping[int, tuple[ChernVector, ...]]

    def table(self, parts: dict[int, ChernVector]) -> DecompositionTable:
        return DecompositionTable(
            self.source,
            {d: v for d, v in parts.items() if not v.is_zero()},
            self.annotations,
            self.claims,
            self.wit,
            self.functor,
        )


def _search_chunk(search: _Search, first: Sequence[ChernVector]) -> list[DecompositionTable]:
    target = apply(search.functor, search.source)
    out = []
    pools = ([first] if search.free else []) + [search.candidates[d] for d in search.free[1:]]
    allowed_solved = set(search.candidates[search.solved]) if search.solved is not None else None
    for combo in itertools.product(*pools):
        parts = dict(zip(search.free, combo))
        if search.solved is None:
            if any(not v.is_zero() for v in combo):
                continue
            if not target.is_zero():
                continue
        else:
            rest = target
            for d, v in parts.items():
                rest = rest - shift(v, d)
            last = shift(rest, search.solved)
            if last not in allowed_solved:
                continue
            parts[search.solved] = last
        t = search.table(parts)
        if not check_table(t, search.rules, search.rank_nonneg, search.effective):
            out.append(t)
    return out


def enumerate_tables(
    source: ChernVector,
    bound: int,
    rules: Sequence[ConstraintRule] | None = None,
    rank_nonneg: bool = True,
    *,
    effective: bool = True,
    claims: Iterable[Claim] = (),
    wit: WitProfile | None = None,
    annotations: Mapping[int, Sequence[HNInterval]] | None = None,
    functor: Sequence[FunctorTag] = (PHI,),
    workers: int = 1,
) -> list[DecompositionTable]:
    """Every admissible table with part entries in ``[-bound, bound]``.

    Output is sorted by total mass, then lexicographically by parts, and is
    independent of ``workers``.
    """
    if not 1 <= bound <= MAX_BOUND:
        raise ValueError(f"bound must be in 1..{MAX_BOUND}, got {bound}")
    rules = tuple(builtin_rules() if rules is None else rules)
    functor = tuple(functor)
    annotations = {d: tuple(ivs) for d, ivs in (annotations or {}).items()}
    phi = functor == (PHI,)
    if phi:
        claims = close_claims(source, claims)
        if source_violations(source, claims, rank_nonneg, effective):
            return []
    else:
        claims = frozenset(claims)
        rules = ()
        if wit is None and functor in ((PSI,), (PSI_HAT,)):
            wit = WitProfile(transform_window(TPart))

    allowed = set(wit.allowed_degrees) if wit is not None else set(DEGREES)
    # Conclusions that need no other part can prune candidates up front.
    per_part: dict[int, list[Conclusion]] = {d: [] for d in DEGREES}
    for rule in rules:
        if rule.when_zero or not rule.applies_to_source(source, claims):
            continue
        for c in rule.conclusions_for(source):
            if c.degree is None:
                if not c.holds(DecompositionTable(source, {})):
                    return []
            elif c.kind == "vanishes":
                allowed.discard(c.degree)
            else:
                per_part[c.degree].append(c)

    box = _box(bound)
    candidates: dict[int, tuple[ChernVector, ...]] = {}
    for d in sorted(allowed):
        keep = []
        for v in box:
            if _part_admissible(v, phi, rank_nonneg, effective):
                continue
            if not all(c.holds_for_part(v) for c in per_part[d]):
                continue
            if not v.is_zero() and not all(iv.contains(slope_mu(v)) for iv in annotations.get(d, ())):
                continue
            keep.append(v)
        candidates[d] = tuple(keep)

    order = sorted(allowed, key=lambda d: (len(candidates[d]), d))
    if order:
        solved, free = order[-1], tuple(order[:-1])
    else:
        solved, free = None, ()
    search = _Search(
        source, bound, rules, rank_nonneg, effective, claims, wit, annotations, functor, free, solved, candidates
    )

    if not free:
        results = _search_chunk(search, [])
    else:
        first = list(candidates[free[0]])
        if workers <= 1 or len(first) < 2:
            results = _search_chunk(search, first)
        else:
            n = min(workers, len(first))
            chunks = [first[i::n] for i in range(n)]
            with ProcessPoolExecutor(max_workers=n) as pool:
                results = [t for part in pool.map(_search_chunk, [search] * n, chunks) for t in part]
    return sorted(results, key=DecompositionTable.sort_key)


def minimal_tables(tables: Sequence[DecompositionTable]) -> list[DecompositionTable]:
    if not tables:
        return []
    least = min(t.mass() for t in tables)
    return [t for t in tables if t.mass() == least]


# -- spectral sequences ----------------------------------------------------

# Double-transform E^{ij} = Phi^j(Phi^i(E)) sits at E_2^{p,q} with (p, q) = (j, i).
_MUKAI_ZERO = {"E^00": (0, 0), "E^01": (1, 0), "E^32": (2, 3), "E^33": (3, 3)}
_MUKAI_EQUAL = (("E^10", (0, 1), "E^02", (2, 0)), ("E^31", (1, 3), "E^23", (3, 2)))


def check_mukai_ss(
    source: ChernVector,
    level2: Mapping[tuple[int, int], ChernVector],
    parts: Mapping[int, ChernVector] | None = None,
) -> list[Violation]:
    """Consequences of ``Phi o Phi = (-1)^* [-3]`` on the second page.

    ``level2[(p, q)]`` is the character of ``Phi^p(Phi^q(E))``. With
    ``parts`` given, each column is also checked against ``Phi(E^q)``.
    """
    for key in level2:
        if len(key) != 2 or not all(k in DEGREES for k in key):
            raise ValueError(f"level2 keys must be pairs in 0..3, got {key!r}")
    zero = ChernVector()
    out = []
    for name, key in _MUKAI_ZERO.items():
        if not level2.get(key, zero).is_zero():
            out.append(Violation("mukai-vanishing", None, f"{name} at E2{key} must vanish"))
    for left, lkey, right, rkey in _MUKAI_EQUAL:
        lv, rv = level2.get(lkey, zero), level2.get(rkey, zero)
        if lv != rv:
            out.append(Violation("mukai-iso", None, f"ch({left}) = {lv} differs from ch({right}) = {rv}"))
    euler = ChernVector()
    for (p, q), v in level2.items():
        euler = euler + shift(v, p + q)
    if euler != -source:
        out.append(Violation("mukai-euler", None, f"sum (-1)^(p+q) E2 = {euler}, expected {-source}"))
    if parts is not None:
        for q in DEGREES:
            column = ChernVector()
            for p in DEGREES:
                column = column + shift(level2.get((p, q), zero), p)
            want = fmt_phi(parts.get(q, zero))
            if column != want:
                out.append(Violation("mukai-column", q, f"column {q} sums to {column}, Phi(E^{q}) = {want}"))
    return out


def duality_identity(v: ChernVector) -> tuple[ChernVector, ChernVector]:
    """Both sides of ``(Phi o RDelta)[3] = (-1)^* RDelta o Phi`` on ``v``."""
    return shift(fmt_phi(derived_dual(v)), 3), derived_dual(fmt_phi(v))


def check_duality_ss(parts: DecompositionTable, dual_parts: DecompositionTable) -> list[Violation]:
    """Character identity behind the duality spectral sequence.

    Only totals are compared; the individual Ext sheaves are not modeled.
    """
    if dual_parts.source != derived_dual(parts.source):
        raise ValueError("dual table's source must be the derived dual of the table's source")
    out = []
    lhs, rhs = duality_identity(parts.source)
    if lhs != rhs:
        out.append(Violation("duality", None, f"(Phi RDelta)[3] gives {lhs}, RDelta Phi gives {rhs}"))
    if parts.parts and dual_parts.parts:
        a, b = dual_parts.alternating_sum(), shift(derived_dual(parts.alternating_sum()), 3)
        if a != b:
            out.append(Violation("duality-tables", None, f"dual table sums to {a}, expected {b}"))
    return out


FPart = "F_part"
TPart = "T_part"


def transform_window(source_kind: str, normalized: bool = True) -> frozenset[int]:
    """Degrees of first-tilt cohomology of ``L Phi`` applied to the first tilt.

    The free part ``F[1]`` of an object lands in raw degrees 1..3, which the
    ``[1]`` shift moves to 0..2; the torsion part lands in 0..2 directly.
    """
    if source_kind == TPart:
        return frozenset({0, 1, 2})
    if source_kind == FPart:
        return frozenset({0, 1, 2}) if normalized else frozenset({1, 2, 3})
    raise ValueError(f"source_kind must be {FPart!r} or {TPart!r}")


def table_to_json(t: DecompositionTable, violations: Sequence[Violation] | None = None) -> dict:
    from .chern import chern_to_json

    out = {
        "source": chern_to_json(t.source),
        "functor": ".".join(str(tag) for tag in t.functor),
        "parts": {str(d): chern_to_json(v) for d, v in sorted(t.nonzero_parts().items())},
        "mass": str(t.mass()),
    }
    if t.claims:
        out["claims"] = sorted(c.value for c in t.claims)
    if violations is not None:
        out["violations"] = [v.to_json() for v in violations]
    return out
