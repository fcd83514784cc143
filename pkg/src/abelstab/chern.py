"""Normalized Chern characters and the linear action of functors on them.

A character ``(a0, a1, a2, a3)`` stands for ``ch = (a0, a1*l, a2*l^2/2,
a3*l^3/6)`` where ``l`` is the principal polarization, so ``l^3 = 6``.
Pullback along ``(-1)`` acts trivially on these classes and is omitted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .scalar import Rational, format_rational, parse_rational


@dataclass(frozen=True)
class ChernVector:
    a0: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("a0", "a1", "a2", "a3"):
            value = getattr(self, name)
            if not isinstance(value, (int, Fraction)) or isinstance(value, bool):
                raise TypeError(f"{name} must be int or Fraction, got {type(value).__name__}")
            object.__setattr__(self, name, Fraction(value))

    @classmethod
    def of(cls, *entries: Rational) -> ChernVector:
        if len(entries) == 1 and not isinstance(entries[0], (int, Fraction)):
            entries = tuple(entries[0])  # type: ignore[arg-type]
        if len(entries) != 4:
            raise ValueError(f"a Chern character has 4 entries, got {len(entries)}")
        return cls(*entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter((self.a0, self.a1, self.a2, self.a3))

    def __getitem__(self, i: int) -> Fraction:
        return (self.a0, self.a1, self.a2, self.a3)[i]

    def __add__(self, other: ChernVector) -> ChernVector:
        return ChernVector(*(x + y for x, y in zip(self, other)))

    def __sub__(self, other: ChernVector) -> ChernVector:
        return ChernVector(*(x - y for x, y in zip(self, other)))

    def __neg__(self) -> ChernVector:
        return ChernVector(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, k: Rational) -> ChernVector:
        return ChernVector(*(x * k for x in self))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self)

    def mass(self) -> Fraction:
        return sum((abs(x) for x in self), Fraction(0))

    def __str__(self) -> str:
        return format_chern(self)


ZERO = ChernVector()


def parse_chern(text: str) -> ChernVector:
    fields = text.strip().split(",")
    if len(fields) != 4:
        raise ValueError(f"expected 4 comma-separated entries, got {text!r}")
    return ChernVector(*(parse_rational(f) for f in fields))


def format_chern(v: ChernVector) -> str:
    return ",".join(format_rational(x) for x in v)


def chern_from_json(obj) -> ChernVector:
    """Accept ``{"ch": [...]}`` with int or ``"p/q"`` string entries."""
    if not isinstance(obj, dict) or "ch" not in obj:
        raise ValueError('expected a JSON object with key "ch"')
    entries = obj["ch"]
    if not isinstance(entries, list) or len(entries) != 4:
        raise ValueError('"ch" must be a list of 4 rationals')
    out = []
    for e in entries:
        if isinstance(e, bool) or not isinstance(e, (int, str)):
            raise ValueError(f"character entries must be integers or 'p/q' strings, got {e!r}")
        out.append(Fraction(e) if isinstance(e, int) else parse_rational(e))
    return ChernVector(*out)


def chern_to_json(v: ChernVector) -> list[int | str]:
    return [int(x) if x.denominator == 1 else format_rational(x) for x in v]


def fmt_phi(v: ChernVector) -> ChernVector:
    """Character of the Poincare-bundle Fourier-Mukai transform."""
    return ChernVector(v.a3, -v.a2, v.a1, -v.a0)


def tensor_L(v: ChernVector, k: Rational) -> ChernVector:
    """Multiply by ``e^{k l}``; rational ``k`` gives the B-field twist."""
    k = Fraction(k)
    a0, a1, a2, a3 = v
    return ChernVector(
        a0,
        a1 + k * a0,
        a2 + 2 * k * a1 + k * k * a0,
        a3 + 3 * k * a2 + 3 * k * k * a1 + k**3 * a0,
    )


def shift(v: ChernVector, n: int) -> ChernVector:
    return v if n % 2 == 0 else -v


def derived_dual(v: ChernVector) -> ChernVector:
    """``RHom(-, O)[3]``: dualizing flips odd degrees, ``[3]`` flips all."""
    return ChernVector(-v.a0, v.a1, -v.a2, v.a3)


class Functor(enum.Enum):
    PHI = "phi"
    TENSOR_L = "L"
    SHIFT = "shift"
    PSI = "psi"
    PSI_HAT = "psihat"
    DUAL = "dual"


@dataclass(frozen=True)
class FunctorTag:
    kind: Functor
    n: int = 0

    def __str__(self) -> str:
        if self.kind in (Functor.TENSOR_L, Functor.SHIFT):
            return f"{self.kind.value}:{self.n}"
        return self.kind.value

    def expand(self) -> list[FunctorTag]:
        """Rewrite the composite functors in terms of the primitive ones."""
        if self.kind is Functor.PSI:
            return [TensorL(1), PHI]
        if self.kind is Functor.PSI_HAT:
            return [Shift(1), PHI, TensorL(-1)]
        return [self]


def TensorL(k: int) -> FunctorTag:
    return FunctorTag(Functor.TENSOR_L, k)


def Shift(n: int) -> FunctorTag:
    return FunctorTag(Functor.SHIFT, n)


PHI = FunctorTag(Functor.PHI)
PSI = FunctorTag(Functor.PSI)
PSI_HAT = FunctorTag(Functor.PSI_HAT)
DUAL = FunctorTag(Functor.DUAL)


def parse_tag(text: str) -> FunctorTag:
    t = text.strip().lower()
    name, _, arg = t.partition(":")
    if name in ("l", "tensor"):
        if not arg:
            raise ValueError(f"tensor tag needs a power, e.g. L:-1 (got {text!r})")
        return TensorL(int(arg))
    if name == "shift":
        if not arg:
            raise ValueError(f"shift tag needs an amount, e.g. shift:1 (got {text!r})")
        return Shift(int(arg))
    simple = {"phi": PHI, "psi": PSI, "psihat": PSI_HAT, "dual": DUAL}
    if name in simple and not arg:
        return simple[name]
    raise ValueError(f"unknown functor tag {text!r}")


def parse_pipeline(text: str) -> list[FunctorTag]:
    """Parse ``psi.psihat`` or ``shift:2.phi.L:-1`` (leftmost applied last)."""
    return [parse_tag(part) for part in text.split(".") if part.strip()]


def _apply_primitive(tag: FunctorTag, v: ChernVector) -> ChernVector:
    if tag.kind is Functor.PHI:
        return fmt_phi(v)
    if tag.kind is Functor.TENSOR_L:
        return tensor_L(v, tag.n)
    if tag.kind is Functor.SHIFT:
        return shift(v, tag.n)
    if tag.kind is Functor.DUAL:
        return derived_dual(v)
    raise AssertionError(tag)


def expand(tags: Sequence[FunctorTag]) -> list[FunctorTag]:
    return [prim for tag in tags for prim in tag.expand()]


def apply(tags: Iterable[FunctorTag], v: ChernVector) -> ChernVector:
    """Apply the composite ``tags[0] o tags[1] o ... o tags[-1]`` to ``v``."""
    for tag in reversed(expand(list(tags))):
        v = _apply_primitive(tag, v)
    return v


def psi(v: ChernVector) -> ChernVector:
    return apply([PSI], v)


def psi_hat(v: ChernVector) -> ChernVector:
    return apply([PSI_HAT], v)
