"""Command-line front end.

Exit codes: 0 success, 1 violations found (decompose, ss-check, verify),
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, TextIO

from . import verify as verify_mod
from .chern import (
    ChernVector,
    apply,
    chern_from_json,
    chern_to_json,
    derived_dual,
    format_chern,
    parse_chern,
    parse_pipeline,
)
from .constraints import (
    DecompositionTable,
    WitProfile,
    check_duality_ss,
    check_mukai_ss,
    check_table,
    close_claims,
    enumerate_tables,
    minimal_tables,
    parse_claim,
    source_violations,
    table_to_json,
    MAX_BOUND,
)
from .heart import HNInterval, classify_heart, bg_reduction_ledger, sc_candidate
from .numerics import (
    StabilityParams,
    bg_classical,
    bg_type,
    central_charge,
    discriminant,
    im_z_over_alpha,
    re_z,
    slope_mu,
    slope_mu_twisted,
    slope_report,
    tilt_slope_over_alpha,
)
from .scalar import parse_rational
from .walls import contains_distinguished_point, nu_numerator, sample_wall, wall_between


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _chars(args) -> Iterator[tuple[str, ChernVector]]:
    """Yield ``(label, character)`` from positionals, then ``--input`` lines."""
    for i, text in enumerate(args.chars, 1):
        try:
            yield f"argument {i}", parse_chern(text)
        except ValueError as exc:
            raise InputError(f"argument {i}: {exc}") from None
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    yield f"line {lineno}", chern_from_json(json.loads(line))
                except (ValueError, json.JSONDecodeError) as exc:
                    raise InputError(f"{args.input}:{lineno}: {exc}") from None


def _params(args) -> StabilityParams:
    try:
        return StabilityParams(args.alpha_sq, args.beta)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_transform(args, out: TextIO) -> int:
    try:
        tags = parse_pipeline(args.op)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for _, v in _chars(args):
        out.write(format_chern(apply(tags, v)) + "\n")
    return 0


def _report(v: ChernVector, p: StabilityParams, as_float: bool) -> dict:
    if p.alpha is not None:
        rep = slope_report(v, p)
        obj = rep.to_json()
        if as_float:
            obj["float"] = {
                "mu": float(rep.mu),
                "mu_twisted": float(rep.mu_twisted),
                "nu": float(rep.nu),
                "Z": [float(rep.Z.re), float(rep.Z.im)],
            }
    else:
        obj = {
            "mu": str(slope_mu(v)),
            "mu_twisted": str(slope_mu_twisted(v, p)),
            "nu_over_alpha": str(tilt_slope_over_alpha(v, p)),
            "Z": {"re": str(re_z(v, p)), "im_over_alpha": str(im_z_over_alpha(v, p))},
            "disc": str(discriminant(v, p)),
        }
    obj["ch"] = chern_to_json(v)
    return obj


def cmd_slope(args, out: TextIO) -> int:
    p = _params(args)
    for label, v in _chars(args):
        if v.is_zero():
            raise InputError(f"{label}: slopes of the zero character are undefined")
        _emit(out, _report(v, p, args.float))
    return 0


def cmd_charge(args, out: TextIO) -> int:
    p = _params(args)
    for _, v in _chars(args):
        if p.alpha is not None:
            obj = central_charge(v, p).to_json()
        else:
            obj = {"re": str(re_z(v, p)), "im_over_alpha": str(im_z_over_alpha(v, p))}
        obj["ch"] = chern_to_json(v)
        _emit(out, obj)
    return 0


def cmd_discriminant(args, out: TextIO) -> int:
    p = _params(args)
    for _, v in _chars(args):
        _emit(out, {"ch": chern_to_json(v), "disc": str(discriminant(v, p))})
    return 0


def cmd_bg(args, out: TextIO) -> int:
    p = _params(args)
    for _, v in _chars(args):
        _emit(out, {
            "ch": chern_to_json(v),
            "bg_classical": bg_classical(v),
            "bg_type": bg_type(v, p),
            "bg_type_weak": bg_type(v, p, strict=False),
        })
    return 0


def cmd_classify(args, out: TextIO) -> int:
    p = _params(args)
    for label, v in _chars(args):
        if v.is_zero():
            raise InputError(f"{label}: cannot classify the zero character")
        _emit(out, {
            "ch": chern_to_json(v),
            "case": classify_heart(v, p).value,
            "sc_candidate": sc_candidate(v, p),
        })
    return 0


def cmd_ledger(args, out: TextIO) -> int:
    for label, v in _chars(args):
        try:
            led = bg_reduction_ledger(v)
        except ValueError as exc:
            raise InputError(f"{label}: {exc}") from None
        obj = led.to_json()
        obj["ch"] = chern_to_json(v)
        _emit(out, obj)
    return 0


def _parse_parts(text: str) -> dict[int, ChernVector]:
    try:
        raw = json.loads(text)
        return {int(k): chern_from_json({"ch": val}) for k, val in raw.items()}
    except (ValueError, AttributeError, json.JSONDecodeError) as exc:
        raise InputError(f"--check: expected a JSON object like '{{\"1\": [1,0,0,0]}}': {exc}") from None


def cmd_decompose(args, out: TextIO) -> int:
    try:
        claims = [parse_claim(c) for c in args.claim]
        wit = WitProfile(frozenset(int(d) for d in args.wit.split(","))) if args.wit else None
        functor = tuple(parse_pipeline(args.functor))
        annotations: dict[int, list[HNInterval]] = {}
        for spec in args.annotate:
            deg, _, iv = spec.partition(":")
            annotations.setdefault(int(deg), []).append(HNInterval.parse(iv))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not 1 <= args.bound <= MAX_BOUND:
        raise InputError(f"--bound must be in 1..{MAX_BOUND}, got {args.bound}")

    status = 0
    for _, source in _chars(args):
        if args.check is not None:
            t = DecompositionTable(source, _parse_parts(args.check), annotations, frozenset(claims), wit, functor)
            found = check_table(t, rank_nonneg=not args.allow_negative_rank)
            _emit(out, table_to_json(t, found))
            status |= 1 if found else 0
            continue
        tables = enumerate_tables(
            source,
            args.bound,
            rank_nonneg=not args.allow_negative_rank,
            claims=claims,
            wit=wit,
            annotations=annotations,
            functor=functor,
            workers=args.workers,
        )
        if args.minimal:
            tables = minimal_tables(tables)
        for t in tables:
            _emit(out, table_to_json(t, [] if args.explain else None))
        if not tables:
            status = 1
            if args.explain:
                reasons = source_violations(source, close_claims(source, claims), not args.allow_negative_rank)
                _emit(out, {
                    "source": chern_to_json(source),
                    "admissible": 0,
                    "violations": [r.to_json() for r in reasons],
                    "note": "no table within the bound satisfies every rule" if not reasons else "source rejected",
                })
    return status


def cmd_ss_check(args, out: TextIO) -> int:
    status = 0
    if args.mukai:
        try:
            with open(args.mukai, encoding="utf-8") as fh:
                lines = [(n, ln) for n, ln in enumerate(fh, 1) if ln.strip()]
        except OSError as exc:
            raise InputError(str(exc)) from None
        for lineno, line in lines:
            try:
                obj = json.loads(line)
                source = chern_from_json({"ch": obj["source"]})
                level2 = {}
                for key, val in obj.get("level2", {}).items():
                    p_, q_ = (int(x) for x in key.split(","))
                    level2[(p_, q_)] = chern_from_json({"ch": val})
                parts = None
                if "parts" in obj:
                    parts = {int(k): chern_from_json({"ch": val}) for k, val in obj["parts"].items()}
                found = check_mukai_ss(source, level2, parts)
            except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
                raise InputError(f"{args.mukai}:{lineno}: {exc}") from None
            _emit(out, {"line": lineno, "violations": [v.to_json() for v in found]})
            status |= 1 if found else 0
    for _, v in _chars(args):
        t = DecompositionTable(v, {})
        found = check_duality_ss(t, DecompositionTable(derived_dual(v), {}))
        _emit(out, {"ch": chern_to_json(v), "duality": not found, "violations": [x.to_json() for x in found]})
        status |= 1 if found else 0
    return status


def cmd_walls(args, out: TextIO) -> int:
    chars = [v for _, v in _chars(args)]
    if len(chars) not in (1, 2) or any(v.is_zero() for v in chars):
        raise InputError("walls takes one nonzero character (its tilt-slope-zero locus) or two (their wall)")
    W = nu_numerator(chars[0]) if len(chars) == 1 else wall_between(*chars)
    try:
        lo, hi = (parse_rational(x) for x in args.beta_range.split(","))
    except ValueError as exc:
        raise InputError(f"--beta-range: {exc}") from None
    try:
        points = sample_wall(W, (lo, hi), args.steps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.poly:
        out.write(f"# W = {W}\n")
        out.write(f"# degenerate = {str(W.degenerate).lower()}\n")
        out.write(f"# contains (3/4,1/2) = {str(contains_distinguished_point(W)).lower()}\n")
    out.write("beta,s" + (",s_float" if args.float else "") + "\n")
    for pt in points:
        s_text = "all" if pt.all_s else str(pt.s)
        row = f"{pt.beta},{s_text}"
        if args.float:
            row += ",nan" if pt.all_s else f",{float(pt.s):.12g}"
        out.write(row + "\n")
    return 0


def cmd_verify(args, out: TextIO) -> int:
    results = verify_mod.run_all()
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if args.verbose else "") + "\n")
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abelstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, chars: bool = True, params: bool = True):
        p = sub.add_parser(name, help=help)
        # let "-1,0,0,0" and "-1/2" through as values rather than options
        p._negative_number_matcher = re.compile(r"^-\d")
        if chars:
            p.add_argument("chars", nargs="*", metavar="a0,a1,a2,a3")
            p.add_argument("--input", help="JSON-lines file of {\"ch\": [a0,a1,a2,a3]}")
        if params:
            p.add_argument("--alpha-sq", type=_rational, default=Fraction(3, 4))
            p.add_argument("--beta", type=_rational, default=Fraction(1, 2))
        p.add_argument("--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("transform", cmd_transform, "apply a functor pipeline to characters", params=False)
    p.add_argument("--op", required=True, help="e.g. phi, psi.psihat, shift:2.phi.L:-1 (rightmost first)")
    p = add("slope", cmd_slope, "mu, twisted mu, tilt slope, Z and discriminant")
    p.add_argument("--float", action="store_true", help="add labeled float approximations")
    add("charge", cmd_charge, "central charge Z")
    add("discriminant", cmd_discriminant, "Drezet discriminant")
    add("bg", cmd_bg, "classical and B-G type inequalities")
    add("classify", cmd_classify, "heart trichotomy and tilt-slope-zero candidacy")
    add("ledger", cmd_ledger, "B-G reduction arithmetic for a1 = a2", params=False)

    p = add("decompose", cmd_decompose, "enumerate or check transform-cohomology tables", params=False)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--claim", action="append", default=[], help="source claim, e.g. F0, torsion, semistable")
    p.add_argument("--wit", help="allowed degrees, e.g. 1 or 2,3")
    p.add_argument("--annotate", action="append", default=[], help="DEG:INTERVAL, e.g. 1:(0,+inf]")
    p.add_argument("--functor", default="phi", help="phi, psi or psihat")
    p.add_argument("--check", help="check this table instead of enumerating, JSON {deg: [a0,a1,a2,a3]}")
    p.add_argument("--minimal", action="store_true", help="only minimal-mass tables")
    p.add_argument("--explain", action="store_true")
    p.add_argument("--allow-negative-rank", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = add("ss-check", cmd_ss_check, "spectral-sequence identities", params=False)
    p.add_argument("--mukai", help="JSON-lines file of {source, level2: {\"p,q\": ch}, parts?}")

    p = add("walls", cmd_walls, "sample a wall in the (beta, s) plane as CSV", params=False)
    p.add_argument("--beta-range", default="0,1")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--float", action="store_true", help="add an s_float column (display only)")
    p.add_argument("--poly", action="store_true", help="prefix the polynomial as # comments")

    p = add("verify", cmd_verify, "re-run every built-in check", chars=False, params=False)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _output(args.output) as out:
            return args.func(args, out)
    except (InputError, OSError) as exc:
        print(f"abelstab {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
