"""Command-line front end.  All output is key-sorted JSON on stdout.

Exit codes: 0 success, 2 input error, 3 oracle inconsistency,
4 resource limit, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

from .configuration import (ConfigurationError, Face, FaceNotInLattice, PointConfiguration, face_lattice,
                            from_aprime, validate)
from .discriminant import (FaceDiscriminant, InconsistentOracles, VariableLimitExceeded, DimBoundViolation,
                           eA_support, face_discriminant_symbolic, finiteness_test, vA_membership)
from .harness import ALL_CHECKS, VerificationPlan, run_verification
from .toric import toric_ideal

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3
EXIT_LIMIT = 4
EXIT_VERIFY = 5

BUILTINS = ("segment2", "quadratic", "twisted_cubic", "square")


class InputError(ValueError):
    code = "InputError"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


def parse_config(data: dict, default_name: str = "") -> PointConfiguration:
    if not isinstance(data, dict):
        raise InputError("configuration must be a JSON object")
    has_points, has_aprime = "points" in data, "aprime" in data
    if has_points == has_aprime:
        raise InputError("configuration needs exactly one of 'points' or 'aprime'")
    name = str(data.get("name", default_name))
    if has_points:
        return validate([tuple(p) for p in data["points"]], name)
    return from_aprime([tuple(p) for p in data["aprime"]], name)


def builtin_config(name: str) -> PointConfiguration:
    if name not in BUILTINS:
        raise InputError(f"unknown builtin configuration {name!r}", available=list(BUILTINS))
    text = resources.files("adet").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return parse_config(json.loads(text), name)


def load_config(source: str) -> PointConfiguration:
    if source.startswith("builtin:"):
        return builtin_config(source[len("builtin:"):])
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc.msg}") from None
    return parse_config(data, path.stem)


def parse_alpha(source: str, A: PointConfiguration) -> List[Fraction]:
    """``--alpha`` takes inline JSON or a path to a query file."""
    path = Path(source)
    text = source
    if not source.lstrip().startswith(("[", "{")) and path.exists():
        text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"alpha is not valid JSON: {exc.msg}") from None
    if isinstance(data, dict):
        data = data.get("alpha")
    if not isinstance(data, list):
        raise InputError("alpha must be a list of rational strings")
    try:
        alpha = [Fraction(str(a)) for a in data]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"unparseable rational in {data}") from None
    if len(alpha) != A.d:
        raise InputError(f"alpha has {len(alpha)} entries, configuration has {A.d} points",
                         expected=A.d, got=len(alpha))
    return alpha


def parse_face(source: Optional[str], A: PointConfiguration) -> Face:
    lattice = face_lattice(A)
    if source is None:
        return lattice.polytope
    try:
        idx = [int(t) - 1 for t in source.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad face {source!r}; expected 1-based indices like 1,2") from None
    return lattice.find(idx)


def face_json(F: Face) -> dict:
    return {"indices": list(F.label), "dim": F.dim,
            "normal": list(F.normal) if F.normal is not None else None, "offset": F.offset}


def discriminant_json(fd: FaceDiscriminant) -> dict:
    out = {"face": list(fd.face.label), "status": fd.status}
    if fd.is_hypersurface:
        out["delta"] = str(fd.delta)
    else:
        out["ideal"] = [str(g) for g in fd.ideal]
    return out


def cmd_faces(args) -> dict:
    A = load_config(args.config)
    return {"config": A.name, "d": A.d, "k": A.k, "n": A.n,
            "faces": [face_json(F) for F in face_lattice(A)]}


def cmd_toric_ideal(args) -> dict:
    A = load_config(args.config)
    T = toric_ideal(A)
    return {"config": A.name, "generators": [str(g) for g in T.generators],
            "lattice": [list(u) for u in T.lattice]}


def cmd_membership(args) -> dict:
    A = load_config(args.config)
    alpha = parse_alpha(args.alpha, A)
    v = vA_membership(A, alpha)
    return {"in_vA": v.in_vA, "witnesses": [list(F.label) for F in v.witness_faces]}


def cmd_finiteness(args) -> dict:
    A = load_config(args.config)
    alpha = parse_alpha(args.alpha, A)
    rep = finiteness_test(A, alpha, cross_check=not args.no_cross_check)
    out = {"finite": rep.finite}
    if rep.finite:
        out["dimension"] = rep.dimension
    if rep.profile is not None:
        out["profile"] = rep.profile.to_json()
    return out


def cmd_discriminant(args) -> dict:
    A = load_config(args.config)
    F = parse_face(args.face, A)
    return discriminant_json(face_discriminant_symbolic(A, F))


def cmd_ea_support(args) -> dict:
    A = load_config(args.config)
    sup = eA_support(A)
    faces = [discriminant_json(face_discriminant_symbolic(A, F)) for F in face_lattice(A)]
    return {"config": A.name, "support": [str(p) for p in sup.polynomials], "faces": faces}


def cmd_verify(args):
    A = load_config(args.config)
    checks = tuple(args.checks.split(",")) if args.checks else ALL_CHECKS
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}", available=list(ALL_CHECKS))
    if args.samples < 0 or args.stratum < 0:
        raise InputError("sample counts must be nonnegative")
    plan = VerificationPlan(A, n_random=args.samples, n_stratum_per_face=args.stratum, seed=args.seed,
                            bound=args.bound, jobs=args.jobs, inject_bug=args.inject_bug)
    report = run_verification(plan, checks)
    return report.to_json(timings=args.timings), (EXIT_OK if report.ok else EXIT_VERIFY)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adet", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="PATH to a config JSON or builtin:NAME")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented output")
    common.set_defaults(pretty=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("faces", parents=[common], help="face lattice of the polytope")
    p.set_defaults(func=cmd_faces)
    p = sub.add_parser("toric-ideal", parents=[common], help="generators of the toric ideal")
    p.set_defaults(func=cmd_toric_ideal)
    for name, func, helptext in (("membership", cmd_membership, "is alpha in V(A)?"),
                                 ("finiteness", cmd_finiteness, "is the Euler-operator map finite at alpha?")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--alpha", required=True, help='JSON list like ["1","-4/3"], or a query file')
        p.set_defaults(func=func)
        if name == "finiteness":
            p.add_argument("--no-cross-check", action="store_true", help="skip the Hilbert-function check")
    p = sub.add_parser("discriminant", parents=[common], help="symbolic discriminant of one face")
    p.add_argument("--face", help="1-based point indices, e.g. 1,2 (default: the whole polytope)")
    p.set_defaults(func=cmd_discriminant)
    p = sub.add_parser("ea-support", parents=[common], help="zero set of the principal A-determinant")
    p.set_defaults(func=cmd_ea_support)
    p = sub.add_parser("verify", parents=[common], help="seeded verification campaign")
    p.add_argument("--samples", type=int, default=200, help="random alpha samples")
    p.add_argument("--stratum", type=int, default=50, help="stratum samples per face")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=10, help="numerator/denominator bound")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(ALL_CHECKS)}")
    p.add_argument("--inject-bug", action="store_true", help="self-test: negate the finiteness verdict")
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-reproducibility)")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(payload, pretty: bool, stream=None) -> None:
    stream = sys.stdout if stream is None else stream
    if pretty:
        text = json.dumps(payload, sort_keys=True, indent=2)
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    stream.write(text + "\n")


def _error(exc: Exception, pretty: bool) -> None:
    code = getattr(exc, "code", type(exc).__name__)
    _emit({"error": code, "message": str(exc), "detail": getattr(exc, "detail", {})}, pretty)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (ConfigurationError, FaceNotInLattice, InputError) as exc:
        _error(exc, args.pretty)
        return EXIT_INPUT
    except InconsistentOracles as exc:
        _error(exc, args.pretty)
        return EXIT_INCONSISTENT
    except VariableLimitExceeded as exc:
        _error(exc, args.pretty)
        return EXIT_LIMIT
    except DimBoundViolation as exc:
        _error(exc, args.pretty)
        return EXIT_INCONSISTENT
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    _emit(result, args.pretty)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
