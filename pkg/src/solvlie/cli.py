"""Command-line interface: every subcommand prints one JSON document to
standard output.  Exit status 0 on success, 1 on a mathematical negative
(invalid table, unmet --expect-iso, census mismatch), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from solvlie.catalog import count_classes, identify, parse_label
from solvlie.census import census
from solvlie.field import field_from_text
from solvlie.groebner import PolyRing, buchberger
from solvlie.iso import IsoVerdict, decide_isomorphic, verify_isomorphism
from solvlie.kernel import KERNEL_KIND
from solvlie.liealg import (
    Derivation,
    algebra_from_json,
    algebra_to_json,
    derivations,
    extend_by_derivation,
    field_from_json,
    solvability_profile,
    validate,
)
from solvlie.linalg import Matrix, rcf


class InputError(ValueError):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path} at position {exc.pos}: {exc.msg}") from None


def _load_algebra(path: str):
    doc = _load_json(path)
    try:
        return algebra_from_json(json.dumps(doc))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad algebra file {path}: {exc}") from None


def _matrix_json(m: Matrix):
    return [[str(x) for x in row] for row in m.entries]


def _load_matrix(doc, spec) -> Matrix:
    entries = doc["entries"] if isinstance(doc, dict) else doc
    return Matrix(spec, [[spec.parse(str(x)) for x in row] for row in entries])


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args):
    lie = _load_algebra(args.algebra)
    report = validate(lie)
    _emit(
        {
            "valid": report.ok,
            "violation": list(report.violation) if report.violation else None,
        }
    )
    return 0 if report.ok else 1


def _cmd_profile(args):
    lie = _load_algebra(args.algebra)
    prof = solvability_profile(lie)
    _emit(
        {
            "derived_dims": list(prof.derived_dims),
            "lower_central_dims": list(prof.lower_central_dims),
            "solvable": prof.is_solvable,
            "nilpotent": prof.is_nilpotent,
            "derived_basis": [[str(c) for c in row] for row in prof.derived_basis],
        }
    )
    return 0


def _cmd_rcf(args):
    doc = _load_json(args.matrix)
    if not isinstance(doc, dict) or "field" not in doc:
        raise InputError("rcf input needs {'field': ..., 'entries': [[...]]}")
    spec = field_from_json(doc["field"])
    m = _load_matrix(doc, spec)
    result = rcf(m)
    _emit(
        {
            "invariant_factors": [str(f) for f in result.invariant_factors],
            "transform": _matrix_json(result.transform),
        }
    )
    return 0


def _cmd_derivations(args):
    lie = _load_algebra(args.algebra)
    ders = derivations(lie)
    _emit(
        {
            "dimension": len(ders),
            "basis": [_matrix_json(d.matrix) for d in ders],
        }
    )
    return 0


def _cmd_extend(args):
    lie = _load_algebra(args.algebra)
    doc = _load_json(args.derivation)
    mat = _load_matrix(doc, lie.field)
    try:
        ext = extend_by_derivation(lie, mat)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(algebra_to_json(ext) + "\n")
    return 0


def _cmd_identify(args):
    lie = _load_algebra(args.algebra)
    label = identify(lie)
    _emit({"label": str(label)})
    return 0


def _cmd_iso(args):
    l1 = _load_algebra(args.first)
    l2 = _load_algebra(args.second)
    if l1.field != l2.field:
        raise InputError("the two algebras live over different fields")
    result = decide_isomorphic(l1, l2)
    doc = {
        "verdict": result.verdict.value,
        "witness": _matrix_json(result.witness) if result.witness else None,
        "basis": [str(b) for b in result.evidence.basis] if result.evidence else None,
    }
    _emit(doc)
    if args.expect_iso and result.verdict is not IsoVerdict.ISOMORPHIC:
        return 1
    return 0


def _cmd_gb(args):
    spec = field_from_text(args.field)
    ring = PolyRing(tuple(v.strip() for v in args.vars.split(",")), spec)
    lines = [
        line.strip()
        for line in _read_text(args.system).splitlines()
        if line.strip()
    ]
    try:
        gens = [ring.parse(line) for line in lines]
    except ValueError as exc:
        raise InputError(f"bad polynomial: {exc}") from None
    gb = buchberger(gens)
    _emit({"basis": [str(b) for b in gb.basis]})
    return 0


def _cmd_count(args):
    _emit({"dim": args.dim, "q": args.q, "count": count_classes(args.dim, args.q)})
    return 0


def _cmd_census(args):
    counts = census(args.dim, args.q, workers=args.workers)
    expected = count_classes(args.dim, args.q)
    ok = len(counts) == expected
    _emit(
        {
            "dim": args.dim,
            "q": args.q,
            "counts": {str(k): v for k, v in sorted(counts.items(), key=lambda kv: str(kv[0]))},
            "distinct": len(counts),
            "expected": expected,
            "status": "PASS" if ok else "FAIL",
        }
    )
    print(
        f"census dim={args.dim} q={args.q}: {len(counts)} classes, "
        f"expected {expected}: {'PASS' if ok else 'FAIL'}",
        file=sys.stderr,
    )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvlie",
        description="Solvable Lie algebras of dimension <= 4: exact "
        "construction, identification, isomorphism and censuses "
        f"(census kernel: {KERNEL_KIND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the Jacobi identity")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("profile", help="derived/lower-central series and flags")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("rcf", help="rational canonical form of a square matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_rcf)

    p = sub.add_parser("derivations", help="basis of the derivation algebra")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_derivations)

    p = sub.add_parser("extend", help="extend by a derivation matrix")
    p.add_argument("algebra")
    p.add_argument("derivation")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("identify", help="canonical classification label")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_identify)

    p = sub.add_parser("iso", help="decide isomorphism of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--expect-iso", action="store_true")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("gb", help="reduced lexicographic Groebner basis")
    p.add_argument("system", help="file with one polynomial per line")
    p.add_argument("--field", required=True, help="Q, F2, F4:t^2+t+1, ...")
    p.add_argument("--vars", required=True, help="comma-separated, largest first")
    p.set_defaults(func=_cmd_gb)

    p = sub.add_parser("count", help="number of classes over F_q")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("census", help="enumerate and bucket all solvable tables")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_census)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _emit({"error": str(exc)})
        return 2
    except (ValueError, KeyError) as exc:
        _emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
