"""Command-line front end.  Every audit command prints a JSON RunReport.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .classify import classify, is_quasi_lanner
from .diagram import CoxeterMatrix, DiagramError, format_diagram, is_connected, parse_diagram
from .examples import build_pv_example, build_rac_cube
from .homology import ComplexError, is_ghs
from .nerve import (CapExceeded, check_codim1_flats, check_flat_isolation, enumerate_affine_flats,
                    flat_boundary_position, build_nerve, is_flag, nerve_to_dict, peripheral_flats)
from .polytope import (PolytopeError, audit_nikulin, audit_face_counts, build_polytope, check_facet_configurations,
                       rightangled_dimension_bound)
from .report import AuditReport, digest, dumps
from .surgery import SurgeryError, cut_along_flat, glue_along_flat
from .weights import (EDGE_CONSTANT, FAR, BOUND_OFFSET, NEAR, bad_ratio_audit, edge_weight_audit,
                      general_bound, good_face_audit, weight_report)

CONSTANTS = {"near": NEAR, "far": FAR, "edge_constant": EDGE_CONSTANT, "general_offset": BOUND_OFFSET}


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    input_digest: str | None = None
    results: list[AuditReport] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
            "data": self.data,
            "version": __version__,
            "constants": CONSTANTS,
        }

    def dumps(self) -> str:
        return dumps(self.to_dict())


def _read(path: str) -> tuple[CoxeterMatrix, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    return parse_diagram(text), digest(text)


def _names(spec: str) -> list[str]:
    names = [x.strip() for x in spec.split(",") if x.strip()]
    if not names:
        raise InputError("empty generator list")
    return names


def _check_known(m: CoxeterMatrix, names) -> None:
    unknown = sorted(set(names) - set(m.generators))
    if unknown:
        raise InputError(f"unknown generators: {', '.join(unknown)}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> RunReport:
    m, h = _read(args.file)
    d = m.to_diagram()
    t = classify(d)
    return RunReport("classify", h, data={
        "type": str(t), "kind": t.kind, "families": list(t.families),
        "quasi_lanner": len(d) >= 3 and is_connected(d) and is_quasi_lanner(d), "vertices": len(d),
    })


def cmd_nerve(args) -> RunReport:
    m, h = _read(args.file)
    n = build_nerve(m, cap=args.cap)
    doc = nerve_to_dict(n, enumerate_affine_flats(m, cap=args.cap))
    run = RunReport("nerve", h, data={"f_vector": list(n.complex.f_vector()), "flag": is_flag(n.complex)})
    if args.out:
        Path(args.out).write_text(dumps(doc), encoding="utf-8")
        run.data["written"] = args.out
    else:
        run.data["nerve"] = doc
    return run


def cmd_flats(args) -> RunReport:
    m, h = _read(args.file)
    flats = enumerate_affine_flats(m, cap=args.cap)
    run = RunReport("flats", h, data={
        "flats": [f.to_dict() for f in flats],
        "maximal_flat_dims": sorted({f.flat_dim for f in flats if f.maximal}),
    })
    if args.dim is not None:
        run.results.append(check_codim1_flats(m, args.dim, flats))
        run.results.append(check_flat_isolation(m, flats, args.dim))
    return run


def cmd_check_hm(args) -> RunReport:
    m, h = _read(args.file)
    n = build_nerve(m, cap=args.cap)
    flats = enumerate_affine_flats(m, cap=args.cap)
    run = RunReport("check-hm", h)
    run.results.append(is_ghs(n.complex, args.dim - 1))
    run.results.append(check_codim1_flats(m, args.dim, flats))
    run.results.append(check_flat_isolation(m, flats, args.dim))
    run.data["positions"] = {
        ",".join(f.generators): str(flat_boundary_position(n, f))
        for f in peripheral_flats(flats, args.dim) if f.flat_dim == args.dim - 1
    }
    return run


def cmd_cut(args) -> RunReport:
    m, h = _read(args.file)
    flat = _names(args.flat)
    _check_known(m, flat)
    n = build_nerve(m, cap=args.cap)
    cut = cut_along_flat(n, flat)
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.file).parent
    stem = Path(args.file).stem
    written = []
    for i, (piece, cone) in enumerate(zip(cut.pieces, cut.cone_vertex_names), 1):
        path = out_dir / f"{stem}.piece{i}.cox"
        path.write_text(format_diagram(piece.matrix, f"piece {i} of {stem}; cone vertex {cone}"), encoding="utf-8")
        written.append(str(path))
    record = {**cut.to_dict(), "files": written}
    rec_path = out_dir / f"{stem}.cut.json"
    rec_path.write_text(dumps(record), encoding="utf-8")
    run = RunReport("cut", h, data={**record, "record": str(rec_path)})
    if args.dim is not None:
        for i, piece in enumerate(cut.pieces, 1):
            run.results.append(is_ghs(piece.complex, args.dim - 1))
            run.results[-1].name = f"piece {i}: " + run.results[-1].name
    return run


def cmd_glue(args) -> RunReport:
    m1, h1 = _read(args.file1)
    m2, h2 = _read(args.file2)
    match = {}
    for pair in _names(args.match):
        if "=" not in pair:
            raise InputError(f"bad match entry {pair!r}; expected a=b")
        a, b = (x.strip() for x in pair.split("=", 1))
        match[a] = b
    _check_known(m1, match)
    _check_known(m2, match.values())
    n1, n2 = build_nerve(m1, cap=args.cap), build_nerve(m2, cap=args.cap)
    glued = glue_along_flat(n1, list(match), n2, list(match.values()), match)
    text = format_diagram(glued.matrix, f"glued from {Path(args.file1).name} and {Path(args.file2).name}")
    run = RunReport("glue", digest(h1 + h2), data={"generators": list(glued.generators)})
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        run.data["written"] = args.out
    else:
        run.data["cox"] = text
    run.data["flat_position"] = str(flat_boundary_position(glued, match))
    if args.dim is not None:
        run.results.append(is_ghs(glued.complex, args.dim - 1))
    return run


def cmd_audit(args) -> RunReport:
    m, h = _read(args.file)
    n = build_nerve(m, cap=args.cap)
    p = build_polytope(n, args.dim, strict=args.strict)
    run = RunReport(f"audit {args.kind}", h, data={"f_vector": p.f_vector().to_dict()})
    if args.kind == "rightangled":
        run.results.append(audit_face_counts(p))
    elif args.kind == "prop4":
        run.results.append(check_facet_configurations(p))
    elif args.kind == "nikulin":
        if args.i is None or args.k is None:
            raise InputError("audit nikulin needs --i and --k")
        run.results.append(audit_nikulin(p, args.i, args.k))
    elif args.kind == "weights":
        run.data["weights"] = weight_report(p)
        run.results.append(edge_weight_audit(p))
        run.results.append(good_face_audit(p))
        if args.dim >= 8:
            run.results.append(bad_ratio_audit(p))
        else:
            run.data["bad_ratio"] = "skipped: needs n >= 8"
    return run


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _fmt(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else str(x)


def cmd_bound(args) -> RunReport:
    if args.right_angled:
        run = RunReport("bound --right-angled", data={"bound": rightangled_dimension_bound()})
    else:
        C = _parse_fraction(args.C) if args.C is not None else EDGE_CONSTANT
        run = RunReport("bound --general", data={"C": C, "bound": general_bound(C)})
        run.data["note"] = "96 * 29/3 + 68 = 996; the constant 68 is used throughout"
    return run


def cmd_example(args) -> RunReport:
    if args.name == "cube":
        if args.pairs is None:
            raise InputError("example cube needs --pairs")
        m = build_rac_cube(args.pairs)
        comment = f"right-angled cube group, {args.pairs} vertical inf-pairs"
    else:
        m = build_pv_example(args.pairs or 8)
        comment = "relatively hyperbolic example: 8-pair cube with 12 extra inf-edges"
        if args.pairs and args.pairs > 8:
            comment += f", plus {args.pairs - 8} untouched pairs"
    text = format_diagram(m, comment)
    run = RunReport(f"example {args.name}", data={"digest": digest(text), "generators": len(m.generators)})
    run.data["cox"] = text
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return run


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"coxkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_cap(p):
        p.add_argument("--cap", type=int, default=None, help="enumeration cap (default: COXKIT_CAP or 500000)")
        return p

    p = sub.add_parser("classify", help="classify a diagram")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = with_cap(sub.add_parser("nerve", help="spherical subsets and flats as JSON"))
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_nerve)

    p = with_cap(sub.add_parser("flats", help="affine special subgroups"))
    p.add_argument("file")
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_flats)

    p = with_cap(sub.add_parser("check-hm", help="homology sphere, flat and boundary-position checks"))
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_check_hm)

    p = with_cap(sub.add_parser("cut", help="cut along an interior flat"))
    p.add_argument("file")
    p.add_argument("--flat", required=True)
    p.add_argument("--out-dir")
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_cut)

    p = with_cap(sub.add_parser("glue", help="glue two pieces along boundary flats"))
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--match", required=True, help="a=b,... from the first flat to the second")
    p.add_argument("--out")
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_glue)

    p = with_cap(sub.add_parser("audit", help="polytope audits"))
    p.add_argument("kind", choices=["rightangled", "nikulin", "weights", "prop4"])
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--strict", action="store_true", help="refuse maximal flats not of codimension 1")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bound", help="dimension bounds")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--right-angled", action="store_true")
    g.add_argument("--general", action="store_true")
    p.add_argument("--C", help="edge constant for --general (default 29/3)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("example", help="write an example .cox file")
    p.add_argument("name", choices=["cube", "pv"])
    p.add_argument("--pairs", type=int)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_example)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        run = args.func(args)
    except (InputError, DiagramError, ComplexError, PolytopeError, SurgeryError, ValueError) as e:
        print(f"coxkit: error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"coxkit: error: {e}", file=sys.stderr)
        return 2
    if args.command == "bound" and not args.json:
        print(_fmt(run.data["bound"]))
    elif args.command == "example" and not args.json:
        if not args.out:
            sys.stdout.write(run.data["cox"])
    else:
        sys.stdout.write(run.dumps())
    return 0 if run.passed else 1


if __name__ == "__main__":
    sys.exit(main())
