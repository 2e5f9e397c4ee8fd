"""Command line front end.

Thin client over the same handlers the HTTP service uses; nothing here
computes anything itself. Exit codes: 0 pass/success, 1 verification
failure or runtime error, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from time import perf_counter

from pydantic import ValidationError

from . import handlers
from .errors import (ConedecError, ParseError, RankError, ShapeError,
                     SingularMatrixError)
from .schemas import (CrossRequest, DecomposeRequest, ReciprocityRequest,
                      SnfRequest, SystemIn, UnityEvalRequest, VerifyRequest)
from .sysfile import SystemFile, load_dual_matrix, load_system

INPUT_ERRORS = (ParseError, ShapeError, RankError, SingularMatrixError,
                OSError, ValidationError, ValueError, KeyError)


def _system_in(sf: SystemFile) -> SystemIn:
    return SystemIn(n=sf.n, r=sf.r,
                    a=[[int(x) for x in sf.a.row(i)] for i in range(sf.r)],
                    b=[int(x) for x in sf.b], mode=sf.mode)


def _print_report(resp, label: str, out) -> int:
    status = "PASS" if resp.passed else "FAIL"
    print(f"{label}: {status} ({resp.checked_points} points checked, "
          f"{len(resp.failures)} failures)", file=out)
    for f in resp.failures[:10]:
        print(f"  at ({', '.join(f.point)}): expected {f.expected}, "
              f"got {f.got}", file=out)
    if len(resp.failures) > 10:
        print(f"  ... and {len(resp.failures) - 10} more", file=out)
    return 0 if resp.passed else 1


def _grid(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    lines = []
    for r in rows:
        body = "  ".join(c.rjust(w) for c, w in zip(r[:-1], widths[:-1]))
        lines.append(f"    {body}  | {r[-1].rjust(widths[-1])}")
    return lines


def cmd_decompose(args) -> int:
    sf = load_system(args.input)
    req = DecomposeRequest(system=_system_in(sf), strategy=args.strategy,
                           gf=args.gf)
    t0 = perf_counter()
    resp = handlers.handle_decompose(req)
    elapsed = 1000 * (perf_counter() - t0)
    if args.json:
        print(resp.model_dump_json(indent=2))
        return 0
    print(f"system: n={resp.n} r={resp.r} "
          f"{'homogeneous' if resp.homogeneous else 'inhomogeneous'}, "
          f"strategy {resp.strategy}")
    print(f"terms: {resp.term_count} "
          f"(per round: {' -> '.join(str(c) for c in resp.rounds)}), "
          f"elapsed {elapsed:.1f} ms")
    for k, t in enumerate(resp.terms, start=1):
        cols = "{" + ", ".join(str(c) for c in t.cols) + "}"
        print(f"term {k}: weight {t.weight}, J = {cols}")
        print("  reduced matrix (live columns | numerator):")
        for line in _grid(t.matrix):
            print(line)
        for g in t.generators:
            print("  generator: (" + ", ".join(g) + ")")
        print("  vertex: (" + ", ".join(t.vertex) + ")")
        if t.gf is not None:
            num = " + ".join(
                (f"{term.coeff}*" if term.coeff != 1 else "")
                + "y^(" + ",".join(str(e) for e in term.exponents) + ")"
                for term in t.gf.numerator) or "0"
            den = " ".join(
                "(1 - y^(" + ",".join(str(e) for e in d) + "))"
                for d in t.gf.denominator)
            print(f"  gf: [{num}] / [{den or '1'}]")
    return 0


def cmd_verify(args) -> int:
    sf = load_system(args.input)
    req = VerifyRequest(system=_system_in(sf), strategy=args.strategy,
                        box=args.box, seed=args.seed)
    resp = handlers.handle_verify(req)
    return _print_report(resp, f"pointwise check (box {args.box})", sys.stdout)


def cmd_cross(args) -> int:
    sf = load_system(args.input)
    strategies = [s for s in args.strategies.split(",") if s]
    req = CrossRequest(system=_system_in(sf), strategies=strategies,
                       points=args.points, seed=args.seed)
    resp = handlers.handle_cross(req)
    counts = ", ".join(f"{k}: {v} terms" for k, v in resp.term_counts.items())
    print(f"strategies: {counts}")
    return _print_report(resp, "cross-strategy check", sys.stdout)


def cmd_snf(args) -> int:
    sf = load_system(args.input)
    cols = [int(c) for c in args.cols.split(",") if c]
    req = SnfRequest(system=_system_in(sf), cols=cols)
    resp = handlers.handle_snf(req)
    print(f"columns {resp.cols} (permuted order {resp.perm})")
    print(f"stage scales: {resp.stage_scales}")
    print(f"pivot identity: {'ok' if resp.identity_ok else 'MISMATCH'}")
    print(f"denumerant form: {'yes' if resp.is_denumerant else 'no'}")
    print(resp.task_text, end="")
    return 0 if resp.identity_ok else 1


def cmd_reciprocity(args) -> int:
    sf = load_system(args.input)
    req = ReciprocityRequest(system=_system_in(sf), points=args.points,
                             seed=args.seed, box=args.box)
    resp = handlers.handle_reciprocity(req)
    return _print_report(resp, "reciprocity check", sys.stdout)


def _parse_point(text: str) -> list[list[float]]:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = [b.strip() for b in part.split(",")]
        if len(bits) == 1:
            out.append([float(bits[0]), 0.0])
        elif len(bits) == 2:
            out.append([float(bits[0]), float(bits[1])])
        else:
            raise ValueError(f"bad point coordinate {part!r}")
    return out


def cmd_unity_eval(args) -> int:
    bmat = load_dual_matrix(args.dual_matrix)
    req = UnityEvalRequest(dual_matrix=bmat, point=_parse_point(args.point),
                           n_trunc=args.n_trunc)
    resp = handlers.handle_unity_eval(req)
    print(f"term count: {resp.term_count}")
    print(f"value:      {resp.value[0]:+.9g} {resp.value[1]:+.9g}i")
    print(f"truncation: {resp.truncation_value[0]:+.9g} "
          f"{resp.truncation_value[1]:+.9g}i (N = {resp.n_trunc})")
    print(f"abs error:  {resp.abs_error:.3g} "
          f"(truncation tail estimate {resp.tail_estimate:.3g})")
    return 0 if resp.abs_error <= args.tol else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("conedec.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="conedec",
        description="Signed simplicial cone decompositions of the "
                    "nonnegative solutions of integer linear systems.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a system into cones")
    d.add_argument("--input", required=True, help="system file")
    d.add_argument("--strategy", choices=["s0", "s1", "s2"], default="s2")
    d.add_argument("--gf", action="store_true",
                   help="include generating functions per term")
    d.add_argument("--json", action="store_true", help="JSON output")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a decomposition pointwise")
    v.add_argument("--input", required=True)
    v.add_argument("--strategy", choices=["s0", "s1", "s2"], default="s2")
    v.add_argument("--box", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cross", help="compare strategies by exact evaluation")
    c.add_argument("--input", required=True)
    c.add_argument("--strategies", default="s0,s1,s2")
    c.add_argument("--points", type=int, default=3)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_cross)

    s = sub.add_parser("snf", help="Smith-form pipeline for chosen columns")
    s.add_argument("--input", required=True)
    s.add_argument("--cols", required=True, help="comma-separated columns")
    s.set_defaults(func=cmd_snf)

    m = sub.add_parser("reciprocity", help="reflection identity check")
    m.add_argument("--input", required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--points", type=int, default=3)
    m.add_argument("--box", type=int, default=3)
    m.set_defaults(func=cmd_reciprocity)

    u = sub.add_parser("unity-eval",
                       help="roots-of-unity evaluation of a cone's series")
    u.add_argument("--dual-matrix", required=True, help="dual matrix file")
    u.add_argument("--point", required=True,
                   help="semicolon-separated complex coordinates 're,im'")
    u.add_argument("--n-trunc", type=int, default=60)
    u.add_argument("--tol", type=float, default=1e-6)
    u.set_defaults(func=cmd_unity_eval)

    w = sub.add_parser("serve", help="run the HTTP service")
    w.add_argument("--host", default="127.0.0.1")
    w.add_argument("--port", type=int, default=8000)
    w.set_defaults(func=cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        detail = str(e) or type(e).__name__
        print(f"error: {detail}", file=sys.stderr)
        return 2
    except ConedecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
