"""The ``fk`` command: deterministic JSON reports for every pipeline.

Exit codes: 0 success, 1 a check failed (or the cache is corrupt),
2 usage error, 3 resource ceiling (completion or basis enumeration gave up).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import pipeline
from .ext import ext1
from .linalg import Q
from .perm import Permutation, coset_reps_mod_klein, klein_rep
from .quiver import QuiverMismatch, gabriel_quiver, radical_layer_counts, solve_deformation
from .representations import sign_rep, two_dim_rep
from .rewrite import CompletionError, InfiniteBasisError, hilbert_profile
from .structure import generated_ideal, radical
from .suite import (SCHEMA, Check, Workspace, commutator_orbit, jsonable, radical_generator_orbit, run,
                    simple_ext_table)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _rational(text: str):
    try:
        return Q(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["D", "E"], default="D")
    common.add_argument("--n", type=int, default=4)
    common.add_argument("--a1", type=_rational, default=None, help="exact rational, e.g. 1 or -3/2")
    common.add_argument("--a2", type=_rational, default=None)
    common.add_argument("--bound", type=int, default=None, help="completion degree bound")
    common.add_argument("--cache-dir", default=None, help="defaults to $FK_CACHE_DIR; no cache if unset")
    common.add_argument("--emit", choices=["json", "dot", "text"], default="json")
    common.add_argument("--modular-precheck", choices=["on", "off"], default="on")

    p = argparse.ArgumentParser(prog="fk", description="Deformed Fomin-Kirillov algebras, verified exactly.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("dim", parents=[common], help="dimension and Hilbert profile")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=["paper", "quick"], default="quick")
    v.add_argument("--scope", choices=["s2", "s3", "all"], default="all",
                   help="s2: sign characters of D_4(1,-1); s3: two-dimensional simples of D_4(1,1)")
    e = sub.add_parser("ext", parents=[common], help="Ext^1 between two simples")
    e.add_argument("--from", dest="source", required=True, help="permutation in cycle notation, or a Coxeter word")
    e.add_argument("--to", dest="target", required=True)
    sub.add_parser("quiver", parents=[common], help="Gabriel quiver")
    sub.add_parser("radical", parents=[common], help="Jacobson radical")
    sub.add_parser("basic", parents=[common], help="basic algebra and Morita data")
    sub.add_parser("gr", parents=[common], help="radical layers of the local algebra")
    sub.add_parser("deform", parents=[common], help="filtered relations and the constants q1, q2")
    return p


def _defaults(args) -> None:
    if args.n < 3:
        raise UsageError("n must be at least 3")
    if args.family == "E":
        if args.a1 is not None or args.a2 is not None:
            raise UsageError("E_n takes no parameters")
        return
    if args.command in ("deform",):
        args.a1 = Q(1) if args.a1 is None else args.a1
        args.a2 = Q(1) if args.a2 is None else args.a2
    if args.a1 is None or args.a2 is None:
        if args.command in ("dim", "radical"):
            raise UsageError("--a1 and --a2 are required for D_n")
        args.a1 = Q(1) if args.a1 is None else args.a1
        args.a2 = Q(-1) if args.a2 is None else args.a2


def _inputs(args) -> dict:
    out = {"family": args.family, "n": args.n, "a1": args.a1, "a2": args.a2, "bound": args.bound,
           "modular_precheck": args.modular_precheck}
    for k in ("suite", "scope", "source", "target"):
        if hasattr(args, k):
            out[k] = getattr(args, k)
    return jsonable(out)


def _workspace(args) -> Workspace:
    return Workspace(pipeline.Cache.from_env(args.cache_dir), args.modular_precheck == "on")


def _algebra(args, ws: Workspace):
    pres = pipeline.presentation(args.family, args.n, args.a1, args.a2)
    if args.bound is not None:
        return pres, pipeline.finite_algebra(pres, args.bound, ws.cache)
    if args.n not in pipeline.DEFAULT_BOUND:
        raise UsageError(f"pass --bound for n = {args.n}")
    return pres, ws.algebra(args.n, args.a1, args.a2, family=args.family)


def _local_setting(args):
    if args.family != "D":
        raise UsageError("this command needs a deformed algebra (--family D)")
    try:
        pipeline.setting_for(args.n, args.a1, args.a2)
    except ValueError as exc:
        raise UsageError(str(exc))


# -- commands -------------------------------------------------------------------

def cmd_dim(args, ws):
    pres, A = _algebra(args, ws)
    return {"label": pres.label(), "dim": A.dim, "hilbert_profile": list(hilbert_profile(A))}, []


def cmd_verify(args, ws):
    results = run(ws, args.suite, args.scope)
    checks = [c for r in results for c in r.checks]
    body = {"criteria": [r.to_json() for r in results]}
    return body, checks, {f"criterion {r.number}": round(r.seconds, 3) for r in results}


def _parse_vertex(text: str, n: int, kind: str) -> Permutation:
    if kind == "two-dim":
        reps = coset_reps_mod_klein()
        names = pipeline.coxeter_names(list(reps))
        if text in names:
            return reps[names.index(text)]
        return klein_rep(Permutation.parse(text, n))
    return Permutation.parse(text, n)


def cmd_ext(args, ws):
    _local_setting(args)
    st = pipeline.setting_for(args.n, args.a1, args.a2)
    try:
        s = _parse_vertex(args.source, args.n, st.kind)
        t = _parse_vertex(args.target, args.n, st.kind)
    except ValueError as exc:
        raise UsageError(str(exc))
    make = two_dim_rep if st.kind == "two-dim" else sign_rep
    pres = pipeline.presentation("D", args.n, args.a1, args.a2)
    E = ext1(pres, make(s), make(t), s, t)
    reps = [[[str(x) for x in row] for row in v.to_rows()] for f in E.representatives for v in f.values]
    return {"from": str(s), "to": str(t), "dim": E.dim, "cocycles": len(E.Z1), "coboundaries": len(E.B1),
            "representative_values": reps}, []


def _quiver(args, ws):
    """The quiver read off the local algebra, and whether the Ext table agrees."""
    _local_setting(args)
    lp = ws.picture(args.n, args.a1, args.a2)
    fr, _ = ws.frame(args.n, args.a1, args.a2)
    names: dict = {}
    for nm, end in zip(fr.names, fr.ends):
        names.setdefault(end, []).append(nm)
    try:
        return gabriel_quiver(lp.local, simple_ext_table(ws, args.n, args.a1, args.a2), names), True
    except QuiverMismatch:
        return gabriel_quiver(lp.local, None, names), False


def cmd_quiver(args, ws):
    Qv, agrees = _quiver(args, ws)
    args.dot = Qv.to_dot()
    body = Qv.to_json()
    body.update({"arrow_count": len(Qv.arrows), "components": len(Qv.components()), "connected": Qv.is_connected()})
    return body, [Check("arrow counts agree with the Ext table", True, agrees)]


def cmd_radical(args, ws):
    pres, A = _algebra(args, ws)
    J = radical(A, ws.modular_precheck).ideal
    body = {"label": pres.label(), "dim": A.dim, "radical_dim": J.dim, "quotient_dim": A.dim - J.dim,
            "semisimple": J.dim == 0}
    checks = []
    if args.family == "D" and args.n == 4 and args.a1 == 1 and args.a2 == -1:
        checks.append(Check("ideal of the commutator orbit equals the radical", True,
                            generated_ideal(A, commutator_orbit(4)) == J))
    if args.family == "D" and args.n == 4 and args.a1 == 1 and args.a2 == 1:
        checks.append(Check("ideal of the quadratic generator orbit equals the radical", True,
                            generated_ideal(A, radical_generator_orbit(pres)) == J))
    return body, checks


def cmd_basic(args, ws):
    _local_setting(args)
    lp = ws.picture(args.n, args.a1, args.a2, need_basic=True)
    red = lp.basic
    names = lp.setting.vertex_names
    body = {"dim": red.dim, "simple_dims": red.simple_dims,
            "projective_dims": {names[v]: red.projective_dim(v) for v in red.vertices},
            "morita_total": red.morita_total()}
    return body, [Check("sum of d_u d_v dim e_u A e_v equals dim A", lp.algebra.dim, red.morita_total())]


def cmd_gr(args, ws):
    _local_setting(args)
    local = ws.picture(args.n, args.a1, args.a2).local
    counts = radical_layer_counts(local)
    body = {"local_dim": local.gamma.dim, "layer_dims": list(local.graded.dims),
            "degree_one_by_vertex": {local.vertex_names[v]: c for v, c in sorted(counts.items())}}
    return body, [Check("layers add up to the local dimension", local.gamma.dim, sum(local.graded.dims))]


def cmd_deform(args, ws):
    _local_setting(args)
    if not (args.n == 4 and args.a1 == 1 and args.a2 == 1):
        raise UsageError("the deformation is solved for D_4(1,1)")
    local = ws.picture(4, 1, 1).local
    fr, _ = ws.frame(4, 1, 1)
    d = solve_deformation(local, fr)
    return d.to_json(fr.alphabet), [Check(k, True, v) for k, v in d.checks.items()]


COMMANDS = {"dim": cmd_dim, "verify": cmd_verify, "ext": cmd_ext, "quiver": cmd_quiver, "radical": cmd_radical,
            "basic": cmd_basic, "gr": cmd_gr, "deform": cmd_deform}


def _text(report: dict) -> str:
    lines = [f"{report['command']}: {'ok' if all(c['pass'] for c in report['checks']) else 'FAILED'}"]
    for k, v in report["results"].items():
        if not isinstance(v, (dict, list)):
            lines.append(f"  {k}: {v}")
    for c in report["checks"]:
        lines.append(f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        _defaults(args)
        ws = _workspace(args)
        out = COMMANDS[args.command](args, ws)
        body, checks = out[0], out[1]
        timing = {"total": round(time.perf_counter() - t0, 3)}
        if len(out) > 2:
            timing.update(out[2])
    except UsageError as exc:
        print(f"fk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CompletionError, InfiniteBasisError, MemoryError, RecursionError) as exc:
        print(f"fk: resource ceiling: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except ValueError as exc:
        print(f"fk: {exc}", file=sys.stderr)
        return EXIT_CHECK
    report = {"schema": SCHEMA, "command": args.command, "inputs": _inputs(args), "results": jsonable(body),
              "checks": [c.to_json() for c in checks], "timing": timing}
    if args.emit == "dot" and args.command == "quiver":
        sys.stdout.write(args.dot)
    elif args.emit == "text":
        sys.stdout.write(_text(report))
    else:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"fk: check failed: {failed[0].name}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
