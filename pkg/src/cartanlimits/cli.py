"""Command-line front end.

Every subcommand prints one JSON object (sorted keys) on stdout; diagnostics
go to stderr.  Exit status: 0 success, 1 bad input, 2 internal invariant
violated (for instance the two classification pipelines disagree).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .classes import LimitClass
from .limits import (
    GAMMA,
    OracleDisagreement,
    characteristic_configuration,
    classify_abelian_subalgebra,
    describe_config,
    full_classify,
)
from .linalg import DegeneratePlaneError, Plane2, SingularMatrixError, normalizer_dimension
from .nonarch import HReal, ParseError, parse_hreal, print_hreal
from .triangle import TriangleInvariantError, shadow_config, triangle_from_matrix


class UserError(Exception):
    pass


EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))


# -- input ---------------------------------------------------------------------

def _load(text: str):
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UserError(f"invalid JSON at position {e.pos}: {e.msg}") from None


def _entry(value, where: str) -> HReal:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise UserError(f"{where}: expected an expression string, got {value!r}")
    try:
        return parse_hreal(str(value))
    except ParseError as e:
        raise UserError(f"{where}: {e}") from None
    except (ValueError, ZeroDivisionError) as e:
        raise UserError(f"{where}: {e}") from None


def _matrix(raw, name: str = "P") -> tuple:
    if isinstance(raw, dict):
        if name not in raw:
            raise UserError(f"expected an object with key {name!r}")
        raw = raw[name]
    if not (isinstance(raw, list) and len(raw) == 3 and all(isinstance(r, list) and len(r) == 3 for r in raw)):
        raise UserError(f"{name} must be a 3x3 array of expression strings")
    return tuple(tuple(_entry(x, f"{name}[{i}][{j}]") for j, x in enumerate(row)) for i, row in enumerate(raw))


def _rational(value, where: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise UserError(f"{where}: {value!r} is not a rational number") from None


def _limit_class(label: str) -> LimitClass:
    try:
        return LimitClass.parse(label)
    except ValueError as e:
        raise UserError(str(e)) from None


def _schedule(text: str | None):
    if text is None:
        return None
    try:
        out = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UserError(f"bad schedule {text!r}; expected comma separated numbers") from None
    if len(out) < 3 or any(b <= a for a, b in zip(out, out[1:])) or out[0] <= 0:
        raise UserError("schedule needs at least three increasing positive values")
    return out


def _val(x: HReal):
    return None if x.is_zero() else str(x.valuation())


def _num(x: float) -> float:
    # ten significant digits keeps the output stable across BLAS builds
    x = float(f"{x:.10g}")
    return 0.0 if x == 0 else x


# -- commands --------------------------------------------------------------------

def cmd_classify(spec) -> dict:
    P = _matrix(spec)
    try:
        tri = triangle_from_matrix(P)
    except SingularMatrixError as e:
        raise UserError(f"P is singular: {e}") from None
    report = full_classify(P)
    norm = report.normalized
    coords = {"delta": norm.delta, "epsilon": norm.epsilon, "eta": norm.eta, "alpha": norm.alpha}
    return {
        "input": {"P": [[print_hreal(x) for x in row] for row in P]},
        "valuations": {k: _val(v) for k, v in coords.items()},
        "magnitudes": {k: str(v.magnitude()) for k, v in coords.items()},
        "triangle_class": str(report.triangle_class),
        "oracle_class": str(report.oracle_class),
        "agree": report.agree,
        "config_class": shadow_config(tri).label,
        "normalizer_dim": normalizer_dimension(report.triangle_class.canonical_algebra),
    }


def cmd_subalgebra(spec) -> dict:
    raw = spec.get("basis") if isinstance(spec, dict) else spec
    if not (isinstance(raw, list) and len(raw) == 2):
        raise UserError("basis must be a list of two 3x3 matrices")
    mats = []
    for k, m in enumerate(raw):
        if not (isinstance(m, list) and len(m) == 3 and all(isinstance(r, list) and len(r) == 3 for r in m)):
            raise UserError(f"basis[{k}] must be a 3x3 array")
        mats.append(tuple(tuple(_rational(x, f"basis[{k}][{i}][{j}]") for j, x in enumerate(r))
                          for i, r in enumerate(m)))
    try:
        plane = Plane2(*mats)
        cls = classify_abelian_subalgebra(plane)
    except (DegeneratePlaneError, ValueError) as e:
        raise UserError(str(e)) from None
    return {"class": str(cls), "normalizer_dim": normalizer_dimension(plane)}


def cmd_digraph(src: str, dst: str, proper: bool = False) -> dict:
    a, b = _limit_class(src), _limit_class(dst)
    path = GAMMA.path(a, b, proper)
    return {"from": str(a), "to": str(b), "proper": proper,
            "path": None if path is None else [str(c) for c in path],
            "reachable": path is not None}


def cmd_sl2(delta: str) -> dict:
    from .sl2 import classify_sl2, shadow_fixed_points

    d = _entry(delta, "delta")
    try:
        cls = classify_sl2(d)
    except ValueError as e:
        raise UserError(str(e)) from None
    return {"delta": print_hreal(d), "class": str(cls), "fixed_points": cls.fixed_points,
            "sampled_shadow_fixed_points": shadow_fixed_points(d, 1)}


def cmd_sequence(spec, schedule=None) -> dict:
    from .numeric import DEFAULT_SCHEDULE, NoConvergence, NearSingularError, RealMatrixSeq, detect_limit_plane

    P = _matrix(spec)
    sched = schedule or list(DEFAULT_SCHEDULE)
    q = max(x.exponent_denominator for row in P for x in row)
    try:
        est = detect_limit_plane(RealMatrixSeq.from_hreal(P), sched, exponent_denominator=q)
    except NoConvergence as e:
        return {"converged": False, "reason": f"no convergence detected: {e}", "schedule": sched}
    except NearSingularError as e:
        raise UserError(str(e)) from None
    return {
        "converged": True,
        "class": str(est.limit_class),
        "schedule": sched,
        "steps": [_num(s) for s in est.steps],
        "error_bound": _num(est.error_bound),
        "plucker": [_num(x) for x in est.plucker],
    }


def cmd_config(label: str) -> dict:
    cls = _limit_class(label)
    conf = characteristic_configuration(cls)
    return {"class": str(cls), "config": conf.config.label, "points": conf.config.points,
            "lines": conf.config.lines, "description": describe_config(conf.config)}


def cmd_selftest(seed: int = 0, count: int = 20) -> dict:
    from .sampling import instances

    rows, failures = {}, []
    for row in LimitClass:
        ok = 0
        for k, inst in enumerate(instances(row, count, seed)):
            r = full_classify(inst.matrix)
            if r.triangle_class is row and r.agree:
                ok += 1
            else:
                failures.append({"row": str(row), "index": k, "triangle_class": str(r.triangle_class),
                                 "oracle_class": str(r.oracle_class)})
        rows[str(row)] = {"ok": ok, "total": count}
    return {"seed": seed, "rows": rows, "failures": failures}


# -- driver --------------------------------------------------------------------------

def _run(args) -> tuple[dict, int]:
    if args.command == "classify":
        out = cmd_classify(_load(args.spec))
        return out, EXIT_OK if out["agree"] else EXIT_INTERNAL
    if args.command == "subalgebra":
        return cmd_subalgebra(_load(args.spec)), EXIT_OK
    if args.command == "digraph":
        out = cmd_digraph(args.source, args.target, args.proper)
        return out, EXIT_OK if out["reachable"] else EXIT_USER
    if args.command == "sl2":
        return cmd_sl2(args.delta), EXIT_OK
    if args.command == "sequence":
        out = cmd_sequence(_load(args.spec), _schedule(args.schedule))
        return out, EXIT_OK if out["converged"] else EXIT_USER
    if args.command == "config":
        return cmd_config(args.label), EXIT_OK
    if args.command == "selftest":
        out = cmd_selftest(args.seed, args.count)
        return out, EXIT_INTERNAL if out["failures"] else EXIT_OK
    raise AssertionError(args.command)


def _guarded(fn, *a) -> tuple[dict, int]:
    try:
        return fn(*a)
    except UserError as e:
        return {"error": str(e)}, EXIT_USER
    except (OracleDisagreement, TriangleInvariantError) as e:
        return {"error": f"internal invariant violated: {e}"}, EXIT_INTERNAL


def _batch_line(item: tuple[str, str, str | None]) -> tuple[dict, int]:
    command, line, schedule = item

    def go():
        spec = _load(line)
        if command == "sequence":
            out = cmd_sequence(spec, _schedule(schedule))
            return out, EXIT_OK if out["converged"] else EXIT_USER
        out = cmd_classify(spec)
        return out, EXIT_OK if out["agree"] else EXIT_INTERNAL
    return _guarded(go)


def _run_batch(args) -> int:
    if args.command not in ("classify", "sequence"):
        raise UserError("--batch works with classify and sequence")
    with open(args.batch, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    items = [(args.command, ln, getattr(args, "schedule", None)) for ln in lines]
    if args.jobs == 1 or len(items) < 2:
        results = list(map(_batch_line, items))
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_line, items))
    status = EXIT_OK
    for out, code in results:
        print(dumps(out))
        status = max(status, code)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cartanlimits", description="Classify conjugacy limits of the Cartan subgroup of SL(3,R).")
    sub = ap.add_subparsers(dest="command", required=True)

    def spec_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", nargs="?", help="JSON object, '@file' or '-' for stdin")
        p.add_argument("--batch", metavar="FILE", help="JSON lines file, one input per line")
        p.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
        return p

    spec_cmd("classify", 'classify a conjugator, e.g. \'{"P": [["1","1","1"],["0","t","0"],["0","0","t"]]}\'')
    seq = spec_cmd("sequence", "numeric limit detection along n = 1/t")
    seq.add_argument("--schedule", metavar="N1,N2,...", help="values of n (default 1e4,1e5,1e6)")
    p = sub.add_parser("subalgebra", help='classify an abelian subalgebra {"basis": [X, Y]}')
    p.add_argument("spec")
    p = sub.add_parser("digraph", help="shortest path between two classes in the digraph of limits")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--proper", action="store_true", help="exclude the trivial path")
    p = sub.add_parser("sl2", help="limit of the SL2 family for a given delta")
    p.add_argument("delta")
    p = sub.add_parser("config", help="characteristic configuration of a class")
    p.add_argument("label")
    p = sub.add_parser("selftest", help="randomized agreement sweep of both pipelines")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20, help="instances per table row")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "batch", None):
            return _run_batch(args)
        if hasattr(args, "batch") and args.spec is None:
            raise UserError("missing input (give a JSON object, '@file', '-' or --batch FILE)")
        out, code = _guarded(_run, args)
    except UserError as e:
        out, code = {"error": str(e)}, EXIT_USER
    except OSError as e:
        out, code = {"error": str(e)}, EXIT_USER
    except Exception as e:  # anything else is a bug
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if "error" in out:
        print(out["error"], file=sys.stderr)
    elif code == EXIT_USER and out.get("reachable") is False:
        print("unreachable", file=sys.stderr)
    print(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
