"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 input not positive on the
simplex, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .arith import as_rational_pair
from .bounds import (
    CLOSED_FORMS,
    BoundReport,
    ClosedFormParams,
    certified_lower_bound,
    example_family,
    example_family_upper_bound,
)
from .errors import (
    ConsistencyFailure,
    ParityViolation,
    PolySyntaxError,
    PositivityViolated,
    SimplexBoundError,
    SizeOverflow,
)
from .multipoly import parse_poly, to_text
from .oracle import GridSpec, grid_min
from .quotient import DEFAULT_MAX_DIM

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_POSITIVITY, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _exact(value: Any) -> Any:
    """Recursively turn Fractions into {"num", "den"} string pairs."""
    if isinstance(value, Fraction):
        return as_rational_pair(value)
    if isinstance(value, dict):
        return {k: _exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    return value


def output_record(command: str, inputs: dict, results: dict, diagnostics: Sequence[str] = ()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _exact(inputs),
        "results": _exact(results),
        "diagnostics": list(diagnostics),
    }


def _bound_results(rep: BoundReport) -> dict:
    inst = rep.instance
    contributions = []
    for c in rep.contributions:
        entry = {
            "face": c.face.describe(),
            "zeroed": list(c.face.zeroed),
            "hyperplane": [[lab, list(rest)] for lab, rest in c.face.hyperplane_applied],
            "dimension": c.face.dimension,
            "kind": c.kind,
            "value": c.value,
        }
        if c.params is not None:
            entry["params"] = dict(zip(("k", "d", "tau"), c.params))
        if c.note:
            entry["note"] = c.note
        contributions.append(entry)
    return {
        "instance": {"k": inst.k, "d": inst.d, "tau": inst.tau, "poly": to_text(inst.P)},
        "global_bound": rep.global_bound,
        "closed_form_full": rep.closed_form_full,
        "closed_form_simplified": rep.closed_form_simplified,
        "contributions": contributions,
    }


def cmd_bound(args) -> tuple[dict, int]:
    text = _read_poly_text(args)
    try:
        P = parse_poly(text, args.nvars)
    except (PolySyntaxError, SimplexBoundError) as exc:
        raise UsageError(f"cannot parse polynomial: {exc}") from None
    try:
        rep = certified_lower_bound(P, max_dim=args.max_dim, face_recursion=not args.no_face_recursion)
    except SizeOverflow as exc:
        raise UsageError(f"{exc}; raise --max-dim to allow it") from None
    results = _bound_results(rep)
    diagnostics = list(rep.diagnostics)
    code = EXIT_OK
    if args.verify:
        if P.nvars == 0:
            gm, point = Fraction(P.constant_term()), ()
        else:
            gm, point = grid_min(P, GridSpec(P.nvars, args.verify))
        sound = rep.global_bound is None or rep.global_bound <= gm
        results["verify"] = {"N": args.verify, "grid_min": gm, "argmin": list(point), "sound": sound}
        if gm <= 0:
            raise PositivityViolated(f"grid value {gm} at {point} is not positive")
        if not sound:
            diagnostics.append("certified bound exceeds a sampled value")
            code = EXIT_INTERNAL
    inputs = {"poly": text, "nvars": args.nvars, "max_dim": args.max_dim,
              "face_recursion": not args.no_face_recursion}
    return output_record("bound", inputs, results, diagnostics), code


def _read_poly_text(args) -> str:
    if args.file:
        if args.poly:
            raise UsageError("give the polynomial either inline or with --file, not both")
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if not args.poly:
        raise UsageError("missing polynomial")
    return args.poly


def cmd_formula(args) -> tuple[dict, int]:
    try:
        params = ClosedFormParams(args.k, args.d, args.tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = CLOSED_FORMS[args.variant](params)
    inputs = {"k": args.k, "d": args.d, "tau": args.tau, "variant": args.variant}
    results = {"value": value, "log2_den": value.denominator.bit_length() - 1}
    return output_record("formula", inputs, results), EXIT_OK


def cmd_example(args) -> tuple[dict, int]:
    try:
        P = example_family(args.k, args.d, args.tau)
    except (ParityViolation, ValueError) as exc:
        raise UsageError(str(exc)) from None
    inputs = {"k": args.k, "d": args.d, "tau": args.tau}
    results = {"poly": to_text(P), "min_upper_bound": example_family_upper_bound(args.k, args.d, args.tau)}
    return output_record("example", inputs, results), EXIT_OK


def cmd_selftest(args) -> tuple[dict, int]:
    from .selftest import SCALES, run_selftest

    if args.scale not in SCALES:
        raise UsageError(f"unknown scale {args.scale!r}; choose quick or full")
    rep = run_selftest(args.scale, seed=args.seed)
    suites = [{"name": s.name, "passed": s.passed, "failed": s.failed,
               "failures": s.failures} for s in rep.suites]
    results = {"ok": rep.ok, "suites": suites}
    record = output_record("selftest", {"scale": args.scale, "seed": args.seed}, results)
    return record, EXIT_OK if rep.ok else EXIT_INTERNAL


def _print_human(record: dict, out) -> None:
    cmd = record["command"]
    res = record["results"]

    def q(pair):
        if pair is None:
            return "none"
        return pair["num"] if pair["den"] == "1" else f"{pair['num']}/{pair['den']}"

    if cmd == "bound":
        inst = res["instance"]
        print(f"P = {inst['poly']}  (k={inst['k']}, d={inst['d']}, tau={inst['tau']})", file=out)
        print(f"certified lower bound: {q(res['global_bound'])}", file=out)
        for c in res["contributions"]:
            extra = f"  [{c['note']}]" if "note" in c else ""
            print(f"  {c['kind']:<16} {c['face']:<28} {q(c['value'])}{extra}", file=out)
        print(f"closed form (full):       {q(res['closed_form_full'])}", file=out)
        print(f"closed form (simplified): {q(res['closed_form_simplified'])}", file=out)
        if "verify" in res:
            v = res["verify"]
            pt = ", ".join(q(x) for x in v["argmin"])
            print(f"grid minimum (N={v['N']}): {q(v['grid_min'])} at ({pt}); "
                  f"{'sound' if v['sound'] else 'UNSOUND'}", file=out)
    elif cmd == "formula":
        print(q(res["value"]), file=out)
    elif cmd == "example":
        print(res["poly"], file=out)
        print(f"minimum over the simplex is at most {q(res['min_upper_bound'])}", file=out)
    elif cmd == "selftest":
        for s in res["suites"]:
            status = "ok" if s["failed"] == 0 else "FAIL"
            print(f"{status:<4} {s['name']:<22} passed={s['passed']} failed={s['failed']}", file=out)
            for f in s["failures"][:5]:
                print(f"     {f}", file=out)
    for d in record["diagnostics"]:
        print(f"note: {d}", file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexbound",
        description="Certified lower bounds for integer polynomials on the standard simplex.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="emit a JSON record")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="certified lower bound for one polynomial")
    p.add_argument("poly", nargs="?", help="polynomial, e.g. '2*X1^2 - 2*X1 + 1'")
    p.add_argument("--file", help="read the polynomial from a UTF-8 file")
    p.add_argument("--nvars", type=int, help="number of variables (default: largest index used)")
    p.add_argument("--verify", type=int, metavar="N", help="compare against the grid minimum with denominator N")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="cap on d**k (default %(default)s)")
    p.add_argument("--no-face-recursion", action="store_true", help="interior bound of P only")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("formula", help="closed-form bound for given k, d, tau")
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("tau", type=int)
    p.add_argument("variant", nargs="?", default="full", choices=sorted(CLOSED_FORMS))
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("example", help="polynomial family with a tiny minimum")
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("tau", type=int)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("selftest", help="run the randomized invariant suites")
    p.add_argument("scale", nargs="?", default="quick")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        record, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except PositivityViolated as exc:
        print(f"error: {exc}", file=err)
        return EXIT_POSITIVITY
    except ConsistencyFailure as exc:
        print(f"internal consistency failure: {exc}", file=err)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        json.dump(record, out, indent=2)
        out.write("\n")
    else:
        _print_human(record, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
