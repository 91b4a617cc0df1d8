"""Command-line entry point: ``mordell <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import curve as cc
from .forms import BoxSpec, FormSpec, compute_T, count_points, dyadic_cubes, exponent_fit
from .heights import canonical_height, height_f, naive_height_x
from .integer_lab import sixth_power_free_sieve
from .param import DecompositionError, decompose
from .search import enumerate_points, search_nontorsion, zeta_from_records
from .survey import CSV_COLUMNS, SurveyCache, check_table, run_survey, table_rows

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str, n: int) -> list[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_like(text: str) -> int:
    """Integer, also accepting exact scientific forms like 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        f = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if f.denominator != 1:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(f)


def _point_arg(text: str) -> tuple[Fraction, Fraction]:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y with rational entries, got {text!r}")
    try:
        return Fraction(parts[0]), Fraction(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _emit_csv(header, rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)


def _curve(d: int) -> cc.MordellCurve:
    try:
        return cc.MordellCurve(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _heights_json(curve, P, tol) -> dict:
    hh = canonical_height(curve, P, tol)
    return {
        "point": cc.point_to_json(P),
        "naive_height_x": naive_height_x(P).value,
        "h_f": height_f(P).value,
        "hhat": hh.value,
        "tol": hh.tolerance,
        "torsion": cc.is_torsion(curve, P),
    }


def cmd_sieve(args, out) -> int:
    S = sixth_power_free_sieve(args.max_x)
    if args.format == "json":
        _emit_json({"X": S.bound, "size": len(S), "members": list(S.members)}, out)
    else:
        _emit_csv(None, [[d] for d in S.members], out)
    return EXIT_OK


def cmd_height(args, out) -> int:
    curve = _curve(args.d)
    P = cc.point(*args.point)
    if not curve.contains(P):
        raise UsageError(f"{P} is not on {curve}")
    res = {"d": args.d, **_heights_json(curve, P, args.tol)}
    if args.format == "json":
        _emit_json(res, out)
    else:
        keys = ["d", "naive_height_x", "h_f", "hhat", "tol", "torsion"]
        _emit_csv(keys, [[res[k] for k in keys]], out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    X, Y, Z = args.triple
    try:
        t = cc.PrimitiveTriple(X, Y, Z)
        dec = decompose(args.d, t)
    except DecompositionError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = dec.as_dict()
    if args.format == "json":
        _emit_json(res, out)
    else:
        _emit_csv(list(res), [list(res.values())], out)
    return EXIT_OK


def _zeta_json(d, recs, bound) -> dict:
    z = zeta_from_records(recs, bound)
    best = next((r for r in recs if r.point == z.witness), None)
    return {
        "d": d,
        "bound": bound,
        "outcome": z.outcome,
        "witness": None if best is None else cc.point_to_json(best.point),
        "hhat": None if best is None else best.hhat,
        "h_f": None if best is None else best.h_f,
    }


def cmd_search(args, out) -> int:
    curve = _curve(args.d)
    pts = enumerate_points(curve, args.bound)
    recs = search_nontorsion(curve, args.bound, args.tol)
    res = _zeta_json(args.d, recs, args.bound)
    res["tol"] = args.tol
    res["points"] = [_heights_json(curve, P, args.tol) for P in pts]
    if args.format == "json":
        _emit_json(res, out)
    else:
        rows = [[p["point"]["x"], p["point"]["y"], p["hhat"], p["h_f"], p["torsion"]] for p in res["points"]]
        _emit_csv(["x", "y", "hhat", "h_f", "torsion"], rows, out)
    return EXIT_OK


def cmd_zeta(args, out) -> int:
    curve = _curve(args.d)
    recs = search_nontorsion(curve, args.bound, args.tol)
    res = _zeta_json(args.d, recs, args.bound)
    res["tol"] = args.tol
    if args.format == "json":
        _emit_json(res, out)
    else:
        w = res["witness"]
        row = [res["d"], res["bound"], res["outcome"], w["x"] if w else "", w["y"] if w else "",
               "" if res["hhat"] is None else res["hhat"], "" if res["h_f"] is None else res["h_f"], res["tol"]]
        _emit_csv(["d", "bound", "outcome", "witness_x", "witness_y", "hhat", "h_f", "tol"], [row], out)
    return EXIT_OK


def cmd_survey(args, out) -> int:
    try:
        table = run_survey(
            args.max_x, args.alpha, args.epsilon, args.bound, args.tol,
            cache=SurveyCache(args.cache), jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = args.out or args.format
    if fmt == "json":
        meta = table.metadata()
        _emit_json({
            "metadata": meta,
            "counts": table.counts,
            "records": [dict(zip(CSV_COLUMNS, row)) for row in table_rows(table)],
        }, out)
    else:
        _emit_csv(CSV_COLUMNS, table_rows(table), out)
    problems = check_table(table)
    for p in problems:
        print(f"invariant violated: {p}", file=sys.stderr)
    return EXIT_INVARIANT if problems else EXIT_OK


def _count_box(args):
    F, box = args
    return count_points(F, box)


def cmd_count_form(args, out) -> int:
    try:
        F = FormSpec.parse(args.form)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.fit:
        if args.box is None:
            raise UsageError("--box B1 B2 B3 is required unless --fit is given")
        box = BoxSpec(*args.box)
        res = {"N": count_points(F, box), "T": compute_T(F, box), "V": box.V}
        if args.format == "json":
            _emit_json(res, out)
        else:
            _emit_csv(["N", "T", "V"], [[res["N"], res["T"], res["V"]]], out)
        return EXIT_OK

    boxes = dyadic_cubes(args.ladder[0], args.ladder[1])
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            counts = list(ex.map(_count_box, [(F, b) for b in boxes]))
    else:
        counts = [count_points(F, b) for b in boxes]
    try:
        fit = exponent_fit(F, boxes, counts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ref = 2 / (3 * F.degree)
    if args.format == "json":
        _emit_json({
            "boxes": [{"B": list(b.sides()), "V": b.V, "N": n} for b, n in zip(boxes, counts)],
            "slope": fit.slope, "intercept": fit.intercept, "nonsingular_exponent": ref,
            "excluded": [list(b.sides()) for b in fit.excluded],
        }, out)
    else:
        _emit_csv(["slope", "intercept", "nonsingular_exponent", "n_boxes"],
                  [[fit.slope, fit.intercept, ref, len(fit.volumes)]], out)
    return EXIT_OK


def _add(sub, name, common, text):
    return sub.add_parser(name, parents=[common], help=text, description=text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (survey, count-form)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled utilities")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="mordell", description="Heights and point counts on Mordell curves y^2 = x^3 + d.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = _add(sub, "sieve", common,
                       "S_6(X): sixth-power-free nonzero d with |d| <= X")
    s.add_argument("--max-x", type=_int_like, required=True)
    s.set_defaults(func=cmd_sieve, default_format="csv")

    s = _add(sub, "height", common,
                       "naive x-height, h_{x^3/y^2} and canonical height hhat of a point")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--point", type=_point_arg, required=True, help="x,y as rationals, e.g. 17/4,-71/8")
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_height)

    s = _add(sub, "decompose", common,
                       "parameterisation (b0, b1, d1, x1, y1) with y1^2 = b0 x1^3 + d1 b1^6")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--triple", type=lambda t: _int_list(t, 3), required=True, help="X,Y,Z")
    s.set_defaults(func=cmd_decompose)

    s = _add(sub, "search", common,
                       "all points with search height max(|b0 x1^3|, y1^2) <= B")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--bound", type=_int_like, required=True)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_search)

    s = _add(sub, "zeta", common,
                       "log zeta_d: least canonical height of a non-torsion point within the bound")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--bound", type=_int_like, required=True)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_zeta)

    s = _add(sub, "survey", common,
                       "N_alpha(X), N*_alpha(X), N_{alpha,eps}(X), N*_{alpha,eps}(X) over S_6(X)")
    s.add_argument("--max-x", type=_int_like, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--epsilon", type=float, default=0.05)
    s.add_argument("--bound", type=_int_like, default=10 ** 6)
    s.add_argument("--tol", type=float, default=1e-5)
    s.add_argument("--cache", default=None, help="NDJSON cache file (created if missing)")
    s.add_argument("--out", choices=("csv", "json"), default=None, help="alias of --format")
    s.set_defaults(func=cmd_survey, default_format="csv")

    s = _add(sub, "count-form", common,
                       "N(F; B1, B2, B3) with Heath-Brown's T and V, or a log-log exponent fit")
    s.add_argument("--form", required=True, help='monomials "coeff:e1,e2,e3;..."')
    s.add_argument("--box", type=int, nargs=3, metavar=("B1", "B2", "B3"))
    s.add_argument("--fit", action="store_true", help="fit log N against log V over dyadic cubes")
    s.add_argument("--ladder", type=float, nargs=2, default=(1e3, 1e7), metavar=("V_MIN", "V_MAX"))
    s.set_defaults(func=cmd_count_form)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    random.seed(args.seed)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"mordell {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, AssertionError) as exc:
        print(f"mordell {args.command}: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"mordell {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv=None) -> str:
    """Run the CLI and return its standard output (for scripts and tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    if code:
        raise SystemExit(code)
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
