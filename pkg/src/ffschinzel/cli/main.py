"""ffschinzel command line.

Exit status: 0 when the requested place was found (or the check ran),
2 when a search ended without a witness inside its bounds, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from ..elliptic import (
    bad_set_S,
    curve_make,
    hasse_coefficient,
    hasse_invariant,
    is_ordinary_generic,
    is_torsion,
)
from ..algebra import RatFunc
from ..algebra.text import fq_to_text
from ..errors import FFSchinzelError, ParseError
from ..search import (
    SearchBounds,
    Strategy,
    find_place_ec,
    find_place_ec_ptower,
    find_place_mult,
    find_place_torus,
    siegel_table,
    verify_range,
)
from .parse import (
    parse_curve,
    parse_field,
    parse_place,
    parse_point,
    parse_ratfunc,
    parse_torus,
    parse_torus_point,
)

EXIT_OK, EXIT_ERROR, EXIT_NOT_FOUND = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "not found"
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="GF(5)", help="constant field, e.g. GF(5) or GF(25)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-place-degree", type=int, default=6)
    p.add_argument("--max-coord-degree", type=int, default=20000)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="Auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $FFSCHINZEL_SEED)")


def _range_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="target order (or start of a range)")
    p.add_argument("--n-to", type=int, default=None, help="verify every n in [n, n-to]")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ffschinzel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-mult", help="place where x has multiplicative order n")
    _common(p)
    p.add_argument("--x", required=True)
    _range_args(p)

    p = sub.add_parser("verify-ec", help="place where P has order n on the reduced curve")
    _common(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    _range_args(p)

    p = sub.add_parser("verify-ec-ptower", help="place where P has order n*p^tpow")
    _common(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    _range_args(p)
    p.add_argument("--tpow", type=int, default=1)

    p = sub.add_parser("verify-torus", help="place where a norm-one torus point has order n")
    _common(p)
    p.add_argument("--torus", required=True, help='e.g. "norm1(d = t)"')
    p.add_argument("--point", required=True, help='"(u, w)"')
    _range_args(p)

    p = sub.add_parser("siegel", help="table of h_v(nP) / h(nP)")
    _common(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--places", default=None, help='comma-separated, e.g. "inf,(t)"; default: bad set')

    p = sub.add_parser("hasse", help="coefficient of x^(p-1) in (x^3+ax+b)^((p-1)/2)")
    _common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("torsion-check", help="decide whether a point has finite order")
    _common(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    return ap


def _bounds(args) -> SearchBounds:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("FFSCHINZEL_SEED", "0"))
    return SearchBounds(
        max_place_degree=args.max_place_degree,
        max_coord_degree=args.max_coord_degree,
        strategy=Strategy(args.strategy),
        workers=args.workers,
        seed=seed,
    )


def _split_places(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [s for s in (x.strip() for x in out) if s]


def _report_text(r) -> str:
    if r.found:
        head = f"n={r.target_n}: Found place {r.place} with order {r.order}"
    else:
        head = f"n={r.target_n}: NotFoundWithinBounds"
    tail = f"[{r.strategy}, {r.places_examined} places examined, {r.elapsed_ms:.1f} ms]"
    return f"{head} {tail}" + (f" ({r.note})" if r.note else "")


def _run_search(args, engine, subject, out, **kw) -> int:
    bounds = _bounds(args)
    if args.n_to is None:
        if engine is find_place_ec_ptower:
            r = engine(*subject, args.n, kw["tpow"], bounds)
        else:
            r = engine(*subject, args.n, bounds)
        out.write((r.to_json() if args.json else _report_text(r)) + "\n")
        return EXIT_OK if r.found else EXIT_NOT_FOUND
    rr = verify_range(engine, subject, args.n, args.n_to, bounds, **kw)
    if args.json:
        doc = {"summary": rr.summary(), "reports": [r.to_dict() for r in rr.reports]}
        out.write(json.dumps(doc) + "\n")
    else:
        for r in rr.reports:
            out.write(_report_text(r) + "\n")
        s = rr.summary()
        out.write(
            f"{s['found']}/{s['admissible']} found; exceptions: {s['exceptions'] or 'none'}\n"
        )
    return EXIT_OK if not rr.exceptions else EXIT_NOT_FOUND


def _dispatch(args, out) -> int:
    spec = parse_field(args.field)
    cmd = args.command
    if cmd == "verify-mult":
        return _run_search(args, find_place_mult, (parse_ratfunc(args.x, spec),), out)
    if cmd in ("verify-ec", "verify-ec-ptower", "siegel", "torsion-check"):
        E = parse_curve(args.curve, spec)
        P = parse_point(args.point, spec)
    if cmd == "verify-ec":
        return _run_search(args, find_place_ec, (E, P), out)
    if cmd == "verify-ec-ptower":
        return _run_search(args, find_place_ec_ptower, (E, P), out, tpow=args.tpow)
    if cmd == "verify-torus":
        T = parse_torus(args.torus, spec)
        return _run_search(args, find_place_torus, (T, parse_torus_point(args.point, spec)), out)
    if cmd == "siegel":
        places = None
        if args.places:
            places = [parse_place(s, spec) for s in _split_places(args.places)]
        table = siegel_table(
            E, P, places, n_max=args.n_max, budget=args.max_coord_degree, n_min=args.n_min
        )
        if args.json:
            rows = [
                {
                    "n": r.n,
                    "place": str(r.place),
                    "h_v": r.h_v,
                    "h": r.h,
                    "ratio": "undefined" if r.ratio is None else str(r.ratio),
                }
                for r in table.rows
            ]
            out.write(json.dumps({"rows": rows, "truncated": table.truncated,
                                  "last_n": table.last_n}) + "\n")
        else:
            out.write(table.to_csv())
            if table.truncated:
                out.write(f"# truncated by the coordinate budget after n={table.last_n}\n")
        return EXIT_OK
    if cmd == "hasse":
        return _hasse(args, spec, out)
    if cmd == "torsion-check":
        torsion, order = is_torsion(E, P)
        if args.json:
            out.write(json.dumps({"torsion": torsion, "order": order}) + "\n")
        else:
            out.write(f"torsion, order {order}\n" if torsion else "non-torsion\n")
        return EXIT_OK
    raise AssertionError(cmd)


def _hasse(args, spec, out) -> int:
    a = parse_ratfunc(args.a, spec)
    b = parse_ratfunc(args.b, spec)
    if a.is_constant() and b.is_constant():
        c, ss = hasse_invariant(a.constant_value(), b.constant_value(), spec)
        text = fq_to_text(c, spec)
    else:
        E = curve_make(a, b)
        ss = not is_ordinary_generic(E)
        c = hasse_coefficient(a, b, spec.p, None, lambda n: RatFunc.from_int(spec, n))
        text = str(c)
    kind = "supersingular" if ss else "ordinary"
    if args.json:
        out.write(json.dumps({"coefficient": text, "type": kind}) + "\n")
    else:
        out.write(f"{kind}, coefficient {text}\n")
    return EXIT_OK


def _error(args_json: bool, exc: BaseException, code: str) -> int:
    obj = {"error": code, "message": str(exc)}
    if isinstance(exc, ParseError):
        obj["position"] = exc.pos
    stream = sys.stdout if args_json else sys.stderr
    stream.write(json.dumps(obj) + "\n")
    return EXIT_ERROR


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return _error(want_json, exc, "usage")
    try:
        return _dispatch(args, out)
    except FFSchinzelError as exc:
        return _error(args.json, exc, exc.code)
    except (ValueError, ZeroDivisionError) as exc:
        return _error(args.json, exc, "invalid")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
