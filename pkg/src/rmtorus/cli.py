"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .bej import BejSpec, enumerate_points, fiber_census
from .cf import (
    QuadCoeffs,
    evaluate,
    expand,
    format_cf,
    format_cf_overline,
    matrix_word,
    parse_cf,
    pell_check,
    quad_coeffs,
)
from .errors import DomainError, ParseError
from .exact import IntPolynomial, format_rational, format_surd, parse_rational, parse_surd, surd_floor
from .surface import (
    EXAMPLE_SECTION,
    EXAMPLE_SURFACE,
    CFSection,
    CMSpec,
    LegendreSurface,
    check_fiber,
    cm_row,
    legendre_b,
    picard,
    surface_matrix,
    surface_theta,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4

CLASS_NUMBER_ONE = (2, 3, 7, 11, 19, 43, 67, 163)


class VerificationFailed(Exception):
    pass


# ---- argument helpers -------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def _t_values(args) -> list[Fraction]:
    if args.t is not None:
        return [parse_rational(args.t)]
    lo, sep, hi = args.t_range.partition("..")
    if not sep:
        raise ParseError(f"t-range must look like 3..12, got {args.t_range!r}")
    try:
        return [Fraction(t) for t in range(int(lo), int(hi) + 1)]
    except ValueError as exc:
        raise ParseError(f"bad t-range {args.t_range!r}") from exc


def parse_section(text: str) -> CFSection:
    """``"-1,1;1|-2,1"``: preperiod and period polynomials split by ``;``,
    polynomials by ``|``, coefficients (constant first) by ``,``."""
    pre, sep, per = text.partition(";")
    if not sep:
        raise ParseError(f"section needs a ';' between preperiod and period: {text!r}")

    def polys(part):
        part = part.strip()
        return tuple(IntPolynomial.parse(p) for p in part.split("|")) if part else ()

    period = polys(per)
    if not period:
        raise ParseError(f"section has an empty period: {text!r}")
    return CFSection(polys(pre), period)


def format_section(section: CFSection) -> str:
    pre = "|".join(str(p) for p in section.preperiod_polys)
    per = "|".join(str(p) for p in section.period_polys)
    return f"{pre};{per}"


def _matrix_json(m) -> list[list]:
    return [[m.e11, m.e12], [m.e21, m.e22]]


# ---- commands ---------------------------------------------------------
# Each returns (human text, payload, table rows or None).


def cmd_expand(args):
    theta = parse_surd(args.surd)
    cf = expand(theta)
    payload = {
        "surd": format_surd(theta),
        "cf": format_cf(cf),
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "N": cf.N,
        "k": cf.k,
    }
    return format_cf(cf), payload, None


def cmd_eval(args):
    cf = parse_cf(args.cf)
    theta = evaluate(cf)
    payload = {"cf": format_cf(cf), "surd": format_surd(theta), "floor": surd_floor(theta)}
    return format_surd(theta), payload, None


def cmd_word(args):
    cf = parse_cf(args.cf)
    e = matrix_word(cf)
    qc = quad_coeffs(e)
    ok = pell_check(qc, e, cf.k)
    payload = {
        "cf": format_cf(cf),
        "matrix": _matrix_json(e),
        "det": e.det,
        "coeffs": [qc.A, qc.B, qc.C],
        "pell": ok,
    }
    text = f"E = {e}\ndet = {e.det}\n(A,B,C) = {qc}\npell identity: {ok}"
    return text, payload, None


CM_FIELDS = ["D", "f", "theta", "cf", "cf_overline", "k", "palindrome_ok", "picard"]


def cmd_cm_table(args):
    ds = _int_list(args.D) if args.D else list(CLASS_NUMBER_ONE)
    rows = []
    for D in ds:
        row = cm_row(CMSpec(D, args.f))
        rows.append(
            {
                "D": row.D,
                "f": row.f,
                "theta": format_surd(row.theta),
                "cf": format_cf(row.cf),
                "cf_overline": format_cf_overline(row.cf),
                "k": row.k,
                "palindrome_ok": row.palindrome_ok,
                "picard": row.picard,
            }
        )
    lines = [f"{'D':>5}  {'picard':>6}  {'pal':>3}  cf"]
    for r in rows:
        lines.append(f"{r['D']:>5}  {r['picard']:>6}  {'yes' if r['palindrome_ok'] else 'no':>3}  {r['cf_overline']}")
    return "\n".join(lines), {"rows": rows}, (CM_FIELDS, rows)


SCAN_FIELDS = ["entries", "u", "v"]


def cmd_bej_scan(args):
    spec = BejSpec(QuadCoeffs(args.A, args.B, args.C), args.N, args.k)
    points = enumerate_points(spec, args.bound, workers=args.workers)
    census = fiber_census(points)
    payload = {
        "spec": {"A": args.A, "B": args.B, "C": args.C, "N": args.N, "k": args.k, "bound": args.bound},
        "points": [{"entries": list(p.entries), "projection": list(p.projection)} for p in points],
        "census": [{"projection": list(uv), "count": n} for uv, n in census.items()],
        "total": len(points),
    }
    lines = [f"{len(points)} member point(s) with |entry| <= {args.bound}"]
    lines += [f"  {list(p.entries)} -> {p.projection}" for p in points]
    lines.append("fiber census:")
    lines += [f"  {uv}: {n}" for uv, n in census.items()]
    rows = [{"entries": " ".join(map(str, p.entries)), "u": p.projection[0], "v": p.projection[1]} for p in points]
    return "\n".join(lines), payload, (SCAN_FIELDS, rows)


def cmd_surface(args):
    if args.example:
        surface, section = EXAMPLE_SURFACE, EXAMPLE_SECTION
    else:
        if args.alpha_num is None or args.alpha_den is None:
            raise ParseError("give --alpha-num and --alpha-den, or --example")
        surface = LegendreSurface(IntPolynomial.parse(args.alpha_num), IntPolynomial.parse(args.alpha_den))
        section = None
    if args.section:
        section = parse_section(args.section)
    fibers = []
    lines = []
    for t in _t_values(args):
        entry = {"t": format_rational(t)}
        try:
            b = legendre_b(surface, t)
            m = surface_matrix(surface, t)
            theta = surface_theta(surface, t)
        except DomainError as exc:
            if args.t is not None:
                raise
            entry.update(status=type(exc).__name__, detail=str(exc))
            lines.append(f"t={t}: {type(exc).__name__}: {exc}")
            fibers.append(entry)
            continue
        cf = expand(theta)
        entry.update(
            status="ok",
            b=format_rational(b),
            matrix=_matrix_json(m.cleared()),
            theta=format_surd(theta),
            cf=format_cf(cf),
        )
        line = f"t={t}: b={b} matrix={m.cleared()} theta={format_surd(theta)} = {format_cf(cf)}"
        if section is not None:
            check = check_fiber(section, surface, t)
            entry["section"] = {
                "status": check.status,
                "literal": check.literal,
                "equivalent": check.equivalent,
                "theta": format_surd(check.section_theta) if check.section_theta else None,
            }
            line += f"  section: {check.status} literal={check.literal} equivalent={check.equivalent}"
        lines.append(line)
        fibers.append(entry)
    payload = {
        "alpha_num": list(surface.alpha_num.coeffs),
        "alpha_den": list(surface.alpha_den.coeffs),
        "fibers": fibers,
    }
    if section is not None:
        payload["section"] = format_section(section)
        payload["picard"] = picard(section)
        lines.append(f"picard number N+k = {picard(section)}")
    return "\n".join(lines), payload, None


def cmd_verify(args):
    results = run_suite(args.suite)
    payload = {
        "suite": args.suite,
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "passed": all(r.passed for r in results),
    }
    text = "\n".join(r.line() for r in results)
    if not payload["passed"]:
        raise VerificationFailed(text, payload)
    return text, payload, None


# ---- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable JSON output")
    fmt.add_argument("--csv", action="store_true", default=argparse.SUPPRESS, help="CSV output (cm-table, bej-scan)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no output, exit code only")

    parser = argparse.ArgumentParser(
        prog="rmtorus",
        description="Exact periodic continued fractions, quadratic surds and elliptic-surface invariants.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="continued fraction of a surd")
    p.add_argument("surd", help='e.g. "(0+1*sqrt(2))/1"')
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", parents=[common], help="value of a periodic continued fraction")
    p.add_argument("cf", help='e.g. "[1;2]"')
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("word", parents=[common], help="matrix word, fixed quadratic and Pell identity")
    p.add_argument("cf")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("cm-table", parents=[common], help="CM table: theta, expansion, Picard number")
    p.add_argument("--D", help="comma-separated square-free D (default: 2,3,7,11,19,43,67,163)")
    p.add_argument("--f", type=int, default=1, help="conductor (default 1)")
    p.set_defaults(func=cmd_cm_table)

    p = sub.add_parser("bej-scan", parents=[common], help="integer points of the BEJ variety")
    for name in ("A", "B", "C"):
        p.add_argument(name, type=int)
    p.add_argument("N", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_bej_scan)

    p = sub.add_parser("surface", parents=[common], help="fiber values of a Legendre surface")
    p.add_argument("--alpha-num", help="numerator coefficients, constant first (use --alpha-num=-2,1)")
    p.add_argument("--alpha-den", help="denominator coefficients, constant first")
    p.add_argument("--example", action="store_true", help="use alpha=(t-2)/(t+2) with section [t-1; 1, t-2]")
    p.add_argument("--section", help='polynomial section, e.g. --section="-1,1;1|-2,1"')
    when = p.add_mutually_exclusive_group()
    when.add_argument("--t", help="a single rational t")
    when.add_argument("--t-range", default="3..12", help="integer range lo..hi (default 3..12)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", parents=[common], help="run a self-verification suite")
    p.add_argument("suite", nargs="?", default="all", choices=["all", *SUITES])
    p.set_defaults(func=cmd_verify)
    return parser


def _write_csv(fields, rows, out):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in fields})
    out.write(buf.getvalue())


def _record(args, status, payload=None, error=None):
    argv = {k: v for k, v in vars(args).items() if k not in ("func", "json", "csv", "quiet")}
    rec = {"command": args.command, "args": argv, "status": status, "payload": payload}
    if error is not None:
        rec["error"] = error
    return json.dumps(rec, sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    as_csv = getattr(args, "csv", False)
    quiet = getattr(args, "quiet", False)
    out = sys.stdout

    def fail(code, exc, payload=None):
        name = type(exc).__name__
        if as_json and not quiet:
            out.write(_record(args, "error", payload, {"type": name, "message": str(exc.args[0])}) + "\n")
        elif not quiet:
            if payload is not None:
                # verification failure: the per-check lines are the report
                out.write(exc.args[0] + "\n")
                print(f"error: {name}", file=sys.stderr)
            else:
                print(f"error: {name}: {exc.args[0]}", file=sys.stderr)
        return code

    try:
        text, payload, table = args.func(args)
    except ParseError as exc:
        return fail(EXIT_PARSE, exc)
    except DomainError as exc:
        return fail(EXIT_DOMAIN, exc)
    except VerificationFailed as exc:
        return fail(EXIT_VERIFY, exc, exc.args[1])
    except ValueError as exc:
        # out-of-range argument values (bound < 1, N < 0, ...) are usage errors
        return fail(EXIT_PARSE, exc)

    if quiet:
        return EXIT_OK
    if as_json:
        out.write(_record(args, "ok", payload) + "\n")
    elif as_csv:
        if table is None:
            return fail(EXIT_PARSE, ParseError(f"--csv is not available for {args.command}"))
        _write_csv(*table, out)
    else:
        out.write(text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
