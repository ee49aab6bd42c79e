"""Command-line front end.

Every subcommand writes a JSON report ``{schema, config, result,
certificates}`` (plus ``timings`` with ``--timings``) to ``--output`` or
stdout.  Exit codes: 0 success, 2 bad arguments, 3 precision exhausted,
4 any other domain error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
import tempfile
import time
from fractions import Fraction

from .errors import ChabautyError, DomainError, InvalidInput, PrecisionExhausted

SCHEMA = 1
_RATIONAL = re.compile(r"^\s*[+-]?\d+(/\d+)?\s*$")


class ConfigError(Exception):
    """Raised for malformed arguments; maps to exit code 2."""


# -- argument parsing helpers ----------------------------------------------------


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise ConfigError(f"{text!r} is not an exact rational (use integers or a/b)")
    return Fraction(text.strip())


def parse_curve(text: str) -> list[Fraction]:
    """Comma-separated coefficients, highest degree first."""
    parts = [t for t in text.split(",")]
    if len(parts) < 4:
        raise ConfigError("a curve needs at least four coefficients")
    return [parse_rational(t) for t in parts]


def _split_pair(text: str, sep: str = ",") -> list[str]:
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ConfigError(f"point {text!r} must be written in parentheses")
    return [s.strip() for s in t[1:-1].split(sep)]


def parse_point(text: str):
    """``(x,y)`` with exact rationals, or ``inf``."""
    if text.strip().lower() in ("inf", "infinity"):
        return None
    parts = _split_pair(text)
    if len(parts) != 2:
        raise ConfigError(f"point {text!r} must have two coordinates")
    return (parse_rational(parts[0]), parse_rational(parts[1]))


def parse_quad(text: str, d: int):
    from .exactfield import parse
    try:
        return parse(text, d)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def parse_generator(text: str) -> list:
    """``P;Q`` means ``P - Q``; ``m:P;n:Q;...`` gives explicit multiplicities."""
    pieces = [s for s in text.split(";") if s.strip()]
    if not pieces:
        raise ConfigError("empty generator")
    if all(":" not in s for s in pieces):
        if len(pieces) != 2:
            raise ConfigError("write a generator as 'P;Q' or with multiplicities 'm:P;n:Q'")
        return [(1, parse_point(pieces[0])), (-1, parse_point(pieces[1]))]
    out = []
    for s in pieces:
        mult, _, pt = s.partition(":")
        try:
            m = int(mult)
        except ValueError as exc:
            raise ConfigError(f"bad multiplicity in {s!r}") from exc
        out.append((m, parse_point(pt)))
    if sum(m for m, _ in out) != 0:
        raise ConfigError("a generator must have degree zero")
    return out


def parse_omega(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split(",")]


# -- rendering -----------------------------------------------------------------


def _q(v) -> str:
    return str(v)


def _pt(p):
    return "inf" if p is None else [_q(p[0]), _q(p[1])]


def _model(args):
    from .hyperelliptic import HyperellipticModel
    coeffs = parse_curve(args.curve)
    try:
        return HyperellipticModel.from_highest_first(coeffs)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _differential(args, genus):
    from .coleman import Differential
    if args.omega is None:
        return None
    coeffs = parse_omega(args.omega)
    # the flag is in the basis x^i dx/y; internally x^i dx/(2y)
    return Differential(tuple(2 * c for c in coeffs))


# -- subcommands -----------------------------------------------------------------


def cmd_points_mod_p(args):
    from .hyperelliptic import check_good_reduction, points_mod_p
    model = _model(args)
    pts = points_mod_p(model, args.prime, args.degree)
    rendered = [["inf", _q(pt.y)] if pt.at_infinity else [_q(pt.x), _q(pt.y)] for pt in pts]
    result = {"count": len(pts), "points": rendered}
    return result, {"good_reduction": check_good_reduction(model, args.prime)}


def cmd_disks(args):
    from .hyperelliptic import classify_disks
    model = _model(args)
    disks = classify_disks(model, args.prime)
    result = {"disks": [{"label": d.label(), "kind": d.kind, "uniformizer": d.uniformizer}
                        for d in disks]}
    kinds = {k: sum(d.kind == k for d in disks) for k in ("ordinary", "weierstrass", "infinite")}
    return result, {"counts_by_kind": kinds}


def cmd_frobenius(args):
    from .frobenius import OddModel, frobenius_matrix, point_counts, to_odd_model
    from .hyperelliptic import count_points
    model = _model(args)
    p, N = args.prime, args.precision
    if model.degree % 2 == 1 and model.leading == 1:
        odd, description = OddModel(model.coefficients, p, N), "identity"
    else:
        odd, change = to_odd_model(model, p, N)
        description = change.description
    data = frobenius_matrix(odd, N)
    L = data.zeta_numerator()
    predicted = point_counts(L, p, 2)
    counted = [count_points(odd.curve, p, k) for k in (1, 2)]
    result = {
        "odd_model": str(odd.curve),
        "coordinate_change": description,
        "precision": data.precision,
        "matrix": [[c.to_json() for c in row] for row in data.matrix],
        "zeta_numerator": L,
        "charpoly": data.charpoly(),
        "trace": data.trace(),
    }
    certs = {"lefschetz_counts": predicted, "brute_force_counts": counted,
             "counts_agree": predicted == counted, "det_valuation": data.checks["det_valuation"]}
    return result, certs


def cmd_integrate(args):
    from .coleman import Differential, integrate
    model = _model(args)
    omega = _differential(args, model.genus) or Differential.basis(1, model.genus).scale(2)
    P, Q = parse_point(args.start), parse_point(args.end)
    val = integrate(omega, P, Q, model, args.prime, args.precision, args.order)
    value = val.value
    if value.precision > args.precision:
        value = value.with_precision(args.precision)
    result = {"differential": str(omega), "from": _pt(P), "to": _pt(Q), "value": value.to_json()}
    return result, {"method": val.provenance}


def cmd_chabauty(args):
    from .chabauty import MordellWeilInput, run
    model = _model(args)
    gens = [parse_generator(g) for g in args.generator]
    rank = len(gens) if args.rank is None else args.rank
    try:
        mw = MordellWeilInput(rank, gens)
    except InvalidInput as exc:
        raise ConfigError(str(exc)) from exc
    base = parse_point(args.basepoint)
    omega = _differential(args, model.genus)
    report = run(model, args.prime, mw, base, args.precision, args.order, omega=omega)
    result = report.to_json()
    certs = {
        "strassman_counts": {l.disk.label(): l.strassman for l in report.loci},
        "total_zeros": report.total_zeros,
        "coleman_bound": report.coleman_bound,
        "bound_note": report.bound_note,
        "closed_under_involutions": report.closed_under_involutions,
        "partial": report.partial,
    }
    return result, certs


def cmd_bielliptic_verify(args):
    from .bielliptic import BiellipticModel, symbolic_identities, verify_points_over_field
    model = _model(args)
    try:
        bm = BiellipticModel.from_hyperelliptic(model)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    d = args.field
    points = []
    for text in args.point:
        parts = _split_pair(text)
        if len(parts) != 2:
            raise ConfigError(f"point {text!r} must have two coordinates")
        points.append(tuple(parse_quad(c, d) for c in parts))
    checks = verify_points_over_field(bm, d, points)
    C1, C2 = bm.quotient_curves()
    result = {
        "C1": str(C1.curve), "C2": str(C2.curve),
        "points": [{"point": [str(c) for c in ch.point], "on_curve": ch.on_curve} for ch in checks],
        "all_on_curve": all(ch.on_curve for ch in checks),
    }
    ids = symbolic_identities(bm.c3, bm.c2, bm.c1, bm.c0)
    return result, {"symbolic_identities": ids}


def _parse_proj(text: str, d: int):
    from .brings import ProjPoint5
    parts = _split_pair(text, ":")
    if len(parts) != 5:
        raise ConfigError(f"{text!r} must have five coordinates separated by ':'")
    try:
        return ProjPoint5([parse_quad(c, d) for c in parts], d)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_brings_verify(args):
    from .brings import (E_RATIONAL_POINTS, AtInfinity, quotient_to_eprime, s3_filter, trace_on_e,
                         verify_brings)
    rows = []
    for text in args.point:
        pt = _parse_proj(text, args.field)
        traces, lands = {}, True
        for pair in itertools.combinations(range(5), 2):
            try:
                quotient_to_eprime(pt, pair)
            except AtInfinity:
                traces[f"{pair[0] + 1}{pair[1] + 1}"] = "dehomogenization at infinity"
                continue
            tr = trace_on_e(pt, pair)
            lands = lands and tr in E_RATIONAL_POINTS
            traces[f"{pair[0] + 1}{pair[1] + 1}"] = _pt(tr)
        rows.append({"point": pt.to_json(), "on_curve": verify_brings(pt),
                     "s3_constraints": s3_filter(pt), "traces_on_E": traces,
                     "traces_in_E_Q": lands})
    return {"points": rows}, {"all_on_curve": all(r["on_curve"] for r in rows)}


def cmd_brings_search(args):
    from .brings import bounded_quadratic_search
    res = bounded_quadratic_search(args.disc_bound, args.height_bound)
    return res.to_json(), {"orbit_sizes": res.orbit_sizes}


COMMANDS = {
    "points-mod-p": cmd_points_mod_p,
    "disks": cmd_disks,
    "frobenius": cmd_frobenius,
    "integrate": cmd_integrate,
    "chabauty": cmd_chabauty,
    "bielliptic-verify": cmd_bielliptic_verify,
    "brings-verify": cmd_brings_verify,
    "brings-search": cmd_brings_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-chabauty",
                                     description="Chabauty-Coleman computations on genus-2 curves")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, curve=True, prime=True, precision=False):
        if curve:
            sp.add_argument("--curve", required=True,
                            help="coefficients of g, highest degree first, e.g. '-1,0,-9,0,-11,0,37'")
        if prime:
            sp.add_argument("--prime", type=int, required=True)
        if precision:
            sp.add_argument("--precision", type=int, default=11, help="p-adic digits N")
            sp.add_argument("--order", type=int, default=12, help="series truncation order M")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings")

    sp = sub.add_parser("points-mod-p", help="points of the reduction over F_{p^k}")
    common(sp)
    sp.add_argument("--degree", type=int, default=1, help="extension degree k")

    sp = sub.add_parser("disks", help="residue disks at p")
    common(sp)

    sp = sub.add_parser("frobenius", help="Frobenius matrix and zeta numerator")
    common(sp, precision=True)

    sp = sub.add_parser("integrate", help="Coleman integral between two points")
    common(sp, precision=True)
    sp.add_argument("--from", dest="start", required=True, help="'(x,y)' or 'inf'")
    sp.add_argument("--to", dest="end", required=True, help="'(x,y)' or 'inf'")
    sp.add_argument("--omega", help="coefficients c_i of sum c_i x^i dx/y (default: x dx/y)")

    sp = sub.add_parser("chabauty", help="full Chabauty-Coleman run")
    common(sp, precision=True)
    sp.add_argument("--generator", action="append", default=[],
                    help="Mordell-Weil generator 'P;Q' meaning P - Q (repeatable)")
    sp.add_argument("--rank", type=int, help="Mordell-Weil rank (default: number of generators)")
    sp.add_argument("--basepoint", required=True, help="rational base point '(x,y)' or 'inf'")
    sp.add_argument("--omega", help="use this differential instead of the annihilator")

    sp = sub.add_parser("bielliptic-verify", help="quotients and exact point checks")
    common(sp, prime=False)
    sp.add_argument("--field", type=int, default=-1, help="d for Q(sqrt d); s denotes sqrt d")
    sp.add_argument("--point", action="append", default=[], help="'(a+b*s,c+e*s)' (repeatable)")

    sp = sub.add_parser("brings-verify", help="check points of Bring's curve")
    common(sp, curve=False, prime=False)
    sp.add_argument("--field", type=int, default=-1)
    sp.add_argument("--point", action="append", required=True,
                    help="'(x1:x2:x3:x4:x5)' with coordinates a+b*s (repeatable)")

    sp = sub.add_parser("brings-search", help="bounded search for quadratic points")
    common(sp, curve=False, prime=False)
    sp.add_argument("--disc-bound", type=int, default=5, help="bound on |disc K|")
    sp.add_argument("--height-bound", type=int, default=2)
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "timings")}
    return json.loads(json.dumps(cfg, default=str))


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if getattr(args, "output", None):
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


# flags whose values may start with '-' (negative coefficients and points)
_VALUE_FLAGS = ("--curve", "--generator", "--basepoint", "--from", "--to", "--omega", "--point")


def _glue(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    payload = {"schema": SCHEMA, "command": args.command, "config": _config(args)}
    try:
        result, certs = COMMANDS[args.command](args)
    except ConfigError as exc:
        payload["error"] = {"type": "ConfigError", "message": str(exc)}
        _emit(args, payload)
        return 2
    except PrecisionExhausted as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc),
                            "shortfall": exc.shortfall}
        _emit(args, payload)
        return 3
    except ChabautyError as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(args, payload)
        return 4
    payload["result"] = result
    payload["certificates"] = certs
    if args.timings:
        payload["timings"] = {"total_seconds": round(time.perf_counter() - start, 3)}
    _emit(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
