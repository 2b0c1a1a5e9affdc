"""``heckoid`` command line.

Exit codes: 0 success, 1 domain error (outside a theorem's range), 2 usage
error, 3 numerical failure.  Errors go to stderr as one JSON line
``{"code": ..., "message": ...}``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import epi, orbits, representation, words
from .errors import (DomainError, HeckoidError, NoGeometricCandidate, NumericalError,
                     OddIndexUnsupported)
from .farey import INF, Slope

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report emission

def _round(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        return float(format(x, ".15g"))
    if isinstance(x, complex):
        return [_round(x.real), _round(x.imag)]
    if isinstance(x, Slope):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def emit_report(result, fmt: str = "json") -> bytes:
    """Serialize a dict or a list of row dicts; field order is preserved."""
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    data = _round(result)
    if fmt == "json":
        return (json.dumps(data) + "\n").encode()
    rows = data if isinstance(data, list) else [data]
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(list(rows[0]))
            for row in rows:
                w.writerow([_cell(v) for v in row.values()])
        return buf.getvalue().encode()
    lines = []
    for row in rows:
        if isinstance(data, list):
            lines.append(" ".join(f"{k}={_cell(v)}" for k, v in row.items()))
        else:
            lines.extend(f"{k}: {_cell(v)}" for k, v in row.items())
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------------------
# argument helpers

def _slope(text: str) -> Slope:
    try:
        return Slope.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a slope: {text!r}") from exc


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def index_m(args) -> int:
    """Normalize ``--n`` (integer or half-integer like ``3/2``) or ``--m`` to ``m``."""
    if args.m is not None:
        m = args.m
    elif args.n is not None:
        try:
            twice = 2 * Fraction(args.n)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--n {args.n!r} is not a number") from exc
        if twice.denominator != 1:
            raise UsageError(f"--n {args.n} must be an integer or a half-integer")
        m = int(twice)
    else:
        raise UsageError("one of --n or --m is required")
    if m < 3:
        raise UsageError(f"index must satisfy m = 2n >= 3, got m = {m}")
    return m


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(a):
    return orbits.classify_loop(a.s, a.r, index_m(a)).to_dict()


def cmd_reduce(a):
    m = index_m(a)
    return {"s": a.s, "rep": orbits.reduce_slope(a.s, a.r, m)}


def cmd_same_orbit(a):
    m = index_m(a)
    x, y = orbits.reduce_many([a.s, a.s2], a.r, m)
    return {"s": a.s, "s2": a.s2, "same": x == y, "rep": x, "rep2": y}


def cmd_epi_check(a):
    return epi.admits_epimorphism(a.s, a.r, index_m(a)).to_dict()


def cmd_epi_enum(a):
    return [{"s": s} for s in epi.enumerate_epi_sources(a.r, index_m(a), a.max_den)]


def cmd_riley(a):
    params = epi.RileyFamilyParams(a.alpha, a.beta, a.d, index_m(a), a.e)
    s = epi.riley_family(params)
    res = epi.admits_epimorphism(s, params.target, params.m)
    return {"s": s, "target": params.label, "r": params.target, "admits": res.admits}


def cmd_word(a):
    out = {"r": a.r, "u": words.u_word(a.r), "length": 2 * a.r.den}
    if a.n is not None or a.m is not None:
        m = index_m(a)
        if m % 2:
            raise UsageError("the relator power needs an integer n")
        out["relator"] = words.relator_presentation(a.r, m // 2)[1]
    return out


def _integer_n(a) -> int:
    m = index_m(a)
    if m % 2:
        raise UsageError("small cancellation needs an integer n")
    return m // 2


def cmd_smallcanc(a):
    return words.check_small_cancellation(a.r, _integer_n(a)).to_dict()


def cmd_subword(a):
    n = _integer_n(a)
    return {"s": a.s, "r": a.r, "n": n, "passes": words.required_subword_check(a.s, a.r, n)}


def cmd_roots(a):
    m = index_m(a)
    rows = []
    for sign, z, res in representation._roots_hp(a.r, m):
        z = complex(z)
        rows.append({"re": z.real, "im": z.imag, "sign": sign, "residual": res})
    return rows


def _point(a):
    m = index_m(a)
    if a.omega is not None:
        return representation.representation_point(a.r, m, a.omega)
    return representation.select_geometric_root(a.r, m)


def cmd_mcshane(a):
    if index_m(a) % 2:
        raise OddIndexUnsupported("the McShane-type identity needs an integer index n")
    rp = _point(a)
    rep = representation.mcshane_sum(rp, a.max_den)
    d = rep.to_dict()
    keys = ["r", "m", "omega", "sign", "partial_sums", "final", "boundary_terms", "warnings"]
    return {k: d[k] for k in keys}


def cmd_limitset(a):
    pts = representation.limit_set_sample(a.r, index_m(a), a.depth)
    return [{"exact_slope": p.slope, "float_value": p.value, "seed": p.seed,
             "word_length": p.word_length} for p in pts]


def cmd_oracle(a):
    m = index_m(a)
    got = orbits.orbit_bfs_oracle(a.s, a.r, m, a.depth, a.max_den)
    return [{"s": s} for s in sorted(got)]


# name -> (handler, help, options, default format)
COMMANDS = {
    "classify": (cmd_classify, "null-homotopic / torsion / essential class of the loop of slope s "
                 "(even index; conjugacy and torsion theorems)", ("s",), "json"),
    "reduce": (cmd_reduce, "unique representative of s in I(r;n) + {inf, r} "
               "(fundamental-domain theorem)", ("s",), "json"),
    "same-orbit": (cmd_same_orbit, "whether the loops of slopes s and s2 are homotopic "
                   "(same orbit under the Heckoid reflection group)", ("s", "s2"), "json"),
    "epi-check": (cmd_epi_check, "upper-meridian-pair-preserving epimorphism G(K(s)) -> Hecke(r;n) "
                  "(s or s+1 in the orbit of infinity)", ("s",), "json"),
    "epi-enum": (cmd_epi_enum, "all s in (0,1) up to --max-den admitting the epimorphism "
                 "(even index: characterization)", ("max_den",), "json"),
    "riley-family": (cmd_riley, "Riley's slopes beta*/alpha* and their epimorphisms",
                     ("riley",), "json"),
    "word": (cmd_word, "relator u_r of the 2-bridge link group (and u_r^n)", (), "json"),
    "smallcanc": (cmd_smallcanc, "C(4n) and T(4) for the symmetrized closure of u_r^n", (), "json"),
    "subword-filter": (cmd_subword, "necessary condition for u_s = 1: (u_s) contains a subword of "
                       "(u_r^{+-n}) made of 4n-1 pieces", ("s",), "json"),
    "roots": (cmd_roots, "roots of the Heckoid polynomials tr(u_r) -+ 2cos(2pi/m)", (), "json"),
    "mcshane": (cmd_mcshane, "McShane-type sum over the fundamental interval (converges to -1)",
                ("max_den", "omega"), "json"),
    "limitset": (cmd_limitset, "orbit samples of {r, r1, r2, 0, 1} approximating the limit set",
                 ("depth",), "csv"),
    "oracle": (cmd_oracle, "breadth-first orbit closure of s, independent of the reduction",
               ("s", "depth", "max_den"), "json"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heckoid", description="Heckoid orbifolds: orbits, epimorphisms, "
                     "small cancellation and parabolic representations.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_text, opts, default_fmt) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name != "riley-family":
            p.add_argument("--r", type=_slope, required=True, help="slope r = q/p in (0, 1)")
        idx = p.add_mutually_exclusive_group(required=name not in ("word", "riley-family"))
        idx.add_argument("--n", help="Heckoid index n (integer or half-integer, e.g. 3/2)")
        idx.add_argument("--m", type=int, help="Riley index m = 2n")
        if "s" in opts:
            default = INF if name == "oracle" else None
            p.add_argument("--s", type=_slope, required=name != "oracle", default=default,
                           help="slope s (1/0 or inf for infinity)")
        if "s2" in opts:
            p.add_argument("--s2", type=_slope, required=True)
        if "max_den" in opts:
            p.add_argument("--max-den", type=int, default=40 if name == "mcshane" else 100)
        if "depth" in opts:
            p.add_argument("--depth", type=int, default=6 if name == "limitset" else 10)
        if "omega" in opts:
            p.add_argument("--omega", type=_complex, help="override the geometric root, e.g. -1.63+0.98j")
        if "riley" in opts:
            for flag in ("--alpha", "--beta", "--d", "--e"):
                p.add_argument(flag, type=int, required=True)
        p.add_argument("--format", default=default_fmt, help="json, csv or text")
    return parser


def _fail(code: str, message: str, status: int, extra=None) -> int:
    obj = {"code": code, "message": message}
    if extra:
        obj.update(extra)
    sys.stderr.write(json.dumps(_round(obj)) + "\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.format not in FORMATS:
            raise UsageError(f"unknown format {args.format!r}; choose from {', '.join(FORMATS)}")
        result = COMMANDS[args.command][0](args)
        out = emit_report(result, args.format)
    except UsageError as exc:
        return _fail("usage_error", str(exc), 2)
    except NoGeometricCandidate as exc:
        return _fail(exc.code, str(exc), 3, {"diagnostics": exc.diagnostics})
    except NumericalError as exc:
        return _fail(exc.code, str(exc), 3)
    except DomainError as exc:
        return _fail(exc.code, str(exc), 1)
    except HeckoidError as exc:
        return _fail(exc.code, str(exc), 3)
    except ValueError as exc:
        return _fail("usage_error", str(exc), 2)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
