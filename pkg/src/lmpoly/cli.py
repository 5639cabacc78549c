"""Command-line interface.

Commands: eval, coeffs, verify, zeros, real-zeros, stacks, surface, qeval,
qzeros.  Exit codes: 0 ok, 1 error (including usage), 2 verification
failure.  Runs are reproducible: the same arguments produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families, identities, matfun, modes, polynomials, qlambda, zeros
from .errors import LmpError, ModeError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


class CliError(LmpError):
    pass


def _parse_r(text, mode):
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            m = matfun.cmatrix_from_json(json.load(fh))
        if mode.exact:
            raise CliError("exact mode requires scalar integer R, got a matrix file")
        if m.dim == 1 and not isinstance(m.item(), complex):
            return m.item()
        return m
    val = modes.parse_scalar(text)
    if mode.exact:
        if val.denominator != 1:
            raise CliError(f"exact mode requires scalar integer R, got {text}")
        return int(val)
    if val.denominator == 1:
        return int(val)
    return val


def _parse_value(text, mode, name):
    try:
        val = modes.parse_scalar(text)
    except ValueError:
        raise CliError(f"could not parse --{name} value {text!r} (use p/q or a decimal)") from None
    return val if mode.exact else float(val)


def _parse_n_range(args):
    if args.n_range:
        a, _, b = args.n_range.partition(":")
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise CliError(f"bad --n-range {args.n_range!r}, expected a:b") from None
        if lo > hi:
            raise CliError("--n-range must be nondecreasing")
        return range(lo, hi + 1)
    if args.n is None:
        raise CliError("need --n or --n-range")
    return range(args.n, args.n + 1)


def _fmt_scalar(v, mode):
    if mode.exact:
        return str(Fraction(v))
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return float(v)


def _value_obj(v, mode):
    if isinstance(v, matfun.CMatrix):
        return matfun.cmatrix_to_json(v, exact=mode.exact)
    return _fmt_scalar(v, mode)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


_GNUPLOT = """set datafile separator ','
set key off
{style}
plot '{csv}' using {using} with {kind}
pause -1
"""


def _write_gnuplot(path, csv_path, using, kind, style=""):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_GNUPLOT.format(csv=csv_path, using=using, kind=kind, style=style))


def _add_common(p, need_family=True):
    if need_family:
        p.add_argument("--family", required=True,
                       help="gh:m | hermite | lag | glag:m | te | custom:<path.json>")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="inclusive range a:b")
    p.add_argument("--R", required=True, help="int, p/q, or @matrix.json")
    p.add_argument("--x", default="0")
    p.add_argument("--y", default="0")
    p.add_argument("--z", default="0")
    p.add_argument("--t", default="0")
    p.add_argument("--q", default="1/2")
    p.add_argument("--mode", default="exact", help="exact | f64 | mp:<bits>")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--gnuplot", help="also write a gnuplot script referencing the CSV")


def build_parser():
    ap = _Parser(prog="lmp", description="two-variable general lambda-matrix polynomials")
    sub = ap.add_subparsers(dest="command", required=True)

    for name in ("eval", "coeffs", "zeros", "real-zeros", "stacks", "surface"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "eval":
            p.add_argument("--coeffs-file", help="evaluate a coefficient dump instead")
            p.add_argument("--route", default="series",
                           choices=("series", "convolution", "umbral", "determinant"))
        if name in ("zeros", "real-zeros", "stacks"):
            p.add_argument("--bits", type=int, help="override working precision")
        if name == "surface":
            p.add_argument("--x-range", default="-5:5")
            p.add_argument("--y-range", default="-5:5")
            p.add_argument("--resolution", type=int, default=40)

    p = sub.add_parser("verify")
    _add_common(p)
    p.add_argument("--suite", default="all",
                   help="comma list of " + ", ".join(identities.SUITE_NAMES) + ", or all")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=2024)

    for name in ("qeval", "qzeros", "qsurface"):
        p = sub.add_parser(name)
        _add_common(p, need_family=False)
        if name == "qzeros":
            p.add_argument("--bits", type=int)
        if name == "qsurface":
            p.add_argument("--x-range", default="-5:5")
            p.add_argument("--y-range", default="-5:5")
            p.add_argument("--resolution", type=int, default=40)
    return ap


def _span(text):
    a, _, b = text.partition(":")
    return (float(Fraction(a)), float(Fraction(b)))


def _json_dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    mode = modes.parse_mode(args.mode)
    r_param = _parse_r(args.R, mode)
    fam = families.parse_family(args.family) if getattr(args, "family", None) else None
    x = _parse_value(args.x, mode, "x")
    y = _parse_value(args.y, mode, "y")

    if args.command == "eval":
        if args.coeffs_file:
            with open(args.coeffs_file, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
            xp = _xpoly_from_json(obj)
            val = xp(x)
        else:
            n = _parse_n_range(args)[0]
            route = {"series": polynomials.lambda2v_series,
                     "convolution": polynomials.lambda2v_convolution,
                     "umbral": polynomials.lambda2v_umbral,
                     "determinant": polynomials.determinant_form}[args.route]
            val = route(n, x, y, r_param, fam, mode)
        if mode.exact and not isinstance(val, matfun.CMatrix):
            _emit(str(Fraction(val)) + "\n", args.out)
        else:
            _emit(_json_dump(_value_obj(val, mode)), args.out)
        return 0

    if args.command == "coeffs":
        n = _parse_n_range(args)[0]
        xp = polynomials.to_xpoly(n, y, r_param, fam, mode)
        obj = {"n": n, "y": _fmt_scalar(y, mode), "R": _value_obj(r_param, mode),
               "family": str(fam), "mode": str(mode),
               "coeffs": [_value_obj(c, mode) for c in xp.coeffs]}
        _emit(_json_dump(obj), args.out)
        return 0

    if args.command == "verify":
        names = identities.SUITE_NAMES if args.suite == "all" else tuple(
            s.strip() for s in args.suite.split(","))
        reports = identities.run_suites(names, fam, args.n_max, r_param, mode, args.seed)
        _emit(_json_dump([r.as_json_obj() for r in reports]), args.out)
        return 0 if all(r.passed for r in reports) else 2

    if args.command in ("zeros", "real-zeros", "stacks"):
        bits = args.bits or (modes.parse_mode(args.mode).bits if args.mode.startswith("mp") else None)
        nr = _parse_n_range(args)
        if args.command == "zeros":
            rows = []
            for n in nr:
                zs = zeros.zeros_of_lambda(fam, n, r_param, y, bits)
                rows.extend((n, z.real, z.imag, res) for z, res in zip(zs.roots, zs.residuals))
            text = _csv("n,re,im,residual", rows)
            using, kind = "2:3", "points"
        elif args.command == "real-zeros":
            rows = zeros.real_zeros_table(fam, r_param, y, nr, bits)
            text = _csv("n,x", rows)
            using, kind = "1:2", "points"
        else:
            rows = zeros.zero_stacks(fam, r_param, y, nr, bits)
            text = _csv("n,re,im", rows)
            using, kind = "2:3:1", "points palette"
        _emit(text, args.out)
        if args.gnuplot:
            if not args.out:
                raise CliError("--gnuplot needs --out so the script can reference the CSV")
            _write_gnuplot(args.gnuplot, args.out, using, kind)
        return 0

    if args.command == "surface":
        n = _parse_n_range(args)[0]
        rows = zeros.surface_grid(fam, n, r_param, _span(args.x_range), _span(args.y_range),
                                  args.resolution)
        text = _csv("x,y,value", rows)
        _emit(text, args.out)
        if args.gnuplot:
            if not args.out:
                raise CliError("--gnuplot needs --out so the script can reference the CSV")
            _write_gnuplot(args.gnuplot, args.out, "1:2:3", "lines",
                           style="set dgrid3d 40,40\nset hidden3d\nset pm3d")
        return 0

    ctx = qlambda.QContext(modes.parse_scalar(args.q) if mode.exact else float(Fraction(args.q)))
    if args.command == "qeval":
        n = _parse_n_range(args)[0]
        val = qlambda.q_hermite_lambda(n, x, y, r_param, ctx)
        if mode.exact and not isinstance(val, matfun.CMatrix):
            _emit(str(Fraction(val)) + "\n", args.out)
        else:
            _emit(_json_dump(_value_obj(val, mode)), args.out)
        return 0

    if args.command == "qzeros":
        rows = []
        for n in _parse_n_range(args):
            zs = zeros.zeros_of_q_hermite_lambda(n, r_param, y, ctx, args.bits)
            rows.extend((n, z.real, z.imag, res) for z, res in zip(zs.roots, zs.residuals))
        _emit(_csv("n,re,im,residual", rows), args.out)
        return 0

    if args.command == "qsurface":
        n = _parse_n_range(args)[0]
        rows = zeros.q_surface_grid(n, r_param, ctx, _span(args.x_range), _span(args.y_range),
                                    args.resolution)
        _emit(_csv("x,y,value", rows), args.out)
        return 0

    raise CliError(f"unhandled command {args.command}")


def _xpoly_from_json(obj):
    def parse_val(v):
        if isinstance(v, dict):
            if "dim" in v:
                return matfun.cmatrix_from_json(v)
            return complex(v["re"], v["im"])
        if isinstance(v, str):
            return Fraction(v)
        return v

    coeffs = tuple(parse_val(c) for c in obj["coeffs"])
    return polynomials.XPoly(obj["n"], parse_val(obj["y"]), parse_val(obj["R"]),
                             obj.get("family"), coeffs)


def main(argv=None) -> int:
    try:
        return run(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LmpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
