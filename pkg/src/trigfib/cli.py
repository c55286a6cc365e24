"""Command-line front end: ``trigfib {seq,poly,sum,resistance,bench,verify}``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import _backend, kernels, resistance, sequences, verify
from .exactnum import QuadExt, format_fraction, format_quad, parse_fraction, parse_quad, quad_to_float
from .kernels import PoleError, ResolventParams, SumVariant
from .polyfam import FAMILIES, eval_float, eval_quad, eval_rational, format_coeffs

SEQ_KINDS = (
    "fib", "lucas", "pell", "pell-lucas-half", "bejaia", "pisa",
    "golden-power", "c-constant", "d-constant", "prop2-ratio",
)
SUM_VARIANTS = tuple(v.value for v in SumVariant) + ("resolvent", "wu")
ROUTES = ("exact", "float", "closed", "spectral", "all")


class UsageError(Exception):
    pass


def _fmt_float(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    return f"{x:.15g}"


def _fmt_exact(v, as_float: bool) -> str:
    if isinstance(v, QuadExt):
        return _fmt_float(quad_to_float(v)) if as_float else format_quad(v)
    if isinstance(v, Fraction):
        return _fmt_float(float(v)) if as_float else format_fraction(v)
    return _fmt_float(float(v)) if as_float else str(v)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc


def _posfloat(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _jumps(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad jump list: {text}") from exc
    if not out or any(j < 1 for j in out):
        raise argparse.ArgumentTypeError("jumps must be a nonempty list of positive integers")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="trigfib",
        description="Chebyshev/Fibonacci identities, trigonometric sums and circulant resistance.",
        allow_abbrev=False,
    )
    p.add_argument("--backend", choices=_backend.available_backends(), help="float kernel backend")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="sequence terms and golden-ratio constants", allow_abbrev=False)
    s.add_argument("--kind", required=True, choices=SEQ_KINDS)
    s.add_argument("--n", type=int, help="index (golden-power accepts negative values)")
    s.add_argument("--N", type=_pos, help="parameter N of Bejaia/Pisa numbers and C_N, D_N")
    s.add_argument("--m", type=_pos)
    s.add_argument("--ell", type=_nonneg)
    s.add_argument("--float", action="store_true", help="print decimals instead of exact values")

    s = sub.add_parser("poly", help="family polynomials", allow_abbrev=False)
    s.add_argument("--family", required=True, choices=tuple(FAMILIES))
    s.add_argument("--n", required=True, type=_nonneg)
    s.add_argument("--eval", dest="at", help="evaluate at a rational p/q or a+b*sqrt(d)")
    s.add_argument("--float", action="store_true")

    s = sub.add_parser("sum", help="trigonometric sums with their closed forms", allow_abbrev=False)
    s.add_argument("--variant", required=True, choices=SUM_VARIANTS)
    s.add_argument("--m", type=_pos)
    s.add_argument("--x", type=_rational)
    s.add_argument("--N", type=_pos)
    s.add_argument("--ell", type=_nonneg)
    s.add_argument("--beta", type=_rational, default=Fraction(0))
    s.add_argument("--s", type=complex, help="spectral parameter, e.g. 2 or 3+4j")
    s.add_argument("--lambda", dest="lam", type=_posfloat)
    s.add_argument("--float", action="store_true")

    s = sub.add_parser("resistance", help="two-point resistance on a circulant network", allow_abbrev=False)
    s.add_argument("--n", required=True, type=_pos, help="number of vertices N")
    s.add_argument("--ell", required=True, type=_nonneg, help="resistance between vertex 0 and vertex ell")
    s.add_argument("--jumps", type=_jumps, default=(1, 2))
    s.add_argument("--route", choices=ROUTES, default="all")
    s.add_argument("--conductance", type=_rational, default=Fraction(1))
    s.add_argument("--float", action="store_true")

    s = sub.add_parser("bench", help="closed form vs dense solve timing (CSV)", allow_abbrev=False)
    s.add_argument("--n", type=_pos, nargs="+", default=[100, 500, 1000, 2000])
    s.add_argument("--repeat", type=_pos, default=1)
    s.add_argument("--backends", action="store_true", help="time compiled vs pure-Python kernels instead")

    s = sub.add_parser("verify", help="run identity suites", allow_abbrev=False)
    s.add_argument("--suite", choices=verify.SUITE_NAMES + ("all",), default="all")
    s.add_argument("--n-max", type=_pos)
    s.add_argument("--tol", type=_posfloat)
    s.add_argument("--format", choices=("json", "csv", "text"), default="json")
    s.add_argument("--out", help="write the report here instead of stdout")
    s.add_argument("--jobs", type=_pos, default=1)
    return p


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind if hasattr(args, 'kind') else args.command} needs {', '.join(missing)}")


def cmd_seq(args, out) -> int:
    k = args.kind
    if k in ("fib", "lucas", "pell", "pell-lucas-half"):
        _need(args, "n")
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        val = sequences.seq_term(sequences.SeqKind(k), args.n)
    elif k in ("bejaia", "pisa"):
        _need(args, "N", "ell")
        fn = sequences.bejaia if k == "bejaia" else sequences.pisa
        val = fn(args.N, args.ell)
    elif k == "golden-power":
        _need(args, "n")
        val = sequences.golden_power(args.n)
    elif k == "c-constant":
        _need(args, "N")
        val = sequences.c_constant(args.N)
    elif k == "d-constant":
        _need(args, "N")
        val = sequences.d_constant(args.N)
    else:
        _need(args, "m", "ell")
        val = sequences.prop2_ratio(args.m, args.ell)
    print(_fmt_exact(val, args.float), file=out)
    return 0


def cmd_poly(args, out) -> int:
    p = FAMILIES[args.family](args.n)
    if args.at is None:
        print(format_coeffs(p), file=out)
        return 0
    if "sqrt" in args.at:
        x = parse_quad(args.at)
        val = eval_quad(p, x)
        print(_fmt_float(quad_to_float(val)) if args.float else format_quad(val), file=out)
        return 0
    try:
        x = parse_fraction(args.at)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --eval value {args.at!r}")
    if args.float:
        print(_fmt_float(eval_float(p, float(x))), file=out)
    else:
        print(format_fraction(eval_rational(p, x)), file=out)
    return 0


def _sum_exact(variant: SumVariant, args):
    if variant in (SumVariant.SUMEQ2, SumVariant.SUMEQ3, SumVariant.SUMEQ4, SumVariant.SEIFFERT):
        return verify._sumeq_rhs(variant.value, args.m, args.x)
    if variant in (SumVariant.SUM3, SumVariant.SUM4, SumVariant.SUM5):
        return verify._sum345_exact(variant.value, args.m)
    if variant is SumVariant.R1SUM:
        return kernels.r1_closed_cheb(args.N, args.ell)
    if variant is SumVariant.BN1SUM:
        return kernels.bn1_closed_cheb(args.N, args.ell)
    if 1 <= args.ell and 2 * args.ell < args.m:
        return sequences.prop2_ratio(args.m, args.ell) * Fraction(1, 2)
    return None


def cmd_sum(args, out) -> int:
    v = args.variant
    if v == "resolvent":
        _need(args, "m", "ell", "s")
        p = ResolventParams(args.m, args.beta, args.ell, args.s)
        print(f"spectral: {_fmt_float(kernels.resolvent_spectral(p))}", file=out)
        print(f"closed: {_fmt_float(kernels.resolvent_closed(p))}", file=out)
        s = args.s
        if s.imag == 0 and (args.beta == 0 or (args.beta == Fraction(1, 2) and args.ell == 0)):
            ex = kernels.resolvent_closed_exact(args.m, args.beta, args.ell, Fraction(s.real))
            print(f"exact: {_fmt_exact(ex, args.float)}", file=out)
        return 0
    if v == "wu":
        _need(args, "m", "ell", "lam")
        print(f"spectral: {_fmt_float(kernels.wu_spectral(args.m, args.ell, args.lam))}", file=out)
        print(f"closed: {_fmt_float(kernels.wu_closed(args.m, args.ell, args.lam))}", file=out)
        return 0
    variant = SumVariant(v)
    need = {
        SumVariant.R1SUM: ("N", "ell"),
        SumVariant.BN1SUM: ("N", "ell"),
        SumVariant.PROP2SUM: ("m", "ell"),
        SumVariant.SUM3: ("m",),
        SumVariant.SUM4: ("m",),
        SumVariant.SUM5: ("m",),
    }.get(variant, ("m", "x"))
    _need(args, *need)
    params = {n: getattr(args, n) for n in need}
    val = kernels.trig_sum(variant, **params)
    print(f"float: {_fmt_float(val)}", file=out)
    ex = _sum_exact(variant, args)
    if ex is not None:
        print(f"exact: {_fmt_exact(ex, args.float)}", file=out)
    return 0


def cmd_resistance(args, out) -> int:
    spec = resistance.CirculantSpec(args.n, args.jumps, args.conductance)
    if args.ell >= args.n:
        raise UsageError(f"--ell must be below --n ({args.n})")
    routes = ("exact", "float", "closed", "spectral") if args.route == "all" else (args.route,)
    cn12 = sorted(args.jumps) == [1, 2]
    for r in routes:
        if r in ("closed", "spectral") and not cn12:
            if args.route == "all":
                continue
            raise UsageError(f"route {r} needs --jumps 1,2")
        if r in ("closed", "spectral") and args.n < 2:
            raise UsageError("closed and spectral routes need N >= 2")
        res = resistance.effective_resistance(spec, 0, args.ell, resistance.Route(r))
        if res.value_exact is not None:
            text = _fmt_exact(res.value_exact, args.float)
        else:
            text = _fmt_float(res.value_float)
        print(f"{r}: {text}", file=out)
    return 0


def cmd_bench(args, out) -> int:
    if args.backends:
        from .benchmark import backend_rows, format_backend_csv

        out.write(format_backend_csv(backend_rows(args.n, args.repeat)))
        return 0
    rows = resistance.bench_resistance(args.n, args.repeat)
    out.write(resistance.format_bench_csv(rows))
    return 0


def cmd_verify(args, out) -> int:
    names = verify.SUITE_NAMES if args.suite == "all" else (args.suite,)
    report = verify.run_suites(names, args.n_max, args.tol, args.jobs)
    if args.format == "text":
        payload = (verify.format_summary(report) + "\n").encode()
    else:
        payload = verify.emit_report(report, args.format)
        if args.format == "json":
            payload += b"\n"
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        out.flush()
        out.buffer.write(payload) if hasattr(out, "buffer") else out.write(payload.decode())
        out.flush()
    if args.out or args.format != "text":
        print(verify.format_summary(report), file=sys.stderr)
    for c in report.failures()[:20]:
        print(f"FAIL {c.suite} {verify._params_str(c.params)}: {c.note}", file=sys.stderr)
    return 0 if report.ok else 1


COMMANDS = {
    "seq": cmd_seq,
    "poly": cmd_poly,
    "sum": cmd_sum,
    "resistance": cmd_resistance,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    previous = _backend.use_backend(args.backend) if args.backend else None
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError, PoleError, ZeroDivisionError, OverflowError) as exc:
        print(f"trigfib {args.command}: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if previous is not None:
            _backend.use_backend(previous)


def main() -> None:
    try:
        sys.stdout.reconfigure(line_buffering=True)
    except AttributeError:
        pass
    sys.exit(run())


if __name__ == "__main__":
    main()
