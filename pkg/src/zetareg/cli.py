"""``regprod`` command line tool.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precision
exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from dataclasses import asdict, dataclass

from . import regprod as rp
from . import specialfns as sf
from . import tmdirichlet as tm
from . import verify
from .mpcore import (
    ApproxComplex,
    ApproxReal,
    DomainError,
    InsufficientAccuracy,
    PrecisionContext,
    _exact_decimal,
    _format_decimal,
    format_radius,
    to_decimal_truncated,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
DEFAULT_BITS = 256
DEFAULT_DIGITS = 30
MAX_BITS = verify.MAX_BITS

CONSTANTS = ("q", "phi", "euler_gamma", "glaisher", "g_prime0", "f_prime0")
_CONSTANT_METHODS = {
    "q": "exp(-g'(0))",
    "phi": "2^(-1/2) e^gamma / Q",
    "euler_gamma": "Brent-McMillan",
    "glaisher": "exp(1/12 - zeta'(-1))",
    "g_prime0": "functional-equation series",
    "f_prime0": "functional-equation series",
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class OutputRecord:
    name: str
    value: str
    error_bound: str
    digits: int
    method: str
    elapsed_ms: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)


# ---------------------------------------------------------------------------
# parsing

_COMPLEX_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+))
    (?:(?P<sign>[+-])(?P<im>\d+(?:\.\d*)?|\.\d+)?i)?
    \s*$""",
    re.VERBOSE,
)


def parse_complex(text: str, ctx: PrecisionContext):
    """Parse ``<re>[+|-]<im>i``; returns an mpf when there is no imaginary part."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise UsageError(f"cannot parse complex number {text!r} (expected e.g. 0.5+14i)")
    mp = ctx.mp
    re_part = mp.mpf(m["re"])
    if m["sign"] is None:
        return re_part
    im_part = mp.mpf(m["im"] or "1")
    if m["sign"] == "-":
        im_part = -im_part
    if im_part == 0:
        return re_part
    return mp.mpc(re_part, im_part)


def _bits_from_env(flag: int | None) -> int:
    if flag is not None:
        bits = flag
    else:
        raw = os.environ.get("REGPROD_PRECISION_BITS")
        if raw is None:
            bits = DEFAULT_BITS
        else:
            try:
                bits = int(raw)
            except ValueError:
                raise UsageError(f"REGPROD_PRECISION_BITS must be an integer, got {raw!r}")
    if not 64 <= bits <= MAX_BITS:
        raise UsageError(f"precision must be between 64 and {MAX_BITS} bits")
    return bits


# ---------------------------------------------------------------------------
# rendering


def render_real(x: ApproxReal, digits: int) -> str:
    """Certified leading digits; exact values print in full."""
    if x.error_radius == 0:
        d = _exact_decimal(x.value).normalize()
        if len(d.as_tuple().digits) <= digits:
            return _format_decimal(d)
    return to_decimal_truncated(x, digits)


def render_complex(z: ApproxComplex, digits: int) -> str:
    re_s = render_real(z.re, digits)
    if z.im.error_radius == 0 and z.im.value == 0:
        return re_s
    im_s = render_real(z.im, digits)
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    return f"{re_s}{im_s}i"


def _needed_bits(digits: int) -> int:
    return math.ceil((digits + 4) * math.log2(10)) + 8


def _with_precision(bits: int, digits: int, compute):
    """Run ``compute(ctx) -> (record_fields, ...)`` raising precision until rendering succeeds."""
    while bits < _needed_bits(digits):
        bits *= 2
    while bits <= MAX_BITS:
        ctx = PrecisionContext(bits)
        try:
            return compute(ctx)
        except InsufficientAccuracy:
            bits *= 2
    raise verify.PrecisionExhausted(f"{digits} digits need more than {MAX_BITS} bits")


# ---------------------------------------------------------------------------
# commands


def _constant_value(name: str, ctx: PrecisionContext) -> ApproxReal:
    return {
        "q": tm.q_constant,
        "phi": tm.fm_phi,
        "euler_gamma": sf.euler_gamma,
        "glaisher": sf.glaisher,
        "g_prime0": tm.g_prime0,
        "f_prime0": tm.f_prime0,
    }[name](ctx)


def cmd_constant(args) -> list[OutputRecord]:
    def compute(ctx):
        v = _constant_value(args.name, ctx)
        return (render_real(v, args.digits), format_radius(v.error_radius))

    value, err = _with_precision(args.bits, args.digits, compute)
    return [OutputRecord(args.name, value, err, args.digits, _CONSTANT_METHODS[args.name], 0)]


def _spec_from_args(args) -> rp.SequenceSpec:
    kind = rp.Kind(args.sequence)
    used = {
        rp.Kind.LERCH_SHIFT: {"x"},
        rp.Kind.LERCH_QUADRATIC: {"x", "y"},
        rp.Kind.GEOMETRIC: {"a"},
    }.get(kind, set())
    given = {k for k in ("x", "y", "a") if getattr(args, k) is not None}
    extra = given - used
    if extra:
        flags = ", ".join(f"--{k}" for k in sorted(extra))
        raise UsageError(f"{flags} not applicable to sequence {kind.value}")
    try:
        return rp.SequenceSpec(kind, x=args.x, y=args.y, a=args.a)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))


def cmd_eval(args) -> list[OutputRecord]:
    spec = _spec_from_args(args)

    def compute(ctx):
        r = rp.regprod_eval(spec, ctx)
        return (render_real(r.value, args.digits), format_radius(r.value.error_radius), r.route.value)

    value, err, route = _with_precision(args.bits, args.digits, compute)
    return [OutputRecord(spec.name, value, err, args.digits, route, 0)]


def _cmd_series(kind: str, args) -> list[OutputRecord]:
    fn = tm.g if kind == "g" else tm.f
    parse_complex(args.s, PrecisionContext(args.bits))  # fail early on bad input

    def compute(ctx):
        ev = fn(parse_complex(args.s, ctx), ctx)
        return (render_complex(ev.value, args.digits), format_radius(ev.value.error_radius),
                ev.method.value)

    value, err, method = _with_precision(args.bits, args.digits, compute)
    return [OutputRecord(f"{kind}({args.s.strip()})", value, err, args.digits, method, 0)]


def cmd_g(args):
    return _cmd_series("g", args)


def cmd_f(args):
    return _cmd_series("f", args)


def _verify_record(r: verify.CheckResult, digits: int) -> OutputRecord:
    shown = r.achieved_digits
    if math.isinf(shown):
        # exact agreement: report the full working precision
        shown = math.floor(r.bits * math.log10(2))
    status = "pass" if r.passed else "fail"
    return OutputRecord(f"{r.suite}/{r.name}", f"{shown:.1f}", "0", digits,
                        f"{status} ({r.required}, {r.bits} bits)", 0)


def cmd_verify(args) -> tuple[list[OutputRecord], int]:
    ctx = PrecisionContext(args.bits)
    results = verify.run_suite(args.suite, args.digits, ctx, threads=args.threads,
                               n_terms=args.n_terms)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    return [_verify_record(r, args.digits) for r in results], code


def _print_verify_table(records: list[OutputRecord], out) -> None:
    width = max(len(r.name) for r in records)
    for r in records:
        status, _, rest = r.method.partition(" ")
        print(f"{status.upper():4}  {r.name:<{width}}  {r.value:>6} digits  {rest}", file=out)
    passed = sum(r.method.startswith("pass") for r in records)
    print(f"{passed}/{len(records)} identities passed", file=out)


def cmd_list(args, out) -> int:
    for kind in rp.Kind:
        params = {
            rp.Kind.LERCH_SHIFT: "--x",
            rp.Kind.LERCH_QUADRATIC: "--x --y",
            rp.Kind.GEOMETRIC: "--a",
        }.get(kind, "")
        print(f"{kind.value:<16} {rp._DESCRIPTIONS[kind]:<42} {params}".rstrip(), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parser


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS,
                        help="significant digits to print (default %(default)s)")
    common.add_argument("--precision-bits", type=int, default=None, dest="precision_bits",
                        help="working precision; overrides REGPROD_PRECISION_BITS (default 256)")
    common.add_argument("--json", action="store_true", help="newline-delimited JSON output")
    common.add_argument("--timing", action="store_true",
                        help="fill elapsed_ms (otherwise 0, keeping output reproducible)")

    p = argparse.ArgumentParser(
        prog="regprod",
        description="Zeta-regularized products of Thue-Morse related sequences.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    c = sub.add_parser("constant", parents=[common], help="print a constant")
    c.add_argument("name", choices=CONSTANTS)

    e = sub.add_parser("eval", parents=[common], help="regularized product of a sequence")
    e.add_argument("--sequence", required=True, choices=[k.value for k in rp.Kind])
    e.add_argument("--x")
    e.add_argument("--y")
    e.add_argument("--a")

    for name, what in (("g", "sum eps_n n^-s"), ("f", "sum eps_n (n+1)^-s")):
        s = sub.add_parser(name, parents=[common], help=f"evaluate {what}")
        s.add_argument("--s", required=True, help="complex point, e.g. 0.5-3i")

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--threads", type=_positive_int, default=1)
    v.add_argument("--n-terms", type=_positive_int, default=None, dest="n_terms",
                   help="oracle N (default REGPROD_ORACLE_N or 10^7)")

    sub.add_parser("list-sequences", help="show the supported sequences")
    return p


_VALUE_FLAGS = ("--s", "--x", "--y", "--a")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """``--s -1.5-2i`` -> ``--s=-1.5-2i``; argparse would read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1][1:2] in tuple("0123456789.") and argv[i + 1][1:2] != "":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "list-sequences":
        return cmd_list(args, out)

    handlers = {"constant": cmd_constant, "eval": cmd_eval, "g": cmd_g, "f": cmd_f}
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        args.bits = _bits_from_env(args.precision_bits)
        if args.command == "verify":
            records, code = cmd_verify(args)
        else:
            records = handlers[args.command](args)
    except UsageError as exc:
        print(f"regprod: error: {exc}", file=err)
        return EXIT_USAGE
    except verify.PrecisionExhausted as exc:
        print(f"regprod: precision exhausted: {exc}", file=err)
        return EXIT_PRECISION
    except rp.RouteMismatch as exc:
        print(f"regprod: routes disagree: {exc}", file=err)
        return EXIT_FAIL
    except DomainError as exc:
        print(f"regprod: error: {exc}", file=err)
        return EXIT_USAGE

    if args.timing:
        ms = round((time.perf_counter() - t0) * 1000)
        records = [OutputRecord(**{**asdict(r), "elapsed_ms": ms}) for r in records]

    if args.json:
        for r in records:
            print(r.to_json(), file=out)
    elif args.command == "verify":
        _print_verify_table(records, out)
    else:
        for r in records:
            print(r.value, file=out)
    return code
