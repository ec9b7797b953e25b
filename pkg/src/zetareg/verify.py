"""Named identity checks grouped into suites.

Each :class:`Identity` produces a pair of values that should agree.  Exact
identities are judged in decimal digits (``agreement_digits``); oracle
identities are judged against an absolute tolerance because the oracle side
is a float64 heuristic.

``run_suite`` escalates precision by doubling when the requested number of
digits cannot be decided at the current precision, i.e. when the error radii
alone already exceed the requested agreement.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from . import regprod as rp
from . import specialfns as sf
from . import tmdirichlet as tm
from .mpcore import ApproxReal, PrecisionContext, agreement_digits

__all__ = [
    "SUITES",
    "MAX_BITS",
    "Identity",
    "CheckResult",
    "PrecisionExhausted",
    "identities",
    "run_identity",
    "run_suite",
    "ROUTE_OVERLAP_POINTS",
    "LERCH_GRID",
    "QUADRATIC_GRID",
]

SUITES = ("theorem", "catalog", "properties", "oracles")
MAX_BITS = 8192

LERCH_GRID = ("0.25", "0.5", "1", "1.5", "2", "3.75")
QUADRATIC_GRID = (("0.5", "0.5"), ("1", "2"), ("1.5", "0.25"), ("3", "1"))
ROUTE_OVERLAP_POINTS = (
    "16", "16.25+1i", "16.5", "16.75-2i", "17+3i",
    "17.25", "17.5+0.5i", "17.75-5i", "18", "16.5+10i",
)


class PrecisionExhausted(ArithmeticError):
    pass


Pair = tuple[ApproxReal, ApproxReal]


@dataclass(frozen=True)
class Identity:
    name: str
    suite: str
    compute: Callable[[PrecisionContext], Pair] = field(repr=False)
    # fixed bar in digits; None means "use the requested digits"
    min_digits: float | None = None
    # absolute tolerance for heuristic checks; when set, digits are informational
    abs_tol: Callable[[Pair], float] | None = field(default=None, repr=False)


@dataclass(frozen=True)
class CheckResult:
    name: str
    suite: str
    lhs: ApproxReal
    rhs: ApproxReal
    achieved_digits: float
    required: str
    passed: bool
    bits: int


def _mp_point(text: str, ctx: PrecisionContext):
    from .cli import parse_complex  # imported late: cli imports this module

    return parse_complex(text, ctx)


# ---------------------------------------------------------------------------
# identity builders


def _closed(spec: rp.SequenceSpec) -> Callable[[PrecisionContext], Pair]:
    def compute(ctx):
        v = rp.regprod_eval(spec, ctx, check_closed_form=False).value
        return v, rp.closed_form(spec, ctx).value

    return compute


def _theorem() -> list[Identity]:
    def partition(ctx):
        mp = ctx.mp
        prod = rp.regprod_odious(ctx).value * rp.regprod_evil(ctx).value
        return prod, ApproxReal.exact(mp.sqrt(2 * mp.pi), ctx)

    def abstract(ctx):
        mp = ctx.mp
        phi = tm.fm_phi(ctx)
        gamma = sf.euler_gamma(ctx)
        pi = ApproxReal.exact(mp.pi, ctx)
        rhs = pi.sqrt().sqrt() * (phi.scale2(1) * (-gamma).exp()).sqrt()
        return rp.regprod_eval(rp.SequenceSpec(rp.Kind.ODIOUS), ctx, check_closed_form=False).value, rhs

    def shifted_odious(ctx):
        mp = ctx.mp
        v = rp.regprod_eval(rp.SequenceSpec(rp.Kind.SHIFTED_ODIOUS), ctx, check_closed_form=False).value
        return v, ApproxReal.exact(mp.sqrt(2) * mp.root(mp.pi, 4), ctx)

    def shifted_evil(ctx):
        mp = ctx.mp
        v = rp.regprod_eval(rp.SequenceSpec(rp.Kind.SHIFTED_EVIL), ctx, check_closed_form=False).value
        return v, ApproxReal.exact(mp.root(mp.pi, 4), ctx)

    def f_prime(ctx):
        mp = ctx.mp
        return tm.f_prime0(ctx), ApproxReal.exact(mp.log(2) / 2, ctx)

    def g_zero(ctx):
        e = tm.g(0, ctx, method=tm.Method.FUNCTIONAL_EQUATION)
        return ApproxReal(e.value.re.value, e.value.error_radius), ApproxReal.exact(-1, ctx)

    def q_phi(ctx):
        mp = ctx.mp
        lhs = tm.q_constant(ctx) * tm.fm_phi(ctx) * (-sf.euler_gamma(ctx)).exp()
        return lhs, ApproxReal.exact(mp.sqrt(2) / 2, ctx)

    return [
        Identity("odious*evil = sqrt(2 pi)", "theorem", partition),
        Identity("odious = pi^(1/4) sqrt(2 phi e^-gamma)", "theorem", abstract),
        Identity("shifted-odious = 2^(1/2) pi^(1/4)", "theorem", shifted_odious),
        Identity("shifted-evil = pi^(1/4)", "theorem", shifted_evil),
        Identity("f'(0) = log(2)/2", "theorem", f_prime),
        Identity("g(0) = -1 (functional equation)", "theorem", g_zero),
        Identity("Q phi e^-gamma = 2^(-1/2)", "theorem", q_phi),
    ]


def _catalog() -> list[Identity]:
    K = rp.Kind
    rows = [
        ("integers = sqrt(2 pi)", rp.SequenceSpec(K.INTEGERS)),
        ("even = sqrt(pi)", rp.SequenceSpec(K.EVEN)),
        ("odd = sqrt(2)", rp.SequenceSpec(K.ODD)),
        ("n^2+1 = e^pi - e^-pi", rp.SequenceSpec(K.N2_PLUS_1)),
        ("n^2-n+1 = 2 cosh(pi sqrt(3)/2)", rp.SequenceSpec(K.N2_MINUS_N_PLUS_1)),
        ("n^4+1 = 2(cosh(pi sqrt2) - cos(pi sqrt2))", rp.SequenceSpec(K.N4_PLUS_1)),
        ("2^n = 2^(-1/12)", rp.SequenceSpec.geometric(2)),
        ("3^n = 3^(-1/12)", rp.SequenceSpec.geometric(3)),
        ("n^n = A e^(-1/12)", rp.SequenceSpec(K.SELF_POWER)),
        ("squarefree = 2 pi", rp.SequenceSpec(K.SQUAREFREE)),
    ]
    rows += [(f"n+{x} = sqrt(2 pi)/Gamma({x})", rp.SequenceSpec.lerch(x)) for x in LERCH_GRID]
    rows += [
        (f"(n+{x})^2+{y}^2 = 2 pi/|Gamma({x}+{y}i)|^2", rp.SequenceSpec.quadratic(x, y))
        for x, y in QUADRATIC_GRID
    ]
    out = [Identity(name, "catalog", _closed(spec)) for name, spec in rows]

    def glaisher_cross(ctx):
        return sf.glaisher_routes(ctx)

    out.append(Identity("Glaisher A: two formulas", "catalog", glaisher_cross, min_digits=40))
    return out


def _properties() -> list[Identity]:
    K = rp.Kind

    def scaling(ctx):
        base = rp.regprod_eval(rp.SequenceSpec(K.INTEGERS), ctx)
        scaled = rp.scale(base, 2, sf.riemann_zeta(0, ctx), ctx, rp.SequenceSpec(K.EVEN))
        return scaled.value, rp.regprod_eval(rp.SequenceSpec(K.EVEN), ctx).value

    def head_split(ctx):
        spec = rp.SequenceSpec(K.ODIOUS)
        head, tail = rp.split_head(spec, 100, ctx)
        log_head = ctx.mp.log(head)
        recombined = tail.log_value + ApproxReal(log_head, ctx.ulp(log_head))
        return recombined.exp(), rp.regprod_eval(spec, ctx).value

    def head_five(ctx):
        head, _ = rp.split_head(rp.SequenceSpec(K.ODIOUS), 5, ctx)
        return ApproxReal.exact(head, ctx), ApproxReal.exact(448, ctx)

    def partition(a, b):
        def compute(ctx):
            ra = rp.regprod_eval(rp.SequenceSpec(a), ctx)
            rb = rp.regprod_eval(rp.SequenceSpec(b), ctx)
            whole = rp.regprod_eval(rp.SequenceSpec(K.INTEGERS), ctx)
            return rp.partition_combine(ra, rb, ctx), whole.value

        return compute

    def overlap(point):
        def compute(ctx):
            s = _mp_point(point, ctx)
            d = tm.g(s, ctx, sigma0=16, method=tm.Method.DIRECT_PAIRED).value
            e = tm.g(s, ctx, method=tm.Method.FUNCTIONAL_EQUATION).value
            # encode the complex gap |d - e| as a real pair so the usual
            # digit measure applies
            mp = ctx.mp
            gap = mp.mpf(abs(d.value - e.value))
            rad = d.error_radius + e.error_radius
            scale = max(mp.one, abs(d.value))
            return ApproxReal(scale + gap, rad), ApproxReal.exact(scale, ctx)

        return compute

    out = [
        Identity("scale(integers, 2) = even", "properties", scaling),
        Identity("head split (odious, 100) recombines", "properties", head_split, min_digits=60),
        Identity("head(odious, 5) = 448", "properties", head_five),
        Identity("partition odious|evil = integers", "properties", partition(K.ODIOUS, K.EVIL)),
        Identity("partition even|odd = integers", "properties", partition(K.EVEN, K.ODD)),
    ]
    out += [
        Identity(f"g({p}) direct = functional equation", "properties", overlap(p), min_digits=60)
        for p in ROUTE_OVERLAP_POINTS
    ]
    return out


def _oracle_identities(n_terms: int | None) -> list[Identity]:
    def n():
        return n_terms if n_terms is not None else oracles.default_oracle_n()

    def q(ctx):
        return tm.q_constant(ctx), oracles.q_product_oracle(n(), ctx).value

    def phi(ctx):
        return tm.fm_phi(ctx), oracles.phi_product_oracle(n(), ctx).value

    def zo2(ctx):
        primary = tm.zeta_odious(2, ctx)
        est = oracles.dirichlet_partial("zeta_odious", 2, n(), ctx)
        return ApproxReal(primary.re.value, primary.error_radius), est.value

    def g_paired(kind):
        def compute(ctx):
            primary = (tm.g if kind == "g" else tm.f)(2, ctx).value
            est = oracles.dirichlet_partial(kind, 2, n(), ctx, paired=True)
            return ApproxReal(primary.re.value, primary.error_radius), est.value

        return compute

    def fixed(tol):
        return lambda pair: tol

    def own_estimate(pair):
        return float(pair[0].error_radius + pair[1].error_radius)

    return [
        Identity("Q: exp(-g'(0)) vs paired product", "oracles", q, abs_tol=fixed(1e-5)),
        Identity("phi: primary vs defining product", "oracles", phi, abs_tol=fixed(1e-5)),
        Identity("zeta_odious(2) vs partial sum", "oracles", zo2, abs_tol=own_estimate),
        Identity("g(2) vs paired partial sum", "oracles", g_paired("g"), abs_tol=own_estimate),
        Identity("f(2) vs paired partial sum", "oracles", g_paired("f"), abs_tol=own_estimate),
    ]


def identities(suite: str, n_terms: int | None = None) -> list[Identity]:
    """Identities of ``suite`` (or of every suite for ``"all"``) in fixed order."""
    if suite == "all":
        return [i for s in SUITES for i in identities(s, n_terms)]
    builders = {
        "theorem": _theorem,
        "catalog": _catalog,
        "properties": _properties,
        "oracles": lambda: _oracle_identities(n_terms),
    }
    if suite not in builders:
        raise ValueError(f"unknown suite {suite!r}")
    return builders[suite]()


# ---------------------------------------------------------------------------
# running


def _decidable_digits(pair: Pair) -> float:
    """Best agreement the radii allow, whatever the midpoints are."""
    x, y = pair
    mp = x._mp
    rad = x.error_radius + y.error_radius
    if rad == 0:
        return math.inf
    scale = max(mp.one, abs(x.value), abs(mp.mpf(y.value)))
    return float(-mp.log10(rad / scale))


def run_identity(ident: Identity, digits: int, ctx: PrecisionContext,
                 max_bits: int = MAX_BITS) -> CheckResult:
    """Run one identity, doubling precision until the verdict is decidable."""
    while True:
        pair = ident.compute(ctx)
        achieved = agreement_digits(*pair)
        if ident.abs_tol is not None:
            tol = ident.abs_tol(pair)
            gap = float(abs(pair[0].value - pair[1]._mp.mpf(pair[1].value)))
            return CheckResult(ident.name, ident.suite, pair[0], pair[1], achieved,
                               f"|diff| <= {tol:.1e}", gap <= tol, ctx.bits)
        need = ident.min_digits if ident.min_digits is not None else digits
        if achieved >= need:
            return CheckResult(ident.name, ident.suite, pair[0], pair[1], achieved,
                               f">= {need:g} digits", True, ctx.bits)
        if _decidable_digits(pair) >= need + 1:
            # radii are small enough: the midpoints really disagree
            return CheckResult(ident.name, ident.suite, pair[0], pair[1], achieved,
                               f">= {need:g} digits", False, ctx.bits)
        if 2 * ctx.bits > max_bits:
            raise PrecisionExhausted(f"{ident.name}: undecidable at {ctx.bits} bits")
        ctx = ctx.doubled()


def run_suite(suite: str, digits: int = 30, ctx: PrecisionContext | None = None, *,
              threads: int = 1, n_terms: int | None = None) -> list[CheckResult]:
    """Run every identity of ``suite``; results come back in definition order."""
    ctx = ctx or PrecisionContext()
    items = identities(suite, n_terms)
    if threads <= 1:
        return [run_identity(i, digits, ctx) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda i: run_identity(i, digits, ctx), items))
