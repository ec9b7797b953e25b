"""Zeta-regularized products.

For a sequence ``lambda_i`` with Dirichlet series ``Z(s) = sum lambda_i^-s``
the regularized product is ``exp(-Z'(0))``; if ``Z`` has a simple pole at 0
it is ``exp(-Res_{s=0} Z(s)/s^2)``, i.e. ``exp(-c_1)`` where ``c_1`` is the
coefficient of ``s`` in the Laurent expansion of ``Z`` at 0.

Derivations used by the dispatcher (all at ``s = 0``):

* Lerch shift ``(n + x)``, ``n >= 0``: ``Z = zeta(s, x)``.
* Quadratic ``(n + x)^2 + y^2``: splitting into ``(n + x + iy)(n + x - iy)``
  gives ``-Z'(0) = -2 Re d/ds zeta(s, x + iy)``; the closed form is
  ``2 pi / (Gamma(x + iy) Gamma(x - iy))``.  Negative shifts are made
  positive by peeling head terms (``n^2+1``, ``n^2-n+1`` and ``n^4+1`` all
  have head term 1 at ``n = 0``).
* ``n^4 + 1 = ((n + r)^2 + 1/2)((n - r)^2 + 1/2)`` with ``r = sqrt(2)/2``.
* ``n^n`` is the multiset in which ``n`` occurs ``n`` times, so
  ``Z(s) = zeta(s - 1)`` and ``-Z'(0) = -zeta'(-1)``.
* ``a^n``, ``n >= 0``: ``Z(s) = 1 / (1 - a^-s) = 1/(sL) + 1/2 + sL/12 + ...``
  with ``L = log a``; residue route.
* squarefree ``n``: ``Z(s) = zeta(s) / zeta(2s)``, so
  ``Z'(0) = zeta'(0)/zeta(0) - 2 zeta'(0)/zeta(0) = -zeta'(0)/zeta(0)``.
* odious / evil: ``Z = (zeta -/+ g) / 2``; shifted sets:
  ``Z = (zeta - f)/2`` and ``(zeta + f)/2 - 1``.
* ``2n + 1`` for ``n >= 1``: ``Z(s) = (1 - 2^-s) zeta(s) - 1``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import specialfns as sf
from . import tmdirichlet as tm
from .mpcore import (
    ApproxReal,
    DomainError,
    PrecisionContext,
    agreement_digits,
    default_context,
)
from .sequences import ParityClass, members

__all__ = [
    "Kind",
    "Route",
    "SequenceSpec",
    "RegProdResult",
    "LaurentSeries",
    "RouteMismatch",
    "UnknownPartition",
    "regprod_eval",
    "closed_form",
    "regprod_odious",
    "regprod_evil",
    "regprod_shifted",
    "residue_regprod",
    "scale",
    "split_head",
    "partition_combine",
]


class RouteMismatch(ArithmeticError):
    """Two independent routes for the same product disagree."""


class UnknownPartition(ValueError):
    """``partition_combine`` called on a pair that is not a registered partition."""


class Kind(enum.Enum):
    INTEGERS = "integers"
    EVEN = "even"
    ODD = "odd"
    ODIOUS = "odious"
    EVIL = "evil"
    SHIFTED_ODIOUS = "shifted-odious"
    SHIFTED_EVIL = "shifted-evil"
    LERCH_SHIFT = "lerch"
    LERCH_QUADRATIC = "lerch-quadratic"
    N2_PLUS_1 = "n2plus1"
    N2_MINUS_N_PLUS_1 = "n2minusnplus1"
    N4_PLUS_1 = "n4plus1"
    GEOMETRIC = "geometric"
    SELF_POWER = "selfpower"
    SQUAREFREE = "squarefree"


class Route(enum.Enum):
    ZETA_DERIVATIVE = "ZetaDerivative"
    RESIDUE = "Residue"
    CLOSED_FORM = "ClosedForm"


_DESCRIPTIONS = {
    Kind.INTEGERS: "n, n >= 1",
    Kind.EVEN: "2n, n >= 1",
    Kind.ODD: "2n+1, n >= 1",
    Kind.ODIOUS: "odious integers (odd binary digit sum)",
    Kind.EVIL: "evil integers (even binary digit sum)",
    Kind.SHIFTED_ODIOUS: "n+1 for odious n",
    Kind.SHIFTED_EVIL: "n+1 for evil n",
    Kind.LERCH_SHIFT: "n+x, n >= 0 (x > 0)",
    Kind.LERCH_QUADRATIC: "(n+x)^2 + y^2, n >= 0 (x > 0)",
    Kind.N2_PLUS_1: "n^2+1, n >= 0",
    Kind.N2_MINUS_N_PLUS_1: "n^2-n+1, n >= 0",
    Kind.N4_PLUS_1: "n^4+1, n >= 0",
    Kind.GEOMETRIC: "a^n, n >= 0 (a > 1)",
    Kind.SELF_POWER: "n^n, n >= 1 (n repeated n times)",
    Kind.SQUAREFREE: "squarefree n >= 1",
}

_INTEGER_KINDS = {Kind.INTEGERS, Kind.EVEN, Kind.ODD, Kind.ODIOUS, Kind.EVIL}


def _num(v, mp):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


@dataclass(frozen=True)
class SequenceSpec:
    """A sequence whose regularized product can be evaluated.

    Parameters ``x``, ``y``, ``a`` may be ints, Fractions, floats or decimal
    strings; they are converted at the working precision.
    """

    kind: Kind
    x: object = None
    y: object = None
    a: object = None

    def __post_init__(self):
        k = self.kind
        if k is Kind.LERCH_SHIFT or k is Kind.LERCH_QUADRATIC:
            if self.x is None or not float(Fraction(str(self.x))) > 0:
                raise DomainError(f"{k.value} needs x > 0")
            if k is Kind.LERCH_QUADRATIC and self.y is None:
                raise DomainError("lerch-quadratic needs y")
        if k is Kind.GEOMETRIC:
            if self.a is None or not float(Fraction(str(self.a))) > 1:
                raise DomainError("geometric needs a > 1")

    # convenience constructors
    @classmethod
    def lerch(cls, x) -> "SequenceSpec":
        return cls(Kind.LERCH_SHIFT, x=x)

    @classmethod
    def quadratic(cls, x, y) -> "SequenceSpec":
        return cls(Kind.LERCH_QUADRATIC, x=x, y=y)

    @classmethod
    def geometric(cls, a) -> "SequenceSpec":
        return cls(Kind.GEOMETRIC, a=a)

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self.kind]

    @property
    def name(self) -> str:
        params = ", ".join(
            f"{k}={v}" for k, v in (("x", self.x), ("y", self.y), ("a", self.a)) if v is not None
        )
        return f"{self.kind.value}({params})" if params else self.kind.value

    def terms(self):
        """Iterator over the exact integer terms (integer-valued specs only)."""
        k = self.kind
        if k is Kind.INTEGERS:
            return itertools.count(1)
        if k is Kind.EVEN:
            return (2 * n for n in itertools.count(1))
        if k is Kind.ODD:
            return (2 * n + 1 for n in itertools.count(1))
        if k is Kind.ODIOUS:
            return members(ParityClass.ODIOUS)
        if k is Kind.EVIL:
            return members(ParityClass.EVIL)
        raise DomainError(f"{k.value} does not have integer terms")


@dataclass(frozen=True)
class RegProdResult:
    log_value: ApproxReal
    value: ApproxReal
    route: Route
    spec: SequenceSpec | None = None
    agreement_digits: float | None = None  # worst agreement among cross-checks

    @classmethod
    def from_log(cls, log_value: ApproxReal, route: Route, spec=None, agreement=None):
        return cls(log_value, log_value.exp(), route, spec, agreement)


# ---------------------------------------------------------------------------
# Laurent series at s = 0


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_{k=lowest_order}^{truncation_order} c_k s^k + O(s^(truncation_order+1))``."""

    lowest_order: int
    coefficients: tuple
    truncation_order: int

    def __post_init__(self):
        if self.lowest_order < -2:
            raise DomainError("lowest_order must be >= -2")
        if len(self.coefficients) != self.truncation_order - self.lowest_order + 1:
            raise ValueError("coefficient count does not match the order range")
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def _mp(self):
        return type(self.coefficients[0].value).context

    def _zero(self):
        mp = self._mp
        return ApproxReal(mp.zero, mp.zero)

    def coefficient(self, k: int) -> ApproxReal:
        if k > self.truncation_order:
            raise DomainError(f"coefficient s^{k} beyond truncation order {self.truncation_order}")
        if k < self.lowest_order:
            return self._zero()
        return self.coefficients[k - self.lowest_order]

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = min(self.lowest_order, other.lowest_order)
        hi = min(self.truncation_order, other.truncation_order)
        return LaurentSeries(lo, [self.coefficient(k) + other.coefficient(k) for k in range(lo, hi + 1)], hi)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.lowest_order, [-c for c in self.coefficients], self.truncation_order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = self.lowest_order + other.lowest_order
        hi = min(self.truncation_order + other.lowest_order, other.truncation_order + self.lowest_order)
        out = []
        for k in range(lo, hi + 1):
            acc = self._zero()
            for i in range(self.lowest_order, k - other.lowest_order + 1):
                acc = acc + self.coefficient(i) * other.coefficient(k - i)
            out.append(acc)
        return LaurentSeries(lo, out, hi)

    def inverse(self) -> "LaurentSeries":
        a = self.coefficients
        a0 = a[0]
        if abs(a0.value) <= a0.error_radius:
            raise ZeroDivisionError("leading coefficient may vanish")
        n = len(a)
        b = [1 / a0]
        for k in range(1, n):
            acc = self._zero()
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            b.append(-(acc / a0))
        lo = -self.lowest_order
        return LaurentSeries(lo, b, lo + n - 1)

    def shifted(self, k: int) -> "LaurentSeries":
        """Multiply by ``s^k``."""
        return LaurentSeries(self.lowest_order + k, self.coefficients, self.truncation_order + k)

    @classmethod
    def constant(cls, c: ApproxReal, order: int) -> "LaurentSeries":
        mp = type(c.value).context
        zero = ApproxReal(mp.zero, mp.zero)
        return cls(0, [c] + [zero] * order, order)

    @classmethod
    def exp_linear(cls, c: ApproxReal, order: int) -> "LaurentSeries":
        """``exp(c s)`` through ``s^order``."""
        mp = type(c.value).context
        coeffs = [ApproxReal(mp.one, mp.zero)]
        for k in range(1, order + 1):
            coeffs.append(coeffs[-1] * c / k)
        return cls(0, coeffs, order)


def residue_regprod(zeta_laurent: LaurentSeries, ctx: PrecisionContext | None = None,
                    spec: SequenceSpec | None = None) -> RegProdResult:
    """``exp(-Res_{s=0} Z(s)/s^2)`` from a Laurent expansion of ``Z`` at 0.

    The residue of ``Z(s)/s^2`` is the ``s^1`` coefficient of ``Z``; without a
    pole this is ``Z'(0)`` and the result coincides with ``exp(-Z'(0))``.
    """
    if zeta_laurent.lowest_order < -1:
        raise DomainError("pole of order > 1 at s = 0")
    if zeta_laurent.truncation_order < 1:
        raise DomainError("Laurent series too short to read the s^1 coefficient")
    c1 = zeta_laurent.coefficient(1)
    return RegProdResult.from_log(-c1, Route.RESIDUE, spec)


def scale(base: RegProdResult, a, zeta_at_0: ApproxReal, ctx: PrecisionContext | None = None,
          spec: SequenceSpec | None = None) -> RegProdResult:
    """Product of ``a * lambda_i`` from that of ``lambda_i``: multiply by ``a^Z(0)``."""
    ctx = ctx or default_context()
    mp = ctx.mp
    av = _num(a, mp)
    if av <= 0:
        raise DomainError("scale factor must be positive")
    log_a = ApproxReal(mp.log(av), ctx.ulp(mp.log(av)))
    log_value = base.log_value + zeta_at_0 * log_a
    return RegProdResult.from_log(log_value, base.route, spec if spec is not None else base.spec)


# ---------------------------------------------------------------------------
# building blocks


def _exact(v, ctx) -> ApproxReal:
    return ApproxReal(v, ctx.ulp(v))


def _half_log_2pi(ctx) -> ApproxReal:
    mp = ctx.mp
    return _exact(mp.log(2 * mp.pi) / 2, ctx)


def _lerch_log_em(x, ctx) -> ApproxReal:
    return -sf.hurwitz_zeta_sderiv0(x, ctx)


def _lerch_log_stirling(x, ctx) -> ApproxReal:
    return _half_log_2pi(ctx) - sf.log_gamma_real(x, ctx)


def _quadratic_log_split(x, y, ctx) -> ApproxReal:
    mp = ctx.mp
    d = sf.hurwitz_sderiv0_complex(mp.mpc(x, y), ctx)
    return -(d.re.scale2(1))


def _quadratic_log_gamma(x, y, ctx) -> ApproxReal:
    mp = ctx.mp
    lg = sf.log_gamma(mp.mpc(x, y), ctx)
    return _half_log_2pi(ctx).scale2(1) - lg.re.scale2(1)


def _zeta0(ctx) -> ApproxReal:
    return sf.riemann_zeta(0, ctx)


def _geometric_laurent(a, ctx, order: int = 3) -> LaurentSeries:
    """Laurent expansion of ``1/(1 - a^-s)``."""
    mp = ctx.mp
    L = _exact(mp.log(a), ctx)
    e = LaurentSeries.exp_linear(-L, order + 2)
    # 1 - a^-s has no constant term
    one_minus = LaurentSeries(1, [-c for c in e.coefficients[1:]], order + 2)
    return one_minus.inverse()


def _linear_laurent(c0: ApproxReal, c1: ApproxReal, order: int = 2) -> LaurentSeries:
    """``c0 + c1 s`` known through ``s^1`` only."""
    return LaurentSeries(0, [c0, c1], 1)


# each route returns (log_value, Route)
_RouteFn = Callable[[SequenceSpec, PrecisionContext], tuple]


def _routes_integers(spec, ctx):
    yield -sf.zeta_prime(0, ctx), Route.ZETA_DERIVATIVE
    z = _linear_laurent(_zeta0(ctx), sf.zeta_prime(0, ctx))
    yield residue_regprod(z, ctx).log_value, Route.RESIDUE


def _routes_even(spec, ctx):
    base = RegProdResult.from_log(-sf.zeta_prime(0, ctx), Route.ZETA_DERIVATIVE)
    yield scale(base, 2, _zeta0(ctx), ctx).log_value, Route.ZETA_DERIVATIVE
    # Z(s) = 2^-s zeta(s)
    mp = ctx.mp
    two = LaurentSeries.exp_linear(-_exact(mp.ln2, ctx), 1)
    z = two * _linear_laurent(_zeta0(ctx), sf.zeta_prime(0, ctx))
    yield residue_regprod(z, ctx).log_value, Route.RESIDUE


def _routes_odd(spec, ctx):
    mp = ctx.mp
    half = mp.mpf(0.5)
    # 2n+1 = 2(n + 1/2), n >= 0; the n = 0 term is 1 and drops out exactly
    base = RegProdResult.from_log(_lerch_log_em(half, ctx), Route.ZETA_DERIVATIVE)
    z_half = sf.hurwitz_zeta(0, half, ctx).re
    yield scale(base, 2, z_half, ctx).log_value, Route.ZETA_DERIVATIVE
    # Z(s) = (1 - 2^-s) zeta(s) - 1
    e = LaurentSeries.exp_linear(-_exact(mp.ln2, ctx), 1)
    one = LaurentSeries.constant(ApproxReal(mp.one, mp.zero), 1)
    z = (one - e) * _linear_laurent(_zeta0(ctx), sf.zeta_prime(0, ctx)) - one
    yield residue_regprod(z, ctx).log_value, Route.RESIDUE


def _routes_lerch(spec, ctx):
    yield _lerch_log_em(_num(spec.x, ctx.mp), ctx), Route.ZETA_DERIVATIVE


def _routes_quadratic(spec, ctx):
    mp = ctx.mp
    yield _quadratic_log_split(_num(spec.x, mp), _num(spec.y, mp), ctx), Route.ZETA_DERIVATIVE


def _routes_n2plus1(spec, ctx):
    # n = 0 term is 1; n >= 1 is (m + 1)^2 + 1 for m >= 0
    yield _quadratic_log_split(ctx.mp.one, ctx.mp.one, ctx), Route.ZETA_DERIVATIVE


def _routes_n2minusnplus1(spec, ctx):
    # n^2 - n + 1 = (n - 1/2)^2 + 3/4; n = 0 term is 1
    mp = ctx.mp
    yield _quadratic_log_split(mp.mpf(0.5), mp.sqrt(3) / 2, ctx), Route.ZETA_DERIVATIVE


def _routes_n4plus1(spec, ctx):
    mp = ctx.mp
    r = mp.sqrt(2) / 2
    # second factor (n - r)^2 + 1/2 equals 1 at n = 0; peel it
    a = _quadratic_log_split(r, r, ctx)
    b = _quadratic_log_split(1 - r, r, ctx)
    yield a + b, Route.ZETA_DERIVATIVE


def _routes_geometric(spec, ctx):
    a = _num(spec.a, ctx.mp)
    yield residue_regprod(_geometric_laurent(a, ctx), ctx).log_value, Route.RESIDUE


def _routes_selfpower(spec, ctx):
    yield -sf.zeta_prime(-1, ctx), Route.ZETA_DERIVATIVE


def _routes_squarefree(spec, ctx):
    z0 = _zeta0(ctx)
    zp = sf.zeta_prime(0, ctx)
    yield zp / z0, Route.ZETA_DERIVATIVE
    # Z(s) = zeta(s) / zeta(2s) by Laurent arithmetic
    num = _linear_laurent(z0, zp)
    den = _linear_laurent(z0, zp.scale2(1))
    yield residue_regprod(num * den.inverse(), ctx).log_value, Route.RESIDUE


def _routes_odious(spec, ctx):
    # -Z'(0) = -(zeta'(0) - g'(0)) / 2
    yield (tm.g_prime0(ctx) - sf.zeta_prime(0, ctx)).scale2(-1), Route.ZETA_DERIVATIVE


def _routes_evil(spec, ctx):
    yield (-(sf.zeta_prime(0, ctx) + tm.g_prime0(ctx))).scale2(-1), Route.ZETA_DERIVATIVE


def _routes_shifted_odious(spec, ctx):
    yield (tm.f_prime0(ctx) - sf.zeta_prime(0, ctx)).scale2(-1), Route.ZETA_DERIVATIVE


def _routes_shifted_evil(spec, ctx):
    yield (-(sf.zeta_prime(0, ctx) + tm.f_prime0(ctx))).scale2(-1), Route.ZETA_DERIVATIVE


_ROUTES: dict[Kind, _RouteFn] = {
    Kind.INTEGERS: _routes_integers,
    Kind.EVEN: _routes_even,
    Kind.ODD: _routes_odd,
    Kind.LERCH_SHIFT: _routes_lerch,
    Kind.LERCH_QUADRATIC: _routes_quadratic,
    Kind.N2_PLUS_1: _routes_n2plus1,
    Kind.N2_MINUS_N_PLUS_1: _routes_n2minusnplus1,
    Kind.N4_PLUS_1: _routes_n4plus1,
    Kind.GEOMETRIC: _routes_geometric,
    Kind.SELF_POWER: _routes_selfpower,
    Kind.SQUAREFREE: _routes_squarefree,
    Kind.ODIOUS: _routes_odious,
    Kind.EVIL: _routes_evil,
    Kind.SHIFTED_ODIOUS: _routes_shifted_odious,
    Kind.SHIFTED_EVIL: _routes_shifted_evil,
}


# ---------------------------------------------------------------------------
# closed forms (targets of the catalog identities)


def _abstract_odious_log(ctx) -> ApproxReal:
    """log of ``pi^(1/4) sqrt(2 phi e^-gamma)``."""
    mp = ctx.mp
    phi = tm.fm_phi(ctx)
    gam = sf.euler_gamma(ctx)
    quarter_log_pi = _exact(mp.log(mp.pi) / 4, ctx)
    half_log2 = _exact(mp.ln2 / 2, ctx)
    return quarter_log_pi + half_log2 + (phi.log() - gam).scale2(-1)


def closed_form(spec: SequenceSpec, ctx: PrecisionContext | None = None) -> RegProdResult:
    """The closed-form value of the product, computed at run time."""
    ctx = ctx or default_context()
    mp = ctx.mp
    k = spec.kind
    pi = mp.pi

    def lit(v):
        return _exact(mp.log(v), ctx)

    if k is Kind.INTEGERS:
        lv = lit(mp.sqrt(2 * pi))
    elif k is Kind.EVEN:
        lv = lit(mp.sqrt(pi))
    elif k is Kind.ODD:
        lv = lit(mp.sqrt(2))
    elif k is Kind.LERCH_SHIFT:
        lv = _lerch_log_stirling(_num(spec.x, mp), ctx)
    elif k is Kind.LERCH_QUADRATIC:
        lv = _quadratic_log_gamma(_num(spec.x, mp), _num(spec.y, mp), ctx)
    elif k is Kind.N2_PLUS_1:
        lv = lit(mp.exp(pi) - mp.exp(-pi))
    elif k is Kind.N2_MINUS_N_PLUS_1:
        u = pi * mp.sqrt(3) / 2
        lv = lit(mp.exp(u) + mp.exp(-u))
    elif k is Kind.N4_PLUS_1:
        u = pi * mp.sqrt(2)
        lv = lit(2 * (mp.cosh(u) - mp.cos(u)))
    elif k is Kind.GEOMETRIC:
        lv = lit(mp.power(_num(spec.a, mp), -mp.one / 12))
    elif k is Kind.SELF_POWER:
        # A e^(-1/12) with A from the zeta'(2) formula, independent of zeta'(-1)
        _, a2 = sf.glaisher_routes(ctx)
        lv = a2.log() - _exact(mp.one / 12, ctx)
    elif k is Kind.SQUAREFREE:
        lv = lit(2 * pi)
    elif k is Kind.ODIOUS:
        lv = _abstract_odious_log(ctx)
    elif k is Kind.EVIL:
        lv = _half_log_2pi(ctx) - _abstract_odious_log(ctx)
    elif k is Kind.SHIFTED_ODIOUS:
        lv = lit(mp.sqrt(2) * mp.power(pi, mp.mpf(0.25)))
    elif k is Kind.SHIFTED_EVIL:
        lv = lit(mp.power(pi, mp.mpf(0.25)))
    else:  # pragma: no cover
        raise DomainError(k)
    return RegProdResult.from_log(lv, Route.CLOSED_FORM, spec)


# ---------------------------------------------------------------------------
# dispatcher


def _required_agreement(ctx: PrecisionContext) -> float:
    return ctx.bits * math.log10(2) - 12


def regprod_eval(spec: SequenceSpec, ctx: PrecisionContext | None = None,
                 *, check_closed_form: bool = True) -> RegProdResult:
    """Evaluate the regularized product of ``spec``.

    All computational routes available for the sequence are run and must agree
    with each other (and with the closed form unless disabled); the route
    with the smallest radius is returned.  Disagreement raises
    :class:`RouteMismatch`.
    """
    ctx = ctx or default_context()
    results = [RegProdResult.from_log(lv, route, spec) for lv, route in _ROUTES[spec.kind](spec, ctx)]
    checks = list(results)
    if check_closed_form:
        checks.append(closed_form(spec, ctx))
    need = _required_agreement(ctx)
    worst = math.inf
    for a, b in itertools.combinations(checks, 2):
        d = agreement_digits(a.log_value, b.log_value)
        worst = min(worst, d)
        if d < need:
            raise RouteMismatch(
                f"{spec.name}: {a.route.value} and {b.route.value} agree to only {d:.1f} digits"
            )
    best = min(results, key=lambda r: r.log_value.error_radius)
    return RegProdResult(best.log_value, best.value, best.route, spec,
                         worst if len(checks) > 1 else None)


def regprod_odious(ctx: PrecisionContext | None = None) -> RegProdResult:
    """``(2 pi)^(1/4) Q^(-1/2)``."""
    return regprod_eval(SequenceSpec(Kind.ODIOUS), ctx)


def regprod_evil(ctx: PrecisionContext | None = None) -> RegProdResult:
    """``(2 pi)^(1/4) Q^(1/2)``."""
    return regprod_eval(SequenceSpec(Kind.EVIL), ctx)


def regprod_shifted(cls: ParityClass, ctx: PrecisionContext | None = None) -> RegProdResult:
    kind = Kind.SHIFTED_ODIOUS if cls is ParityClass.ODIOUS else Kind.SHIFTED_EVIL
    return regprod_eval(SequenceSpec(kind), ctx)


# ---------------------------------------------------------------------------
# properties


def split_head(spec: SequenceSpec, n: int, ctx: PrecisionContext | None = None):
    """Split off the first ``n`` terms: ``(exact head product, tail result)``."""
    ctx = ctx or default_context()
    if spec.kind not in _INTEGER_KINDS:
        raise DomainError(f"{spec.kind.value} does not have integer terms")
    if not 1 <= n <= 10**6:
        raise DomainError("n must be in [1, 10**6]")
    head = math.prod(itertools.islice(spec.terms(), n))
    full = regprod_eval(spec, ctx)
    mp = ctx.mp
    log_head = mp.log(head)
    tail_log = full.log_value - ApproxReal(log_head, ctx.ulp(log_head))
    return head, RegProdResult.from_log(tail_log, full.route, spec, full.agreement_digits)


_PARTITIONS = {
    frozenset({Kind.ODIOUS, Kind.EVIL}),
    # Odd starts at 3; the missing term 1 contributes a factor 1
    frozenset({Kind.EVEN, Kind.ODD}),
}


def partition_combine(a: RegProdResult, b: RegProdResult,
                      ctx: PrecisionContext | None = None) -> ApproxReal:
    """Product of two regularized products over a partition of the positive integers."""
    if a.spec is None or b.spec is None or frozenset({a.spec.kind, b.spec.kind}) not in _PARTITIONS:
        raise UnknownPartition("not a registered partition of the positive integers")
    ctx = ctx or default_context()
    prod = a.value * b.value
    whole = regprod_eval(SequenceSpec(Kind.INTEGERS), ctx)
    if agreement_digits(prod, whole.value) < _required_agreement(ctx):
        raise RouteMismatch("partition product does not reproduce the product over all integers")
    return prod
