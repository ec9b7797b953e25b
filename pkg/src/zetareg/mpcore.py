"""Precision contexts, error-carrying reals and decimal rendering.

Every numeric routine in the package works under a :class:`PrecisionContext`.
The context owns a private :class:`mpmath.MPContext` whose precision is fixed
at ``bits + guard_bits`` and is never mutated afterwards, so values and
contexts can be shared freely between threads.

Values carry their own error radius (:class:`ApproxReal`, :class:`ApproxComplex`).
This is not interval arithmetic: each series routine deposits its truncation
bound into the radius, and the arithmetic helpers here propagate radii with a
generous allowance for rounding.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_DOWN, ROUND_HALF_EVEN, Decimal, localcontext
from typing import Union

import mpmath
from mpmath import libmp

__all__ = [
    "PrecisionContext",
    "Rigor",
    "ApproxReal",
    "ApproxComplex",
    "InsufficientAccuracy",
    "DomainError",
    "PoleError",
    "default_context",
    "to_decimal",
    "agree_to",
    "agreement_digits",
    "format_radius",
]

DEFAULT_BITS = 256
DEFAULT_GUARD_BITS = 32


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class InsufficientAccuracy(ArithmeticError):
    """The error radius is too large to render the requested digits."""

    def __init__(self, requested: int, max_safe_digits: int):
        super().__init__(
            f"cannot render {requested} digits; at most {max_safe_digits} are safe"
        )
        self.requested = requested
        self.max_safe_digits = max_safe_digits


@functools.lru_cache(maxsize=None)
def _mpcontext(prec: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision (``bits``) plus internal slack (``guard_bits``).

    Arithmetic runs at ``bits + guard_bits``; truncation tolerances target
    ``2**-bits``.
    """

    bits: int = DEFAULT_BITS
    guard_bits: int = DEFAULT_GUARD_BITS

    def __post_init__(self):
        if self.bits < 64:
            raise DomainError(f"bits must be >= 64, got {self.bits}")
        if self.guard_bits < 16:
            raise DomainError(f"guard_bits must be >= 16, got {self.guard_bits}")

    @property
    def prec(self) -> int:
        return self.bits + self.guard_bits

    @property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        return _mpcontext(self.prec)

    @property
    def tol(self):
        """Target absolute accuracy ``2**-bits`` as an mpf."""
        return self.mp.ldexp(self.mp.one, -self.bits)

    def ulp(self, x):
        """Generous rounding allowance for a value of magnitude ``|x|``."""
        return self.mp.ldexp(abs(x), 2 - self.prec)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits, self.guard_bits)


def default_context() -> PrecisionContext:
    return PrecisionContext()


class Rigor(enum.Enum):
    RIGOROUS = "rigorous"
    HEURISTIC = "heuristic"

    @staticmethod
    def combine(*flags: "Rigor") -> "Rigor":
        if any(f is Rigor.HEURISTIC for f in flags):
            return Rigor.HEURISTIC
        return Rigor.RIGOROUS


Number = Union[int, float, str, "mpmath.mpf", "ApproxReal"]


def _ctx_of(value) -> mpmath.ctx_mp.MPContext:
    return type(value).context


@dataclass(frozen=True)
class ApproxReal:
    """A real value with a non-negative error radius."""

    value: mpmath.mpf
    error_radius: mpmath.mpf
    rigor: Rigor = Rigor.RIGOROUS

    def __post_init__(self):
        r = self.error_radius
        if not (mpmath.isfinite(r) and r >= 0):
            raise ValueError(f"error radius must be finite and non-negative: {r}")

    @classmethod
    def exact(cls, x, ctx: PrecisionContext | None = None) -> "ApproxReal":
        """Wrap ``x`` with zero radius (after conversion to context precision)."""
        mp = (ctx or default_context()).mp
        if isinstance(x, ApproxReal):
            return x
        return cls(mp.mpf(x), mp.zero)

    @classmethod
    def from_value(cls, x, radius, ctx: PrecisionContext, rigor=Rigor.RIGOROUS):
        mp = ctx.mp
        return cls(mp.mpf(x), mp.mpf(radius), rigor)

    # -- helpers ---------------------------------------------------------
    @property
    def _mp(self):
        return _ctx_of(self.value)

    def _wrap(self, other) -> "ApproxReal":
        if isinstance(other, ApproxReal):
            return other
        mp = self._mp
        return ApproxReal(mp.mpf(other), mp.zero)

    def _ulp(self, v):
        mp = self._mp
        return mp.ldexp(abs(v), 2 - mp.prec)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        v = mpmath.nstr(self.value, 20)
        r = mpmath.nstr(self.error_radius, 3)
        return f"ApproxReal({v} ± {r}, {self.rigor.value})"

    @property
    def rad(self):
        return self.error_radius

    def with_radius(self, extra, rigor: Rigor | None = None) -> "ApproxReal":
        """Return a copy with ``extra`` added to the radius."""
        mp = self._mp
        return ApproxReal(
            self.value,
            self.error_radius + abs(mp.mpf(extra)),
            Rigor.combine(self.rigor, rigor or self.rigor),
        )

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        return ApproxReal(-self.value, self.error_radius, self.rigor)

    def __add__(self, other):
        o = self._wrap(other)
        mp = self._mp
        v = self.value + mp.mpf(o.value)
        r = self.error_radius + o.error_radius + self._ulp(v)
        return ApproxReal(v, r, Rigor.combine(self.rigor, o.rigor))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        mp = self._mp
        ov = mp.mpf(o.value)
        v = self.value * ov
        r = (
            abs(self.value) * o.error_radius
            + abs(ov) * self.error_radius
            + self.error_radius * o.error_radius
            + self._ulp(v)
        )
        return ApproxReal(v, r, Rigor.combine(self.rigor, o.rigor))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        mp = self._mp
        ov = mp.mpf(o.value)
        gap = abs(ov) - o.error_radius
        if gap <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / ov
        r = (abs(self.value) * o.error_radius + abs(ov) * self.error_radius) / (
            abs(ov) * gap
        ) + self._ulp(v)
        return ApproxReal(v, r, Rigor.combine(self.rigor, o.rigor))

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def exp(self) -> "ApproxReal":
        mp = self._mp
        v = mp.exp(self.value)
        r = v * mp.expm1(self.error_radius) + self._ulp(v)
        return ApproxReal(v, r, self.rigor)

    def log(self) -> "ApproxReal":
        mp = self._mp
        if self.value - self.error_radius <= 0:
            raise DomainError("log of an interval reaching zero or below")
        v = mp.log(self.value)
        r = -mp.log1p(-self.error_radius / self.value) + self._ulp(v) + mp.ldexp(1, 2 - mp.prec)
        return ApproxReal(v, r, self.rigor)

    def sqrt(self) -> "ApproxReal":
        mp = self._mp
        if self.value < 0:
            raise DomainError("sqrt of a negative value")
        v = mp.sqrt(self.value)
        r = (self.error_radius / v if v else mp.sqrt(self.error_radius)) + self._ulp(v)
        return ApproxReal(v, r, self.rigor)

    def scale2(self, n: int) -> "ApproxReal":
        """Exact multiplication by ``2**n``."""
        mp = self._mp
        return ApproxReal(mp.ldexp(self.value, n), mp.ldexp(self.error_radius, n), self.rigor)


@dataclass(frozen=True)
class ApproxComplex:
    """Complex value as a pair of :class:`ApproxReal` components."""

    re: ApproxReal
    im: ApproxReal

    @classmethod
    def from_mpc(cls, z, radius, ctx: PrecisionContext, rigor=Rigor.RIGOROUS):
        """Build from an mpc value and a single radius applied to both parts."""
        mp = ctx.mp
        z = mp.mpc(z)
        r = mp.mpf(radius)
        return cls(ApproxReal(z.real, r, rigor), ApproxReal(z.imag, r, rigor))

    @classmethod
    def exact(cls, z, ctx: PrecisionContext | None = None) -> "ApproxComplex":
        mp = (ctx or default_context()).mp
        if isinstance(z, ApproxComplex):
            return z
        if isinstance(z, ApproxReal):
            return cls(z, ApproxReal(mp.zero, mp.zero, z.rigor))
        z = mp.mpc(z)
        return cls(ApproxReal(z.real, mp.zero), ApproxReal(z.imag, mp.zero))

    @property
    def value(self):
        mp = _ctx_of(self.re.value)
        return mp.mpc(self.re.value, self.im.value)

    @property
    def error_radius(self):
        return max(self.re.error_radius, self.im.error_radius)

    @property
    def rigor(self) -> Rigor:
        return Rigor.combine(self.re.rigor, self.im.rigor)

    def conjugate(self) -> "ApproxComplex":
        return ApproxComplex(self.re, -self.im)

    def __repr__(self) -> str:
        return f"ApproxComplex({self.re!r}, {self.im!r})"


# ---------------------------------------------------------------------------
# decimal rendering


def _exact_decimal(x) -> Decimal:
    """Exact decimal expansion of a binary mpf."""
    sign, man, exp, _ = x._mpf_
    man, exp = int(man), int(exp)
    if not man:
        return Decimal(0)
    if exp >= 0:
        return Decimal((sign, tuple(map(int, str(man << exp))), 0))
    # built from a tuple: arithmetic such as scaleb would round to 28 digits
    return Decimal((sign, tuple(map(int, str(man * 5 ** (-exp)))), exp))


def _format_decimal(d: Decimal) -> str:
    if d.is_zero():
        return str(d)
    if -30 <= d.adjusted() < 30:
        return format(d, "f")
    return format(d, "e")


def _max_safe_digits(x: ApproxReal) -> int:
    r = x.error_radius
    if r == 0:
        return 10**9
    scale = max(1, abs(float(x.value))) if abs(x.value) < 1e300 else float("inf")
    bound = math.log10(scale) - float(mpmath.log10(r)) - 2
    d = math.floor(bound)
    if d >= bound:  # strict inequality in the precondition
        d -= 1
    return max(d, 0)


def _check_digits(x: ApproxReal, digits: int) -> None:
    if digits < 1:
        raise ValueError("digits must be positive")
    mp = x._mp
    limit = mp.power(10, -digits - 2) * max(mp.one, abs(x.value))
    if not x.error_radius < limit:
        raise InsufficientAccuracy(digits, _max_safe_digits(x))


def _round_sig(x, digits: int, rounding) -> Decimal:
    d = _exact_decimal(x)
    if d.is_zero():
        return Decimal(0).quantize(Decimal(1).scaleb(-(digits - 1)))
    with localcontext() as c:
        c.prec = digits
        c.rounding = rounding
        c.Emax = 10**9
        c.Emin = -(10**9)
        r = +d
        # pad to exactly ``digits`` significant digits ("1" -> "1.00")
        return r.quantize(Decimal((0, (1,), r.adjusted() - digits + 1)))


def to_decimal(x: ApproxReal, digits: int) -> str:
    """Correctly rounded (half-even) decimal string with ``digits`` significant digits.

    Raises :class:`InsufficientAccuracy` unless
    ``x.error_radius < 10**(-digits-2) * max(1, |x.value|)``.
    """
    _check_digits(x, digits)
    return _format_decimal(_round_sig(x.value, digits, ROUND_HALF_EVEN))


def to_decimal_truncated(x: ApproxReal, digits: int) -> str:
    """Like :func:`to_decimal` but truncating toward zero.

    Used for display of certified leading digits, the way constants are
    usually quoted ("0.77351...").
    """
    _check_digits(x, digits)
    return _format_decimal(_round_sig(x.value, digits, ROUND_DOWN))


def format_radius(r, digits: int = 2) -> str:
    """Upward-rounded short rendering of an error radius."""
    d = _exact_decimal(r) if not isinstance(r, (int, float)) else Decimal(r)
    if d.is_zero():
        return "0"
    with localcontext() as c:
        c.prec = digits
        c.rounding = ROUND_CEILING
        c.Emax = 10**9
        c.Emin = -(10**9)
        d = +d
    return format(d, "e")


def agree_to(x: ApproxReal, y: ApproxReal, digits: int) -> bool:
    """``|x - y| <= 10**-digits * max(1, |x|) + rad(x) + rad(y)``."""
    mp = x._mp
    yv = mp.mpf(y.value)
    lhs = abs(x.value - yv)
    scale = max(mp.one, abs(x.value), abs(yv))
    rhs = mp.power(10, -digits) * scale + x.error_radius + y.error_radius
    # the scale uses max(|x|,|y|) so the relation is symmetric
    return bool(lhs <= rhs)


def agreement_digits(x: ApproxReal, y: ApproxReal) -> float:
    """Number of decimal digits to which ``x`` and ``y`` provably agree.

    Radii count against agreement:
    ``-log10((|x - y| + rad(x) + rad(y)) / max(1, |x|, |y|))``.
    """
    mp = x._mp
    yv = mp.mpf(y.value)
    gap = abs(x.value - yv) + x.error_radius + y.error_radius
    if gap == 0:
        return math.inf
    scale = max(mp.one, abs(x.value), abs(yv))
    return float(-mp.log10(gap / scale))


def fixed_to_mpf(n: int, p: int, ctx: PrecisionContext):
    """Convert a fixed-point integer ``n * 2**-p`` to an mpf."""
    return ctx.mp.mpf(libmp.from_man_exp(n, -p))


def mpf_to_fixed(x, p: int) -> int:
    return libmp.to_fixed(x._mpf_, p)
