"""Special functions and classical constants at arbitrary precision.

All routines are built on mpmath's multiprecision floats but implement their
own series with explicit remainder bounds:

* Hurwitz zeta and its ``s``-derivative by Euler-Maclaurin summation,
* log-Gamma by the Stirling series after an upward argument shift,
* Euler's constant by the Brent-McMillan algorithm, with Euler-Maclaurin
  on harmonic numbers as an independent second route,
* the Glaisher-Kinkelin constant from ``zeta'(-1)`` and from ``zeta'(2)``.

Remainder bounds use ``|B_2m(t - floor t)| <= 4 (2m)! / (2 pi)**2m``.
"""

from __future__ import annotations

import enum
import functools
import math
import threading
from fractions import Fraction

import mpmath

from .mpcore import (
    ApproxComplex,
    ApproxReal,
    DomainError,
    PoleError,
    PrecisionContext,
    agreement_digits,
    default_context,
)

__all__ = [
    "ConstantTag",
    "UnsupportedPoint",
    "bernoulli_b2",
    "euler_gamma",
    "euler_gamma_brent_mcmillan",
    "euler_gamma_harmonic",
    "log_gamma",
    "log_gamma_real",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv0",
    "hurwitz_sderiv0_complex",
    "riemann_zeta",
    "zeta_prime",
    "glaisher",
    "glaisher_routes",
    "constant",
]


class UnsupportedPoint(DomainError):
    """zeta' requested at a point outside the supported set."""


class ConstantTag(enum.Enum):
    EULER_GAMMA = "euler_gamma"
    GLAISHER = "glaisher"
    LOG_2PI = "log_2pi"
    PI = "pi"


# ---------------------------------------------------------------------------
# Bernoulli numbers


_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = []  # _bern_cache[k-1] = B_{2k}


def _tangent_numbers(n: int) -> list[int]:
    """T_1..T_n (tangent numbers), integer-only recurrence."""
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t[1:]


def bernoulli_b2(k: int) -> Fraction:
    """``B_{2k}`` as an exact fraction, ``k >= 1``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    with _bern_lock:
        if len(_bern_cache) < k:
            n = max(k, 2 * len(_bern_cache), 32)
            tn = _tangent_numbers(n)
            _bern_cache[:] = [
                Fraction((-1) ** (j - 1) * 2 * j * tn[j - 1], 4**j * (4**j - 1))
                for j in range(1, n + 1)
            ]
        return _bern_cache[k - 1]


def _bern_abs_bound(mp, m: int):
    """Upper bound for ``|B_2m(t - floor t)| / (2m)!``."""
    return 4 / (2 * mp.pi) ** (2 * m)


def _as_ctx(ctx):
    return ctx if ctx is not None else default_context()


def _to_mp(x, mp):
    if isinstance(x, (ApproxReal, ApproxComplex)):
        return x.value if isinstance(x, ApproxComplex) else mp.mpf(x.value)
    if isinstance(x, complex) or type(x).__name__ == "mpc":
        return mp.mpc(x)
    return mp.mpf(x)


def _is_real(z) -> bool:
    return not hasattr(z, "imag") or z.imag == 0


# ---------------------------------------------------------------------------
# Euler's constant


@functools.lru_cache(maxsize=32)
def euler_gamma_brent_mcmillan(ctx: PrecisionContext) -> ApproxReal:
    """Brent-McMillan algorithm B1.

    With ``n`` chosen so that ``pi * exp(-4n)`` is far below the tolerance,
    ``U/V - log n`` is within ``pi exp(-4n)`` of gamma once the sums are cut
    at ``k ~ 3.5911 n`` (plus margin).
    """
    mp = ctx.mp
    n = math.ceil((ctx.prec + 8) * math.log(2) / 4)
    kmax = math.ceil(3.5911 * n) + 20
    n2 = mp.mpf(n) ** 2
    a = -mp.log(n)
    b = mp.one
    u, v = a, b
    for k in range(1, kmax + 1):
        b = b * n2 / (k * k)
        a = (a * n2 / k + b) / k
        u += a
        v += b
    val = u / v
    rad = 4 * mp.pi * mp.exp(-4 * n) + ctx.ulp(val) * kmax
    return ApproxReal(val, rad)


@functools.lru_cache(maxsize=32)
def euler_gamma_harmonic(ctx: PrecisionContext) -> ApproxReal:
    """gamma = H_N - log N - 1/(2N) + sum_j B_2j / (2j N^2j) + R.

    ``|R| <= 4 (2M)! / ((2 pi)^2M * 2M * N^2M)``.
    """
    mp = ctx.mp
    tol = ctx.tol
    m = max(4, ctx.prec // 8)
    n = m
    while True:
        bound = 4 * mp.factorial(2 * m) / ((2 * mp.pi) ** (2 * m) * (2 * m) * mp.mpf(n) ** (2 * m))
        if bound < tol / 16:
            break
        n *= 2
    h = mp.fsum(mp.one / k for k in range(1, n + 1))
    nn = mp.mpf(n)
    corr = mp.fsum(
        mp.mpf(bernoulli_b2(j).numerator) / bernoulli_b2(j).denominator / (2 * j * nn ** (2 * j))
        for j in range(1, m + 1)
    )
    val = h - mp.log(nn) - 1 / (2 * nn) + corr
    return ApproxReal(val, bound + ctx.ulp(h) * (n + m + 4))


def euler_gamma(ctx: PrecisionContext | None = None) -> ApproxReal:
    """Euler-Mascheroni constant (production route: Brent-McMillan)."""
    return euler_gamma_brent_mcmillan(_as_ctx(ctx))


# ---------------------------------------------------------------------------
# log-Gamma (Stirling series)


def _log_gamma_mp(z, ctx: PrecisionContext):
    """Principal-branch log Gamma(z) as (value, radius); z an mpf or mpc."""
    mp = ctx.mp
    real = _is_real(z)
    if real:
        z = mp.mpf(z.real if hasattr(z, "real") else z)
        if z <= 0 and z == mp.floor(z):
            raise PoleError(f"log-Gamma pole at {z}")
        if z < 0:
            z = mp.mpc(z)
            real = False
    tol = ctx.tol
    r = 0.12 * ctx.prec + 8
    while True:
        shift = max(0, math.ceil(r - float(z.real)))
        w = z + shift
        aw = abs(w)
        sec2 = 2 * aw / (aw + w.real)  # sec^2(arg(w)/2)
        terms = []
        wpow = w
        w2 = w * w
        prev_bound = None
        ok = False
        for j in range(1, 4 * ctx.prec):
            b = bernoulli_b2(j)
            terms.append(mp.mpf(b.numerator) / (b.denominator * (2 * j) * (2 * j - 1)) / wpow)
            b_next = bernoulli_b2(j + 1)
            bound = (
                abs(mp.mpf(b_next.numerator) / b_next.denominator)
                / ((2 * j + 2) * (2 * j + 1) * aw ** (2 * j + 1))
                * sec2 ** (j + 1)
            )
            if bound < tol / 16:
                ok = True
                break
            if prev_bound is not None and bound > prev_bound:
                break
            prev_bound = bound
            wpow *= w2
        if ok:
            break
        r *= 1.5
    half_log_2pi = mp.log(2 * mp.pi) / 2
    stir = (w - mp.mpf(0.5)) * mp.log(w) - w + half_log_2pi + mp.fsum(terms)
    if shift:
        if real:
            prod = mp.one
            for k in range(shift):
                prod *= z + k
            stir -= mp.log(prod)
        else:
            stir -= mp.fsum(mp.log(z + k) for k in range(shift))
    rad = bound + ctx.ulp(abs(stir) + abs(w) * mp.log(aw) + 1) * (len(terms) + 2 * shift + 8)
    return stir, rad


def log_gamma(z, ctx: PrecisionContext | None = None) -> ApproxComplex:
    """Principal-branch log Gamma(z) for complex ``z`` (not a pole).

    The branch is the analytic continuation from the positive real axis
    into the plane cut along ``(-inf, 0]``; on the cut the upper-side limit
    is returned.
    """
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    z = mp.mpc(_to_mp(z, mp))
    if z.imag == 0:
        zr = z.real
        if zr <= 0 and zr == mp.floor(zr):
            raise PoleError(f"log-Gamma pole at {zr}")
        if zr > 0:
            val, rad = _log_gamma_mp(zr, ctx)
            return ApproxComplex(ApproxReal(val, rad), ApproxReal(mp.zero, mp.zero))
    val, rad = _log_gamma_mp(z, ctx)
    return ApproxComplex.from_mpc(val, rad, ctx)


def log_gamma_real(x, ctx: PrecisionContext | None = None) -> ApproxReal:
    """log Gamma(x) for real ``x > 0``."""
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    x = mp.mpf(_to_mp(x, mp))
    if x <= 0:
        raise DomainError("log_gamma_real needs x > 0")
    val, rad = _log_gamma_mp(x, ctx)
    return ApproxReal(val, rad)


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin


def _rising_abs(mp, s, m: int):
    """Majorants for |(s)_m| and |d/ds (s)_m| (rising factorial)."""
    p, dp = mp.one, mp.zero
    for i in range(m):
        f = abs(s + i)
        dp = dp * f + p
        p = p * f
    return p, dp


def _em_hurwitz(s, x, ctx: PrecisionContext, deriv: bool):
    """Euler-Maclaurin for zeta(s, x) and optionally d/ds zeta(s, x).

    ``s`` real or complex, ``x`` with positive real part; complex ``s``
    together with complex ``x`` is not supported.

    Returns ``(value, value_radius, derivative, derivative_radius)``.
    """
    mp = ctx.mp
    tol = ctx.tol
    complex_x = not _is_real(x)
    complex_s = not _is_real(s)
    if complex_x and complex_s:
        raise DomainError("complex s with complex shift is not supported")
    if not complex_s:
        s = mp.mpf(s.real if hasattr(s, "real") else s)
    if not complex_x:
        x = mp.mpf(x.real if hasattr(x, "real") else x)
    sigma = mp.mpf(s.real) if complex_s else s
    xr = x.real if complex_x else x
    xi = abs(x.imag) if complex_x else mp.zero
    abs_s = abs(s)

    m = max(4, ctx.prec // 6 + math.ceil(float(abs_s)))
    if sigma + 2 * m - 1 <= 1:
        m = math.ceil(float(2 - sigma)) + 4
    n = m + math.ceil(float(abs_s)) + 1
    pm, dpm = _rising_abs(mp, s, 2 * m)
    c = sigma + 2 * m - 1
    while True:
        a_re = n + xr
        base = 4 / (2 * mp.pi) ** (2 * m) * a_re ** (1 - sigma - 2 * m) / c
        rv = base * pm
        rd = base * (dpm + pm * (abs(mp.log(a_re)) + 2 * xi / a_re + 1 / c)) if deriv else mp.zero
        if rv < tol / 16 and rd < tol / 16:
            break
        n *= 2

    # direct head
    val_terms = []
    der_terms = []
    for k in range(n):
        w = x + k
        lw = mp.log(w)
        p = mp.exp(-s * lw) if not (s == 0) else mp.one
        val_terms.append(p)
        if deriv:
            der_terms.append(-lw * p)
    a = x + n
    la = mp.log(a)
    a_ms = mp.exp(-s * la)
    a_1ms = a * a_ms
    if s == 1:
        raise PoleError("zeta(s, x) has a pole at s = 1")
    sm1 = s - 1
    val_terms.append(a_1ms / sm1)
    val_terms.append(a_ms / 2)
    if deriv:
        der_terms.append(-a_1ms * (la / sm1 + 1 / (sm1 * sm1)))
        der_terms.append(-la * a_ms / 2)

    # Bernoulli corrections: B_2j/(2j)! (s)_{2j-1} a^{-s-2j+1}
    p, dp = s, mp.one  # (s)_1 and its derivative
    inv_a2 = 1 / (a * a)
    apow = a_ms / a  # a^{-s-1}
    fact = mp.mpf(2)  # (2j)!
    for j in range(1, m + 1):
        b = bernoulli_b2(j)
        coef = mp.mpf(b.numerator) / b.denominator / fact
        val_terms.append(coef * p * apow)
        if deriv:
            der_terms.append(coef * apow * (dp - la * p))
        # advance (s)_{2j-1} -> (s)_{2j+1}
        for i in (2 * j - 1, 2 * j):
            dp = dp * (s + i) + p
            p = p * (s + i)
        apow *= inv_a2
        fact *= (2 * j + 1) * (2 * j + 2)

    nterms = len(val_terms)
    val = mp.fsum(val_terms)
    mag = mp.fsum(abs(t) for t in val_terms)
    rv = rv + ctx.ulp(mag) * (nterms + 8)
    if deriv:
        der = mp.fsum(der_terms)
        dmag = mp.fsum(abs(t) for t in der_terms)
        rd = rd + ctx.ulp(dmag) * (nterms + 8)
    else:
        der = None
    return val, rv, der, rd


def hurwitz_zeta(s, x, ctx: PrecisionContext | None = None) -> ApproxComplex:
    """Analytic continuation of ``sum_{n>=0} (n + x)**-s`` for real ``x > 0``."""
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    s = _to_mp(s, mp)
    x = mp.mpf(_to_mp(x, mp))
    if x <= 0:
        raise DomainError("Hurwitz zeta needs x > 0")
    if s == 1:
        raise PoleError("zeta(s, x) has a pole at s = 1")
    val, rad, _, _ = _em_hurwitz(s, x, ctx, deriv=False)
    if _is_real(val):
        re = val.real if hasattr(val, "imag") else val
        return ApproxComplex(ApproxReal(mp.mpf(re), rad), ApproxReal(mp.zero, mp.zero))
    return ApproxComplex.from_mpc(val, rad, ctx)


def riemann_zeta(s, ctx: PrecisionContext | None = None) -> ApproxReal:
    """zeta(s) for real ``s != 1``."""
    z = hurwitz_zeta(s, 1, ctx)
    return z.re


def hurwitz_zeta_sderiv0(x, ctx: PrecisionContext | None = None) -> ApproxReal:
    """``d/ds zeta(s, x)`` at ``s = 0`` for real ``x > 0``.

    Lerch: this equals ``log(Gamma(x) / sqrt(2 pi))``.
    """
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    x = mp.mpf(_to_mp(x, mp))
    if x <= 0:
        raise DomainError("hurwitz_zeta_sderiv0 needs x > 0")
    _, _, der, rad = _em_hurwitz(mp.zero, x, ctx, deriv=True)
    return ApproxReal(der, rad)


def hurwitz_sderiv0_complex(x, ctx: PrecisionContext | None = None) -> ApproxComplex:
    """``d/ds zeta(s, x)`` at ``s = 0`` for complex ``x`` with ``Re x > 0``.

    Internal helper for the quadratic-splitting route; uses principal
    logarithms of ``n + x``.
    """
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    x = mp.mpc(_to_mp(x, mp))
    if x.real <= 0:
        raise DomainError("needs Re x > 0")
    _, _, der, rad = _em_hurwitz(mp.zero, x, ctx, deriv=True)
    return ApproxComplex.from_mpc(der, rad, ctx)


_ZETA_PRIME_POINTS = (-1, 0, 2)


def zeta_prime(s0: int, ctx: PrecisionContext | None = None) -> ApproxReal:
    """Riemann ``zeta'(s0)`` for ``s0`` in {-1, 0, 2}."""
    if s0 not in _ZETA_PRIME_POINTS:
        raise UnsupportedPoint(f"zeta' only supported at {_ZETA_PRIME_POINTS}, got {s0}")
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    _, _, der, rad = _em_hurwitz(mp.mpf(s0), mp.one, ctx, deriv=True)
    return ApproxReal(der, rad)


# ---------------------------------------------------------------------------
# Glaisher-Kinkelin


def glaisher_routes(ctx: PrecisionContext | None = None) -> tuple[ApproxReal, ApproxReal]:
    """A by ``exp(1/12 - zeta'(-1))`` and by
    ``(2 pi)^(1/12) exp(gamma/12 - zeta'(2) / (2 pi^2))``."""
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    twelfth = ApproxReal(mp.one / 12, ctx.ulp(1))
    a1 = (twelfth - zeta_prime(-1, ctx)).exp()
    two_pi = ApproxReal(2 * mp.pi, ctx.ulp(7))
    pi2 = ApproxReal(mp.pi**2, ctx.ulp(10))
    expo = euler_gamma(ctx) * twelfth - zeta_prime(2, ctx) / pi2.scale2(1)
    a2 = (two_pi.log() * twelfth + expo).exp()
    return a1, a2


@functools.lru_cache(maxsize=32)
def _glaisher_cached(ctx: PrecisionContext) -> ApproxReal:
    a1, a2 = glaisher_routes(ctx)
    if agreement_digits(a1, a2) < 0.5 * ctx.bits * math.log10(2):
        raise ArithmeticError(f"Glaisher routes disagree: {a1!r} vs {a2!r}")
    return a1


def glaisher(ctx: PrecisionContext | None = None) -> ApproxReal:
    """Glaisher-Kinkelin constant A (both routes computed and compared)."""
    return _glaisher_cached(_as_ctx(ctx))


def constant(tag: ConstantTag, ctx: PrecisionContext | None = None) -> ApproxReal:
    ctx = _as_ctx(ctx)
    mp = ctx.mp
    if tag is ConstantTag.EULER_GAMMA:
        return euler_gamma(ctx)
    if tag is ConstantTag.GLAISHER:
        return glaisher(ctx)
    if tag is ConstantTag.LOG_2PI:
        v = mp.log(2 * mp.pi)
        return ApproxReal(v, ctx.ulp(v))
    if tag is ConstantTag.PI:
        return ApproxReal(+mp.pi, ctx.ulp(4))
    raise ValueError(tag)
