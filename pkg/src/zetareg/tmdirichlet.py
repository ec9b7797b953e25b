"""Thue-Morse Dirichlet series and their analytic continuation.

Two series are handled::

    g(s) = sum_{n>=1} eps_n n^-s          f(s) = sum_{n>=0} eps_n (n+1)^-s

where ``eps_n = (-1)**popcount(n)``.

Direct region (``Re s >= sigma0``).  Grouping the indices ``2n, 2n+1`` and
using ``eps_2n = eps_n``, ``eps_2n+1 = -eps_n`` gives absolutely convergent
paired sums::

    g(s) = -1 + sum_{n>=1} eps_n [(2n)^-s - (2n+1)^-s]
    f(s) =      sum_{n>=0} eps_n [(2n+1)^-s - (2n+2)^-s]

Each bracket is bounded by ``|s| (2n)^(-sigma-1)`` (resp. ``(2n+1)``), which
gives the tail bound deposited in the error radius.

Continuation.  Writing ``(m + 1/2)^-s`` as a binomial series in ``1/(2m)``
(for g) or ``1/(2(m+1))`` (for f) inside the paired sums gives::

    g(s) = -1 + sum_{k>=1} (-1)^(k+1) C(s+k-1, k) g(s+k) / 2^(s+k)
    f(s) =      sum_{k>=1}            C(s+k-1, k) f(s+k) / 2^(s+k)

with ``C(s+k-1, k) = s (s+1) ... (s+k-1) / k!``.  Derivation for f:
``f(s) = 2^-s sum_m eps_m [(m+1/2)^-s - (m+1)^-s]`` and
``(m+1/2)^-s = (m+1)^-s (1 - 1/(2(m+1)))^-s
= sum_k C(s+k-1, k) 2^-k (m+1)^(-s-k)``; the ``k = 0`` term cancels.
Every shift raises the real part by one, so recursion ends in the direct
region.  At ``s = 0`` all binomials vanish, hence ``g(0) = -1`` and
``f(0) = 0``; differentiating at 0 gives

    g'(0) = sum_k (-1)^(k+1) g(k) / (k 2^k),    f'(0) = sum_k f(k) / (k 2^k).

Truncation of the functional equation uses ``|C(s+k-1, k)| <= prod (|s|+j)/k!``
and ``|g(sigma + it)|, |f(sigma + it)| <= zeta(sigma) <= 1 + 1/(sigma - 1)``.
"""

from __future__ import annotations

import contextlib
import enum
import functools
import math
import threading
from dataclasses import dataclass

import mpmath

from . import specialfns
from .mpcore import (
    ApproxComplex,
    ApproxReal,
    DomainError,
    PoleError,
    PrecisionContext,
    default_context,
)

__all__ = [
    "Method",
    "DirichletEvaluation",
    "TMConstants",
    "default_sigma0",
    "g",
    "g_direct",
    "f",
    "f_direct",
    "g_prime0",
    "f_prime0",
    "q_constant",
    "fm_phi",
    "tm_constants",
    "zeta_odious",
    "zeta_evil",
    "cache_disabled",
    "clear_cache",
]

SIGMA0 = 16
_EXTRA_FIXED_BITS = 8


class Method(enum.Enum):
    DIRECT_PAIRED = "DirectPaired"
    FUNCTIONAL_EQUATION = "FunctionalEquation"


@dataclass(frozen=True)
class DirichletEvaluation:
    s: ApproxComplex
    value: ApproxComplex
    method: Method
    terms_used: int
    k_truncation: int | None = None


@dataclass(frozen=True)
class TMConstants:
    g_prime0: ApproxReal
    q: ApproxReal
    phi: ApproxReal
    f_prime0: ApproxReal


def default_sigma0(ctx: PrecisionContext) -> int:
    """16 at the default precision; grows with precision to keep N ~ 2**15."""
    return max(SIGMA0, math.ceil(ctx.prec / 18))


# ---------------------------------------------------------------------------
# memo cache on the shift lattice


_cache: dict = {}
_cache_lock = threading.Lock()
_cache_state = threading.local()


def _cache_enabled() -> bool:
    return getattr(_cache_state, "enabled", True)


@contextlib.contextmanager
def cache_disabled():
    """Evaluate without the shared cache (each call uses a private memo)."""
    prev = _cache_enabled()
    _cache_state.enabled = False
    try:
        yield
    finally:
        _cache_state.enabled = prev


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


# ---------------------------------------------------------------------------
# direct paired sums in fixed point


def _is_real(s) -> bool:
    return not hasattr(s, "imag") or s.imag == 0


def _smallest_prime_factors(m: int) -> list[int]:
    spf = [0] * (m + 1)
    for i in range(2, m + 1):
        if spf[i] == 0:
            spf[i] = i
            for j in range(i * i, m + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


def _power_table(s, m: int, p: int, ctx: PrecisionContext):
    """Fixed-point ``n^-s`` for ``n = 0..m`` (index 0 unused).

    Returns ``(re, im, err_ulps)`` where ``im`` is None for real ``s`` and
    ``err_ulps`` bounds the per-entry error in units of ``2**-p``.
    Assumes ``Re s > 0`` so that every entry has modulus at most 1.
    """
    mp = ctx.mp
    one = 1 << p
    if _is_real(s):
        s = mp.mpf(s.real if hasattr(s, "imag") else s)
        if s == mp.floor(s):
            k = int(s)
            return [0, one] + [one // n**k for n in range(2, m + 1)], None, 1
    spf = _smallest_prime_factors(m)
    real = _is_real(s)
    re = [0] * (m + 1)
    im = None if real else [0] * (m + 1)
    re[1] = one
    to_fixed = mpmath.libmp.to_fixed
    if real:
        for n in range(2, m + 1):
            q = spf[n]
            if q == n:
                re[n] = to_fixed(mp.exp(-s * mp.log(n))._mpf_, p)
            else:
                re[n] = (re[q] * re[n // q]) >> p
    else:
        for n in range(2, m + 1):
            q = spf[n]
            if q == n:
                z = mp.exp(-s * mp.log(n))
                re[n] = to_fixed(z.real._mpf_, p)
                im[n] = to_fixed(z.imag._mpf_, p)
            else:
                r = n // q
                a, b, c, d = re[q], im[q], re[r], im[r]
                re[n] = (a * c - b * d) >> p
                im[n] = (a * d + b * c) >> p
    # each multiplication adds at most 2 ulps on top of its factors' errors
    return re, im, 3 * m.bit_length() + 3


def _direct_tail_bound(kind: str, s, n_last: int, mp):
    """Bound on the paired tail after pair index ``n_last``."""
    sigma = mp.mpf(s.real if hasattr(s, "imag") else s)
    a = mp.mpf(2 * n_last + (2 if kind == "g" else 3))
    return abs(s) * (a ** (-sigma - 1) + a ** (-sigma) / (2 * sigma))


_MAX_PAIRS = 10**7


def _choose_pairs(kind: str, s, tol, mp) -> int:
    sigma = mp.mpf(s.real if hasattr(s, "imag") else s)
    # in logs: tol is far below the float range at high precision
    log_guess = (mp.log(abs(s)) - mp.log(sigma) - mp.log(tol / 4)) / sigma
    guess = mp.exp(log_guess) / 2
    if guess > _MAX_PAIRS:
        raise DomainError(
            f"direct sum at Re(s) = {mp.nstr(sigma, 6)} would need ~{mp.nstr(guess, 3)} pairs; "
            "raise sigma0"
        )
    n = max(4, int(guess) - 1)
    while _direct_tail_bound(kind, s, n, mp) >= tol / 4:
        n = int(n * 1.05) + 1
    return n


def _direct(kind: str, s, ctx: PrecisionContext):
    """Paired direct sum; returns ``(value, radius, pairs_used)``."""
    mp = ctx.mp
    tol = ctx.tol
    n_pairs = _choose_pairs(kind, s, tol, mp)
    p = ctx.prec + _EXTRA_FIXED_BITS
    top = 2 * n_pairs + (1 if kind == "g" else 2)
    re, im, err = _power_table(s, top, p, ctx)
    acc_re = 0
    acc_im = 0
    if kind == "g":
        lo, off_a, off_b = 1, 0, 1  # (2n)^-s - (2n+1)^-s
    else:
        lo, off_a, off_b = 0, 1, 2  # (2n+1)^-s - (2n+2)^-s
    for n in range(lo, n_pairs + 1):
        i = 2 * n + off_a
        j = i + 1 if kind == "g" else 2 * n + off_b
        if n.bit_count() & 1:
            acc_re -= re[i] - re[j]
            if im is not None:
                acc_im -= im[i] - im[j]
        else:
            acc_re += re[i] - re[j]
            if im is not None:
                acc_im += im[i] - im[j]
    scale = mpmath.libmp.from_man_exp
    val_re = mp.mpf(scale(acc_re, -p))
    val_im = mp.mpf(scale(acc_im, -p)) if im is not None else mp.zero
    if kind == "g":
        val_re -= 1
    rounding = mp.ldexp(2 * (n_pairs + 1) * err + 4, -p)
    radius = _direct_tail_bound(kind, s, n_pairs, mp) + rounding
    value = mp.mpc(val_re, val_im) if im is not None else val_re
    return value, radius, n_pairs


# ---------------------------------------------------------------------------
# functional equation


def _zeta_majorant(sigma):
    """``zeta(sigma) <= 1 + 1/(sigma - 1)`` for ``sigma > 1``."""
    return 1 + 1 / (sigma - 1)


def _choose_k(s, ctx: PrecisionContext):
    """Smallest K whose functional-equation tail is below tol/4."""
    mp = ctx.mp
    sigma = mp.mpf(s.real if hasattr(s, "imag") else s)
    abs_s = abs(s)
    if abs_s == 0:
        return 0, mp.zero
    tol = ctx.tol
    c = mp.one  # majorant of |C(s+k-1, k)| at k
    k = 0
    while True:
        k += 1
        c = c * (abs_s + k - 1) / k
        # candidate K = k; bound the tail k' >= k + 1
        c_next = c * (abs_s + k) / (k + 1)
        sig_next = sigma + k + 1
        if sig_next > 1.5:
            rho = max(mp.mpf(0.5), (abs_s + k + 1) / (2 * (k + 2)))
            if rho < 0.9:
                tail = c_next * _zeta_majorant(sig_next) / mp.power(2, sig_next) / (1 - rho)
                if tail < tol / 4:
                    return k, tail
        if k > 100 * ctx.prec + 10 * int(abs_s):
            raise ArithmeticError("functional equation truncation did not converge")


class _Evaluator:
    """Evaluates g or f on lattices ``s + N`` with memoization."""

    def __init__(self, kind: str, ctx: PrecisionContext, sigma0: int, memo: dict | None):
        self.kind = kind
        self.ctx = ctx
        self.sigma0 = sigma0
        self.memo = memo

    def _key(self, s):
        mp = self.ctx.mp
        z = mp.mpc(s)
        return (
            self.kind,
            self.ctx.bits,
            self.ctx.guard_bits,
            self.sigma0,
            z.real._mpf_,
            z.imag._mpf_,
        )

    def _lookup(self, key):
        if self.memo is not None:
            return self.memo.get(key)
        with _cache_lock:
            return _cache.get(key)

    def _store(self, key, res):
        if self.memo is not None:
            self.memo[key] = res
        else:
            with _cache_lock:
                _cache.setdefault(key, res)

    def evaluate(self, s, force_fe: bool = False):
        """Returns ``(value, radius, method, terms_used, k_truncation)``."""
        mp = self.ctx.mp
        sigma = mp.mpf(s.real if hasattr(s, "imag") else s)
        direct = sigma >= self.sigma0 and not force_fe
        key = None if force_fe else self._key(s)
        if key is not None:
            hit = self._lookup(key)
            if hit is not None:
                return hit
        if direct:
            v, r, n = _direct(self.kind, s, self.ctx)
            res = (v, r, Method.DIRECT_PAIRED, n, None)
        else:
            res = self._functional(s)
        if key is not None:
            self._store(key, res)
        return res

    def _functional(self, s):
        ctx = self.ctx
        mp = ctx.mp
        K, tail = _choose_k(s, ctx)
        if K == 0:
            v = -mp.one if self.kind == "g" else mp.zero
            return (v, mp.zero, Method.FUNCTIONAL_EQUATION, 0, 0)
        # evaluate from the top of the lattice down to keep recursion shallow
        shifted = {}
        for k in range(K, 0, -1):
            shifted[k] = self.evaluate(s + k)
        two_ms = mp.exp(-s * mp.ln2)
        coef = two_ms  # C(s+k-1, k) 2^-(s+k), built up incrementally
        terms = []
        rad = tail
        mag = mp.zero
        terms_used = 0
        for k in range(1, K + 1):
            coef = coef * (s + k - 1) / (2 * k)
            v, r, _, n, _ = shifted[k]
            t = coef * v
            if self.kind == "g" and k % 2 == 0:
                t = -t
            terms.append(t)
            ac = abs(coef)
            rad += ac * r
            mag += abs(t)
            terms_used += n
        total = mp.fsum(terms)
        if self.kind == "g":
            total -= 1
        rad += ctx.ulp(mag + 1) * (4 * K + 8)
        return (total, rad, Method.FUNCTIONAL_EQUATION, terms_used, K)


def _coerce_s(s, ctx: PrecisionContext):
    mp = ctx.mp
    if isinstance(s, ApproxComplex):
        s = s.value
    elif isinstance(s, ApproxReal):
        s = s.value
    if isinstance(s, complex) or type(s).__name__ == "mpc":
        z = mp.mpc(s)
        return z.real if z.imag == 0 else z
    return mp.mpf(s)


def _wrap(kind, s, res, ctx) -> DirichletEvaluation:
    mp = ctx.mp
    v, r, method, n, k = res
    if _is_real(v):
        val = ApproxComplex(
            ApproxReal(mp.mpf(v.real if hasattr(v, "imag") else v), r),
            ApproxReal(mp.zero, mp.zero),
        )
    else:
        val = ApproxComplex.from_mpc(v, r, ctx)
    return DirichletEvaluation(ApproxComplex.exact(s, ctx), val, method, n, k)


def _run(kind, s, ctx, sigma0, method):
    ctx = ctx or default_context()
    sigma0 = default_sigma0(ctx) if sigma0 is None else sigma0
    s = _coerce_s(s, ctx)
    memo = None if _cache_enabled() else {}
    ev = _Evaluator(kind, ctx, sigma0, memo)
    sigma = s.real if hasattr(s, "imag") else s
    if method is Method.DIRECT_PAIRED:
        if sigma < sigma0:
            raise DomainError(f"direct evaluation needs Re(s) >= {sigma0}")
        v, r, n = _direct(kind, s, ctx)
        res = (v, r, Method.DIRECT_PAIRED, n, None)
    else:
        res = ev.evaluate(s, force_fe=method is Method.FUNCTIONAL_EQUATION)
    return _wrap(kind, s, res, ctx)


def g(s, ctx: PrecisionContext | None = None, *, sigma0: int | None = None,
      method: Method | None = None) -> DirichletEvaluation:
    """Entire continuation of ``sum_{n>=1} eps_n n^-s``.

    ``method=None`` picks the direct paired sum for ``Re s >= sigma0`` and
    the functional equation otherwise; an explicit method forces the route
    at the top level.
    """
    return _run("g", s, ctx, sigma0, method)


def g_direct(s, ctx: PrecisionContext | None = None, *, sigma0: int | None = None):
    return _run("g", s, ctx, sigma0, Method.DIRECT_PAIRED)


def f(s, ctx: PrecisionContext | None = None, *, sigma0: int | None = None,
      method: Method | None = None) -> DirichletEvaluation:
    """Entire continuation of ``sum_{n>=0} eps_n (n+1)^-s``."""
    return _run("f", s, ctx, sigma0, method)


def f_direct(s, ctx: PrecisionContext | None = None, *, sigma0: int | None = None):
    return _run("f", s, ctx, sigma0, Method.DIRECT_PAIRED)


# ---------------------------------------------------------------------------
# derivatives at 0 and the constants


def _prime0(kind: str, ctx: PrecisionContext) -> ApproxReal:
    mp = ctx.mp
    tol = ctx.tol
    # tail after K: sum_{k>K} zeta(k) / (k 2^k) <= 2 * 2^-K / (K+1)
    K = 2
    while 2 * mp.ldexp(1, -K) / (K + 1) >= tol / 4:
        K += 1
    tail = 2 * mp.ldexp(1, -K) / (K + 1)
    evaluate = g if kind == "g" else f
    terms = []
    rad = tail
    for k in range(K, 0, -1):
        e = evaluate(k, ctx).value.re
        t = mp.ldexp(e.value, -k) / k
        if kind == "g" and k % 2 == 0:
            t = -t
        terms.append(t)
        rad += mp.ldexp(e.error_radius, -k) / k
    val = mp.fsum(terms)
    rad += ctx.ulp(1) * (2 * K + 4)
    return ApproxReal(val, rad)


@functools.lru_cache(maxsize=16)
def _g_prime0_cached(ctx: PrecisionContext) -> ApproxReal:
    return _prime0("g", ctx)


@functools.lru_cache(maxsize=16)
def _f_prime0_cached(ctx: PrecisionContext) -> ApproxReal:
    return _prime0("f", ctx)


def g_prime0(ctx: PrecisionContext | None = None) -> ApproxReal:
    """``g'(0) = sum_{k>=1} (-1)^(k+1) g(k) / (k 2^k)``; equals ``-log Q``."""
    return _g_prime0_cached(ctx or default_context())


def f_prime0(ctx: PrecisionContext | None = None) -> ApproxReal:
    """``f'(0) = sum_{k>=1} f(k) / (k 2^k)``."""
    return _f_prime0_cached(ctx or default_context())


def q_constant(ctx: PrecisionContext | None = None) -> ApproxReal:
    """``Q = prod_{n>=1} (2n / (2n+1))^eps_n``, computed as ``exp(-g'(0))``."""
    return (-g_prime0(ctx)).exp()


def fm_phi(ctx: PrecisionContext | None = None) -> ApproxReal:
    """Flajolet-Martin constant ``2^(-1/2) e^gamma / Q``."""
    ctx = ctx or default_context()
    mp = ctx.mp
    gam = specialfns.euler_gamma(ctx)
    half_log2 = ApproxReal(mp.ln2 / 2, ctx.ulp(1))
    return (gam - half_log2 + g_prime0(ctx)).exp()


def tm_constants(ctx: PrecisionContext | None = None) -> TMConstants:
    ctx = ctx or default_context()
    return TMConstants(g_prime0(ctx), q_constant(ctx), fm_phi(ctx), f_prime0(ctx))


# ---------------------------------------------------------------------------
# odious / evil zeta functions


def _half_combo(a: ApproxComplex, b: ApproxComplex, sign: int) -> ApproxComplex:
    """``(a + sign * b) / 2`` componentwise."""
    re = (a.re + b.re) if sign > 0 else (a.re - b.re)
    im = (a.im + b.im) if sign > 0 else (a.im - b.im)
    return ApproxComplex(re.scale2(-1), im.scale2(-1))


def zeta_odious(s, ctx: PrecisionContext | None = None) -> ApproxComplex:
    """``sum_{n odious} n^-s = (zeta(s) - g(s)) / 2``."""
    ctx = ctx or default_context()
    s = _coerce_s(s, ctx)
    if s == 1:
        raise PoleError("zeta_odious has a pole at s = 1")
    z = specialfns.hurwitz_zeta(s, 1, ctx)
    return _half_combo(z, g(s, ctx).value, -1)


def zeta_evil(s, ctx: PrecisionContext | None = None) -> ApproxComplex:
    """``sum_{n evil} n^-s = (zeta(s) + g(s)) / 2``."""
    ctx = ctx or default_context()
    s = _coerce_s(s, ctx)
    if s == 1:
        raise PoleError("zeta_evil has a pole at s = 1")
    z = specialfns.hurwitz_zeta(s, 1, ctx)
    return _half_combo(z, g(s, ctx).value, +1)
