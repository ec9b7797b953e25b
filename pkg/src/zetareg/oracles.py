"""Slow brute-force estimators used to cross-check the fast routes.

Everything here runs in float64 with numpy, in fixed-size chunks so that the
reduction order (and therefore the result) does not depend on anything but
``N``.  Every estimate is flagged heuristic.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import specialfns as sf
from .mpcore import ApproxReal, DomainError, PrecisionContext, Rigor, default_context

__all__ = [
    "OracleEstimate",
    "DEFAULT_ORACLE_N",
    "default_oracle_n",
    "q_product_oracle",
    "phi_product_oracle",
    "dirichlet_partial",
]

DEFAULT_ORACLE_N = 10**7
_CHUNK = 1 << 20
_EPS = np.finfo(np.float64).eps


def default_oracle_n() -> int:
    return int(os.environ.get("REGPROD_ORACLE_N", DEFAULT_ORACLE_N))


@dataclass(frozen=True)
class OracleEstimate:
    value: ApproxReal
    terms: int
    error_estimate: float

    def __post_init__(self):
        if self.terms <= 0 or not self.error_estimate > 0:
            raise ValueError("oracle estimates need terms > 0 and a positive error estimate")
        if self.value.rigor is not Rigor.HEURISTIC:
            raise ValueError("oracle estimates are always heuristic")


def _signs(idx: np.ndarray) -> np.ndarray:
    return 1 - 2 * (np.bitwise_count(idx) & 1).astype(np.int64)


def _chunked_sum(term_fn, lo: int, hi: int) -> complex:
    """``sum_{n=lo}^{hi} term_fn(n_array)`` with a fixed chunked reduction."""
    parts_re = []
    parts_im = []
    start = lo
    while start <= hi:
        stop = min(hi, start + _CHUNK - 1)
        t = term_fn(np.arange(start, stop + 1, dtype=np.int64))
        parts_re.append(float(np.sum(t.real)))
        if np.iscomplexobj(t):
            parts_im.append(float(np.sum(t.imag)))
        start = stop + 1
    return complex(math.fsum(parts_re), math.fsum(parts_im))


def _pair_log_term(m: np.ndarray) -> np.ndarray:
    # eps_m * log(4m(4m+3) / ((4m+1)(4m+2))) = eps_m * log1p(-2 / ((4m+1)(4m+2)))
    mf = m.astype(np.float64)
    return _signs(m) * np.log1p(-2.0 / ((4 * mf + 1) * (4 * mf + 2)))


def _paired_log_sum(n: int) -> tuple[float, float]:
    """Partial sum to ``n`` plus a heuristic error estimate.

    The estimate is the larger of the majorant ``1/(8n)`` for the tail
    (each term is at most ``1/(8 m^2)`` in size) and the Aitken gap from the
    partial sums at ``n/100``, ``n/10`` and ``n``.
    """
    checkpoints = [max(1, n // 100), max(1, n // 10), n]
    sums = []
    acc = 0.0
    prev = 0
    for c in checkpoints:
        acc += _chunked_sum(_pair_log_term, prev + 1, c).real if c > prev else 0.0
        prev = c
        sums.append(acc)
    s0, s1, s2 = sums
    d1, d2 = s1 - s0, s2 - s1
    denom = d2 - d1
    aitken_gap = abs(d2 * d2 / denom) if denom != 0 else abs(d2)
    rounding = 8 * _EPS * math.log2(n + 2)
    return s2, max(1.0 / (8 * n), aitken_gap) + rounding


def _heuristic(x: float, err: float, ctx: PrecisionContext) -> ApproxReal:
    mp = ctx.mp
    return ApproxReal(mp.mpf(x), mp.mpf(err), Rigor.HEURISTIC)


def q_product_oracle(n: int, ctx: PrecisionContext | None = None) -> OracleEstimate:
    """``Q`` from the index-paired partial product with ``n`` pairs.

    ``log Q = log(3/2) + sum_{m>=1} eps_m log(4m(4m+3) / ((4m+1)(4m+2)))``,
    the first term being the unpaired index 1.
    """
    if n < 10**3:
        raise DomainError("oracle needs N >= 1000")
    ctx = ctx or default_context()
    s, err = _paired_log_sum(n)
    q = math.exp(math.log(1.5) + s)
    e = q * math.expm1(err)
    return OracleEstimate(_heuristic(q, e, ctx), n, e)


def phi_product_oracle(n: int, ctx: PrecisionContext | None = None) -> OracleEstimate:
    """Flajolet-Martin constant from its defining product truncated at ``n``.

    Uses the harmonic-number route for Euler's constant, so no production
    routine enters the estimate.
    """
    if n < 10**3:
        raise DomainError("oracle needs N >= 1000")
    ctx = ctx or default_context()
    s, err = _paired_log_sum(n)
    gamma = float(sf.euler_gamma_harmonic(ctx).value)
    phi = 2**-0.5 * math.exp(gamma) * (2.0 / 3.0) * math.exp(-s)
    e = phi * math.expm1(err)
    return OracleEstimate(_heuristic(phi, e, ctx), n, e)


def dirichlet_partial(kind: str, s, n: int, ctx: PrecisionContext | None = None,
                      *, paired: bool = False) -> OracleEstimate:
    """Partial sums of ``g``, ``f`` or the odious zeta function.

    Unpaired sums use ``n`` terms; paired sums use ``n`` index pairs.  The
    value is real when ``s`` is real, otherwise it is the real part and the
    imaginary part is available via :func:`dirichlet_partial_complex`.
    """
    z, err = _partial(kind, s, n, paired)
    ctx = ctx or default_context()
    return OracleEstimate(_heuristic(z.real, err, ctx), n, err)


def dirichlet_partial_complex(kind: str, s, n: int, *, paired: bool = False) -> tuple[complex, float]:
    """Complex partial sum and its error estimate."""
    return _partial(kind, s, n, paired)


def _partial(kind: str, s, n: int, paired: bool) -> tuple[complex, float]:
    if kind not in ("g", "f", "zeta_odious"):
        raise DomainError(f"unknown series {kind!r}")
    if n < 1:
        raise DomainError("need at least one term")
    s = complex(s)
    sigma = s.real
    real_s = s.imag == 0

    def power(nn):
        x = nn.astype(np.float64)
        if real_s:
            return np.power(x, -sigma)
        return np.exp(-s * np.log(x))

    if paired:
        if kind == "zeta_odious":
            raise DomainError("pairing does not apply to the odious zeta function")
        if not sigma > 0:
            raise DomainError("paired sums need Re(s) > 0")
        if kind == "g":
            total = -1.0 + _chunked_sum(lambda m: _signs(m) * (power(2 * m) - power(2 * m + 1)), 1, n)
            a = 2 * n + 2
        else:
            total = _chunked_sum(lambda m: _signs(m) * (power(2 * m + 1) - power(2 * m + 2)), 0, n)
            a = 2 * n + 3
        tail = abs(s) * (a ** (-sigma - 1) + a ** (-sigma) / (2 * sigma))
    else:
        if not sigma > 1:
            raise DomainError("unpaired sums need Re(s) > 1")
        if kind == "g":
            total = _chunked_sum(lambda m: _signs(m) * power(m), 1, n)
        elif kind == "f":
            total = _chunked_sum(lambda m: _signs(m) * power(m + 1), 0, n - 1)
        else:
            total = _chunked_sum(lambda m: (np.bitwise_count(m) & 1) * power(m), 1, n)
        # the tail is a sub-sum of sum_{k>n} k^-sigma
        tail = n ** (1 - sigma) / (sigma - 1)
    rounding = 8 * _EPS * (abs(total) + 1) * math.log2(n + 2)
    if not real_s:
        total = complex(total)
    else:
        total = complex(total.real, 0.0)
    return total, float(tail + rounding)
