"""Zeta-regularized products of sequences built on the Thue-Morse signs.

The main entry points are :func:`regprod_eval` for a :class:`SequenceSpec`,
the series :func:`g` and :func:`f`, and the constants :func:`q_constant` and
:func:`fm_phi`.  All values are :class:`ApproxReal` / :class:`ApproxComplex`
balls carrying an error radius.
"""

from .mpcore import (
    ApproxComplex,
    ApproxReal,
    DomainError,
    InsufficientAccuracy,
    PoleError,
    PrecisionContext,
    Rigor,
    agree_to,
    agreement_digits,
    to_decimal,
)
from .regprod import (
    Kind,
    RegProdResult,
    Route,
    RouteMismatch,
    SequenceSpec,
    closed_form,
    partition_combine,
    regprod_eval,
    regprod_evil,
    regprod_odious,
    regprod_shifted,
    split_head,
)
from .sequences import ParityClass, is_evil, is_odious, members, nth_member, tm_sign
from .tmdirichlet import (
    Method,
    f,
    f_prime0,
    fm_phi,
    g,
    g_prime0,
    q_constant,
    tm_constants,
    zeta_evil,
    zeta_odious,
)

__version__ = "0.1.0"
