"""Thue-Morse signs and the odious / evil integers."""

from __future__ import annotations

import enum
import itertools
from typing import Iterator

import numpy as np

__all__ = [
    "ParityClass",
    "tm_sign",
    "is_odious",
    "is_evil",
    "members",
    "nth_member",
    "tm_signs_array",
]


class ParityClass(enum.Enum):
    ODIOUS = "odious"
    EVIL = "evil"


def tm_sign(n: int) -> int:
    """``(-1)**popcount(n)``; ``tm_sign(0) == 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return -1 if n.bit_count() & 1 else 1


def is_odious(n: int) -> bool:
    if n < 1:
        raise ValueError("odious/evil classes contain positive integers only")
    return bool(n.bit_count() & 1)


def is_evil(n: int) -> bool:
    return not is_odious(n)


def members(cls: ParityClass) -> Iterator[int]:
    """All members of ``cls`` in increasing order."""
    want = 1 if cls is ParityClass.ODIOUS else 0
    return (n for n in itertools.count(1) if n.bit_count() & 1 == want)


def nth_member(cls: ParityClass, k: int) -> int:
    """The ``k``-th smallest member (1-based), by direct scan."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return next(itertools.islice(members(cls), k - 1, None))


def tm_signs_array(n: int, start: int = 0) -> np.ndarray:
    """Signs for ``start, ..., start + n - 1`` as an int64 array."""
    idx = np.arange(start, start + n, dtype=np.int64)
    return 1 - 2 * (np.bitwise_count(idx) & 1).astype(np.int64)
