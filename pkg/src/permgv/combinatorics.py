"""Exact integer combinatorics on the symmetric group.

All counts are Python ints, so nothing here ever rounds. The only
floating point lives in :func:`binary_entropy` and :func:`log2_of_count`,
which are used for reporting logarithms of counts too large for a double.
"""
from __future__ import annotations

import math
from functools import lru_cache

__all__ = [
    "factorial",
    "binomial",
    "derangements",
    "sphere_volume",
    "binary_entropy",
    "log2_of_count",
    "log2_ratio",
    "ln_of_count",
]

# bits of mantissa kept when taking log2 of a huge integer
_MANTISSA_BITS = 64


def _check_nonneg(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")


def factorial(n: int) -> int:
    """Return ``n!`` exactly."""
    _check_nonneg("n", n)
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Return C(n, k), or 0 when ``k`` lies outside ``0..n``."""
    _check_nonneg("n", n)
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def _derangement_table(upto: int) -> tuple[int, ...]:
    table = [1, 0]
    for k in range(2, upto + 1):
        table.append((k - 1) * (table[k - 1] + table[k - 2]))
    return tuple(table[: upto + 1])


def derangements(k: int) -> int:
    """Number of fixed-point-free permutations of ``k`` symbols.

    Uses D_k = (k-1)(D_{k-1} + D_{k-2}) with D_0 = 1, D_1 = 0.
    """
    _check_nonneg("k", k)
    # round the table size up so nearby calls share one cache entry
    upto = max(64, 1 << (k.bit_length()))
    return _derangement_table(upto)[k]


def sphere_volume(n: int, r: int) -> int:
    """Number of permutations of ``n`` symbols within Hamming distance ``r`` of a fixed one."""
    _check_nonneg("n", n)
    if n < 1:
        raise ValueError("n must be at least 1")
    if r < 0:
        return 0
    if r >= n:
        return math.factorial(n)
    return sum(math.comb(n, k) * derangements(k) for k in range(r + 1))


def binary_entropy(x: float) -> float:
    """h2(x) = -x log2 x - (1-x) log2 (1-x), with h2(0) = h2(1) = 0."""
    x = float(x)
    if not 0.0 <= x <= 1.0 or math.isnan(x):
        raise ValueError(f"binary_entropy needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def log2_of_count(v: int) -> float:
    """log2 of a positive integer of any size.

    The top ``_MANTISSA_BITS`` bits are converted to a float and the
    discarded bit count is added back, so there is no overflow even for
    values like 300!.
    """
    _check_nonneg("v", v)
    if v == 0:
        raise ValueError("log2 of zero is undefined")
    shift = v.bit_length() - _MANTISSA_BITS
    if shift <= 0:
        return math.log2(v)
    return math.log2(v >> shift) + shift


def ln_of_count(v: int) -> float:
    return log2_of_count(v) * math.log(2.0)


def log2_ratio(a: int, b: int) -> float:
    """log2(a / b) for positive integers; exactly 0.0 when ``a == b``."""
    if a == b:
        _check_nonneg("a", a)
        if a == 0:
            raise ValueError("log2 of zero is undefined")
        return 0.0
    return log2_of_count(a) - log2_of_count(b)
