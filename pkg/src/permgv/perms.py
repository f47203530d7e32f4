"""Permutations as tuples of images, plus lexicographic rank/unrank.

A permutation of ``n`` symbols is stored 0-indexed: position ``i`` maps
to ``p[i]``. Text I/O shifts to 1-indexed at the boundary.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

import numpy as np

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(p: Sequence[int], n: int | None = None) -> bool:
    if n is not None and len(p) != n:
        return False
    return sorted(p) == list(range(len(p)))


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of positions at which ``a`` and ``b`` differ."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p o q``: apply ``q`` first, then ``p``."""
    return tuple(p[j] for j in q)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def rank(p: Sequence[int]) -> int:
    """Lexicographic rank of ``p`` among all permutations of ``len(p)`` symbols."""
    n = len(p)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Permutation:
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for n={n}")
    pool = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        f = math.factorial(i)
        idx, r = divmod(r, f)
        out.append(pool.pop(idx))
    return tuple(out)


def all_permutations(n: int) -> np.ndarray:
    """Every permutation of ``n`` symbols in lexicographic order, as an (n!, n) uint8 array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    return np.array(list(itertools.permutations(range(n))), dtype=np.uint8)


def ranks_of(perms: np.ndarray) -> np.ndarray:
    """Vectorised lexicographic rank of each row of ``perms``."""
    perms = np.asarray(perms)
    n = perms.shape[1]
    out = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
        out += smaller.astype(np.int64) * math.factorial(n - 1 - i)
    return out


def distance_ball(n: int, radius: int) -> np.ndarray:
    """All permutations within Hamming distance ``radius`` of the identity, identity excluded.

    Built directly from supports and derangements of the support rather than
    by filtering S_n, so it is cheap even when n! is large.
    """
    rows = []
    for k in range(2, min(radius, n) + 1):
        for support in itertools.combinations(range(n), k):
            for images in itertools.permutations(support):
                if any(a == b for a, b in zip(support, images)):
                    continue
                p = list(range(n))
                for a, b in zip(support, images):
                    p[a] = b
                rows.append(p)
    if not rows:
        return np.zeros((0, n), dtype=np.uint8)
    return np.array(rows, dtype=np.uint8)


def unrank_many(ranks: np.ndarray, n: int) -> np.ndarray:
    """Vectorised :func:`unrank` for an array of ranks; returns (len(ranks), n) uint8."""
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    m = ranks.shape[0]
    pool = np.tile(np.arange(n, dtype=np.uint8), (m, 1))
    out = np.empty((m, n), dtype=np.uint8)
    rows = np.arange(m)
    for pos, i in enumerate(range(n - 1, -1, -1)):
        f = math.factorial(i)
        idx, ranks = np.divmod(ranks, f)
        out[:, pos] = pool[rows, idx]
        # drop the chosen symbol from each row's pool
        keep = np.ones_like(pool, dtype=bool)
        keep[rows, idx] = False
        pool = pool[keep].reshape(m, n - 1 - pos)
    return out
