"""Reference kernels in plain Python + numpy.

Same contracts as the compiled ``_kernels`` extension; used when the
extension is not built or when ``PERMGV_PURE_PYTHON=1``.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .perms import ranks_of, unrank_many


def greedy_scan(
    n: int, d: int, order: np.ndarray | None = None, ball: np.ndarray | None = None
) -> np.ndarray:
    """Keep each scanned permutation whose distance to every kept word is >= d.

    ``order`` is an array of lexicographic ranks giving the scan order;
    ``None`` scans S_n in lexicographic order. Returns kept words as a
    (k, n) uint8 array in the order they were accepted.

    ``ball`` (permutations at distance 1..d-1 from the identity) enables a
    second test: ``cand`` conflicts with a kept word iff ``pi o cand`` is
    kept for some ``pi`` in the ball. It is used whenever the ball is
    smaller than the kept set; both tests give the same answer.
    """
    total = math.factorial(n)
    if order is None:
        source = (np.array(p, dtype=np.uint8) for p in itertools.permutations(range(n)))
        count = total
    else:
        order = np.asarray(order, dtype=np.int64)
        count = order.shape[0]
        source = iter(unrank_many(order, n)) if count else iter(())
    if d <= 2:
        # distinct permutations are always at distance >= 2
        return np.array(list(source), dtype=np.uint8).reshape(count, n)

    kept = np.empty((count, n), dtype=np.uint8)
    is_kept = np.zeros(total, dtype=bool) if ball is not None else None
    nb = 0 if ball is None else len(ball)
    k = 0
    for cand in source:
        if k:
            if is_kept is not None and nb < k:
                if is_kept[ranks_of(ball[:, cand])].any():
                    continue
            elif np.count_nonzero(kept[:k] != cand, axis=1).min() < d:
                continue
        kept[k] = cand
        if is_kept is not None:
            is_kept[ranks_of(cand[None, :])[0]] = True
        k += 1
    return kept[:k].copy()


def build_adjacency(perms: np.ndarray, ball: np.ndarray) -> np.ndarray:
    """Packed adjacency rows of the Cayley graph generated by ``ball``.

    ``perms`` lists S_n in lexicographic order, so row ``u`` is the
    permutation of rank ``u``. Vertex ``u`` is joined to ``pi o perms[u]``
    for every ``pi`` in ``ball``. Bit ``v`` of row ``u`` lives in word
    ``v // 64`` at bit position ``v % 64``.
    """
    n_vertices = perms.shape[0]
    words = (n_vertices + 63) // 64
    adj = np.zeros((n_vertices, words), dtype=np.uint64)
    rows = np.arange(n_vertices)
    for pi in ball:
        targets = ranks_of(pi[perms])
        adj[rows, targets >> 6] |= np.left_shift(np.uint64(1), (targets & 63).astype(np.uint64))
    return adj


def min_distance(words: np.ndarray) -> tuple[int, int, int]:
    """Smallest pairwise Hamming distance and the first pair (i < j) attaining it.

    Returns ``(n, -1, -1)`` when there are fewer than two words.
    """
    words = np.asarray(words, dtype=np.uint8)
    count, n = words.shape
    best, bi, bj = n, -1, -1
    for i in range(count - 1):
        dist = np.count_nonzero(words[i + 1 :] != words[i], axis=1)
        j = int(dist.argmin())
        if bi < 0 or dist[j] < best:
            best, bi, bj = int(dist[j]), i, i + 1 + j
            if best == 0:
                break
    return best, bi, bj
