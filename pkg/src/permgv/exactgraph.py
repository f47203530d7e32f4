"""The distance graph on S_n for small n and exact quantities computed on it.

Vertices are permutations indexed by lexicographic rank; two vertices are
adjacent when their Hamming distance lies in 1..d-1. Independent sets are
exactly permutation codes of minimum distance d.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from . import kernels
from .bounds import CodeParameters
from .perms import Permutation, all_permutations, distance_ball, rank, unrank

DEFAULT_MAX_N = 7
LARGE_MAX_N = 8
EXACT_ALPHA_MAX_N = 5
EXACT_ALPHA_LONG_RUN_MAX_N = 6

Strategy = Literal["greedy-lex", "random-greedy", "best-of-k"]


class GraphTooLargeError(ValueError):
    pass


def adjacency_bytes(n: int) -> int:
    """Memory used by the packed adjacency matrix of the graph on S_n."""
    nv = math.factorial(n)
    return nv * ((nv + 63) // 64) * 8


@dataclass(frozen=True, eq=False)
class DistanceGraph:
    n: int
    d: int
    adjacency: np.ndarray  # (n!, ceil(n!/64)) uint64, bit v of row u <=> u ~ v

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    def vertex(self, v: int) -> Permutation:
        return unrank(v, self.n)

    def index(self, p: Permutation) -> int:
        return rank(p)

    def _row_bits(self, v: int) -> np.ndarray:
        return np.unpackbits(self.adjacency[v].view(np.uint8), bitorder="little")[: self.vertex_count]

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self._row_bits(v))

    def adjacent(self, u: int, v: int) -> bool:
        return bool((int(self.adjacency[u, v >> 6]) >> (v & 63)) & 1)

    def degree(self, v: int) -> int:
        return int(np.bitwise_count(self.adjacency[v]).sum())

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.adjacency).sum(axis=1, dtype=np.int64)

    @cached_property
    def rows(self) -> list[int]:
        """Adjacency rows as Python-int bitsets, for set-heavy searches."""
        return [int.from_bytes(row.tobytes(), "little") for row in self.adjacency]

    def is_independent(self, vertices) -> bool:
        rows = self.rows
        chosen = 0
        for v in vertices:
            chosen |= 1 << int(v)
        return all(not (rows[int(v)] & chosen) for v in vertices)


def build_graph(
    params: CodeParameters, *, allow_large: bool = False, max_n: int | None = None
) -> DistanceGraph:
    """Build the distance graph for ``params``.

    The radius-(d-1) ball around the identity is enumerated once; the
    neighbours of sigma are then ``pi o sigma`` for pi in that ball, since
    d(pi o sigma, sigma) = d(pi, id).
    """
    n, d = params.n, params.d
    cap = max_n if max_n is not None else (LARGE_MAX_N if allow_large else DEFAULT_MAX_N)
    if n > min(cap, LARGE_MAX_N):
        raise GraphTooLargeError(
            f"n={n} exceeds the graph cap n<={cap}: the adjacency matrix alone would take "
            f"{adjacency_bytes(n) / 1e6:,.1f} MB"
            + ("" if allow_large or n > LARGE_MAX_N else " (pass allow_large for n=8)")
        )
    perms = all_permutations(n)
    ball = distance_ball(n, d - 1)
    adj = kernels.build_adjacency(perms, ball)
    return DistanceGraph(n=n, d=d, adjacency=adj)


@dataclass(frozen=True)
class NeighborhoodStats:
    degree: int
    neighborhood_edges: int
    triangles_total: int


def vertex_neighborhood_edges(graph: DistanceGraph, v: int) -> int:
    """Edges of the subgraph induced by the neighbours of ``v``."""
    nbrs = graph.neighbors(v)
    if nbrs.size == 0:
        return 0
    mask = graph.adjacency[v]
    twice = int(np.bitwise_count(graph.adjacency[nbrs] & mask).sum())
    return twice // 2


def neighborhood_stats(graph: DistanceGraph) -> NeighborhoodStats:
    """Degree and neighbourhood edge count at the identity, and the total triangle count.

    The graph is vertex transitive, so every vertex sees the same number
    of triangles; each triangle is counted at three vertices.
    """
    edges = vertex_neighborhood_edges(graph, 0)
    total = graph.vertex_count * edges
    if total % 3:
        raise AssertionError("triangle identity failed: n! * E is not divisible by 3")
    return NeighborhoodStats(
        degree=graph.degree(0), neighborhood_edges=edges, triangles_total=total // 3
    )


def check_transitivity_sample(graph: DistanceGraph, samples: int = 10, seed: int = 0) -> bool:
    """Compare neighbourhood edge counts at random vertices with the identity's."""
    rng = np.random.default_rng(seed)
    expected = vertex_neighborhood_edges(graph, 0)
    picks = rng.choice(graph.vertex_count, size=min(samples, graph.vertex_count), replace=False)
    return all(vertex_neighborhood_edges(graph, int(v)) == expected for v in picks)


def _greedy_in_order(rows: list[int], order) -> list[int]:
    blocked = 0
    chosen = []
    for v in order:
        v = int(v)
        if not (blocked >> v) & 1:
            chosen.append(v)
            blocked |= rows[v] | (1 << v)
    return chosen


def heuristic_alpha(
    graph: DistanceGraph, strategy: Strategy = "greedy-lex", seed: int = 0, k: int = 1
) -> tuple[int, list[Permutation]]:
    """Independent set from a greedy pass; deterministic given (strategy, seed, k).

    greedy-lex scans vertices by rank. random-greedy scans a permutation of
    the vertices drawn from ``numpy.random.default_rng(seed)``. best-of-k
    runs random-greedy with seeds ``seed .. seed+k-1`` and keeps the first
    largest result.
    """
    rows = graph.rows
    nv = graph.vertex_count
    if strategy == "greedy-lex":
        chosen = _greedy_in_order(rows, range(nv))
    elif strategy == "random-greedy":
        chosen = _greedy_in_order(rows, np.random.default_rng(seed).permutation(nv))
    elif strategy == "best-of-k":
        if k < 1:
            raise ValueError("k must be at least 1")
        chosen = []
        for i in range(k):
            cand = _greedy_in_order(rows, np.random.default_rng(seed + i).permutation(nv))
            if len(cand) > len(chosen):
                chosen = cand
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return len(chosen), [graph.vertex(v) for v in chosen]


def _clique_cover(rows: list[int], candidates: int) -> list[tuple[int, int]]:
    """Greedily split ``candidates`` into cliques.

    Returns (vertex, clique number) pairs in assignment order; an
    independent set inside the first c cliques has at most c vertices.
    """
    out = []
    remaining = candidates
    colour = 0
    while remaining:
        colour += 1
        q = remaining
        while q:
            low = q & -q
            v = low.bit_length() - 1
            out.append((v, colour))
            remaining ^= low
            q &= rows[v]
    return out


def _max_independent_set(rows: list[int], candidates: int, incumbent: list[int]) -> list[int]:
    best = list(incumbent)
    current: list[int] = []

    def expand(p: int) -> None:
        nonlocal best
        for v, bound in reversed(_clique_cover(rows, p)):
            if len(current) + bound <= len(best):
                return
            bit = 1 << v
            rest = p & ~rows[v] & ~bit
            current.append(v)
            if rest:
                expand(rest)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            p &= ~bit

    expand(candidates)
    return best


def exact_alpha(graph: DistanceGraph, *, long_run: bool = False) -> tuple[int, list[Permutation]]:
    """Independence number by branch and bound, with one maximum independent set.

    Pruning uses a greedy clique cover of the candidate set; the incumbent
    starts from the lexicographic greedy set. Because the graph is vertex
    transitive, some maximum independent set contains the identity, so
    the search is rooted there.
    """
    cap = EXACT_ALPHA_LONG_RUN_MAX_N if long_run else EXACT_ALPHA_MAX_N
    if graph.n > cap:
        raise GraphTooLargeError(
            f"exact alpha is limited to n<={cap}"
            + ("" if long_run else " (n=6 needs long_run=True)")
        )
    rows = graph.rows
    nv = graph.vertex_count
    greedy = _greedy_in_order(rows, range(nv))
    # the lexicographic greedy set always starts with vertex 0
    candidates = ((1 << nv) - 1) & ~rows[0] & ~1
    rest = _max_independent_set(rows, candidates, greedy[1:])
    chosen = [0] + sorted(rest)
    return len(chosen), [graph.vertex(v) for v in chosen]
