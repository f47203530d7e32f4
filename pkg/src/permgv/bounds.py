"""Bounds on M(n, d), the largest permutation code of length n and minimum distance d.

Covers the classical sandwich (Gilbert-Varshamov below, sphere packing
above), the greedy-colouring bound alpha >= |V|/(Delta+1), the
locally-sparse-graph bounds, and the counting machinery that bounds the
number of edges inside the neighbourhood of one vertex of the distance
graph:

    g(s, t, m, r) = C(n,s) D_s C(s,m) C(m,r) C(n-s,t-m) (t-r)!

summed over profiles (s, t, m, r) with

    1 <= s <= d,  1 <= t <= d,
    ceil+((s+t-d)/2) <= m <= min(s, t),
    ceil+(s+t-m-d)   <= r <= m.

Counts are exact ints. Logarithms are floats accurate to ~1e-12 relative;
the floors of the locally-sparse bounds are taken in mpmath at a precision
sized to the operands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import mpmath

from .combinatorics import (
    binary_entropy,
    binomial,
    derangements,
    factorial,
    log2_of_count,
    log2_ratio,
    sphere_volume,
)


@dataclass(frozen=True)
class CodeParameters:
    """Length ``n`` and minimum distance ``d``; ``d == 1`` is normalised to 2.

    Distinct permutations are never at distance 1, so requiring distance
    1 or 2 gives the same codes (all of S_n).
    """

    n: int
    d: int

    def __post_init__(self) -> None:
        for name in ("n", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an int")
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.d < 1 or self.d > self.n:
            raise ValueError(f"need 1 <= d <= n, got n={self.n}, d={self.d}")
        if self.d == 1:
            object.__setattr__(self, "d", 2)

    @property
    def delta(self) -> Fraction:
        return Fraction(self.d, self.n)


class EdgeProfile(NamedTuple):
    """Indexes one term of the neighbourhood edge count.

    s, t: distances of two neighbours from the identity; m: positions
    both move; r: positions both move to the same image.
    """

    s: int
    t: int
    m: int
    r: int


def ceil_plus(x: int | Fraction | float) -> int:
    """Smallest nonnegative integer k with k >= x."""
    return max(0, math.ceil(Fraction(x)))


def profile_violation(params: CodeParameters, profile: EdgeProfile) -> str | None:
    """Name the first constraint ``profile`` breaks, or ``None`` if it is valid."""
    d = params.d
    s, t, m, r = profile
    if not 1 <= s <= d:
        return f"need 1 <= s <= d, got s={s}, d={d}"
    if not 1 <= t <= d:
        return f"need 1 <= t <= d, got t={t}, d={d}"
    lo_m = ceil_plus(Fraction(s + t - d, 2))
    if not lo_m <= m <= min(s, t):
        return f"need {lo_m} <= m <= min(s,t)={min(s, t)}, got m={m}"
    lo_r = ceil_plus(s + t - m - d)
    if not lo_r <= r <= m:
        return f"need {lo_r} <= r <= m={m}, got r={r}"
    return None


def is_valid_profile(params: CodeParameters, profile: EdgeProfile) -> bool:
    return profile_violation(params, profile) is None


def iter_profiles(params: CodeParameters) -> Iterator[EdgeProfile]:
    """All valid profiles in lexicographic order."""
    d = params.d
    for s in range(1, d + 1):
        for t in range(1, d + 1):
            for m in range(ceil_plus(Fraction(s + t - d, 2)), min(s, t) + 1):
                for r in range(ceil_plus(s + t - m - d), m + 1):
                    yield EdgeProfile(s, t, m, r)


def _g_unchecked(n: int, s: int, t: int, m: int, r: int) -> int:
    return (
        binomial(n, s)
        * derangements(s)
        * binomial(s, m)
        * binomial(m, r)
        * binomial(n - s, t - m)
        * factorial(t - r)
    )


def g(params: CodeParameters, profile: EdgeProfile) -> int:
    """Overcount of neighbour pairs (sigma, tau) with the given profile."""
    problem = profile_violation(params, profile)
    if problem is not None:
        raise ValueError(f"invalid edge profile {tuple(profile)}: {problem}")
    return _g_unchecked(params.n, *profile)


def gv_lower(params: CodeParameters) -> int:
    """ceil(n! / V(n, d-1)); M(n,d) is an integer so the ceiling is still a lower bound."""
    n, d = params.n, params.d
    return -(-factorial(n) // sphere_volume(n, d - 1))


def sphere_packing_upper(params: CodeParameters) -> int:
    n, d = params.n, params.d
    return factorial(n) // sphere_volume(n, (d - 1) // 2)


def folklore_lower(vertex_count: int, max_degree: int) -> int:
    """alpha(G) >= ceil(|V| / (Delta + 1))."""
    if vertex_count < 0 or max_degree < 0:
        raise ValueError("vertex_count and max_degree must be nonnegative")
    return -(-vertex_count // (max_degree + 1))


def paper_delta(params: CodeParameters) -> int:
    """sum_{k=1}^{d} C(n,k) D_k, i.e. V(n, d) - 1.

    One shell larger than the true degree; this is the value the
    neighbourhood-sparsity argument works with.
    """
    n, d = params.n, params.d
    return sum(binomial(n, k) * derangements(k) for k in range(1, d + 1))


def true_max_degree(params: CodeParameters) -> int:
    """Common degree of the distance graph: sum_{k=1}^{d-1} C(n,k) D_k."""
    n, d = params.n, params.d
    return sum(binomial(n, k) * derangements(k) for k in range(1, d))


def _tables(params: CodeParameters) -> tuple[list[int], list[int]]:
    """factorials 0..d and C(n,s) D_s for s in 0..d."""
    n, d = params.n, params.d
    fact = [1] * (d + 1)
    for i in range(1, d + 1):
        fact[i] = fact[i - 1] * i
    outer = [math.comb(n, s) * derangements(s) for s in range(d + 1)]
    return fact, outer


def e_upper_bound(params: CodeParameters) -> int:
    """Exact value of the quadruple sum of g over all valid profiles.

    Grouped as sum_{t,m} sum_s A(s,t,m) * S(t,m,r_lo(s)) where the inner
    r-sum S depends on s only through its lower limit, so it is
    accumulated once per (t, m) as suffix sums. O(d^3) big-int products.
    """
    n, d = params.n, params.d
    fact, outer = _tables(params)
    comb = math.comb
    total = 0
    for t in range(1, d + 1):
        for m in range(0, t + 1):
            # m >= ceil+((s+t-d)/2)  <=>  s <= 2m + d - t
            s_lo, s_hi = max(1, m), min(d, 2 * m + d - t)
            if s_lo > s_hi:
                continue
            # suffix[lo] = sum_{r=lo}^{m} C(m,r) (t-r)!
            suffix = [0] * (m + 2)
            for r in range(m, -1, -1):
                suffix[r] = suffix[r + 1] + comb(m, r) * fact[t - r]
            for s in range(s_lo, s_hi + 1):
                if t - m > n - s:
                    continue
                lo = max(0, s + t - m - d)
                total += outer[s] * comb(s, m) * comb(n - s, t - m) * suffix[lo]
    return total


def g_max(params: CodeParameters) -> tuple[int, EdgeProfile]:
    """Largest g over valid profiles, with the lexicographically smallest maximiser.

    For fixed (s, t, m) the r-terms satisfy
    term(r+1)/term(r) = (m-r) / ((r+1)(t-r)) <= 1 because m <= t, so the
    maximum over r sits at its lower limit and only O(d^3) candidates
    need comparing.
    """
    n, d = params.n, params.d
    fact, outer = _tables(params)
    comb = math.comb
    best_val, best = -1, None
    for s in range(1, d + 1):
        for t in range(1, d + 1):
            for m in range(max(0, -((d - s - t) // 2)), min(s, t) + 1):
                r = max(0, s + t - m - d)
                if t - m > n - s:
                    v = 0
                else:
                    v = outer[s] * comb(s, m) * comb(m, r) * comb(n - s, t - m) * fact[t - r]
                if v > best_val:
                    best_val, best = v, EdgeProfile(s, t, m, r)
    assert best is not None
    return best_val, best


def _mp_floor_positive(vertex_count: int, scale: int, paren) -> int:
    """floor(vertex_count / scale * paren) with paren an mpmath callable of the working precision."""
    digits = len(str(vertex_count)) + len(str(scale)) + 30
    with mpmath.workdps(digits):
        value = mpmath.mpf(vertex_count) / scale * paren()
        return int(mpmath.floor(value))


def triangle_lemma_lower(vertex_count: int, max_degree: int, triangle_count: int) -> int | None:
    """Lower bound on alpha for a graph with few triangles; ``None`` when vacuous.

    T > 0:  |V| / (10 Delta) * (ln Delta - ln(T / |V|) / 2)
    T == 0: |V| / (8 Delta) * log2 Delta   (triangle-free case)

    A bound is vacuous when its bracket is <= 0 or its floor is 0.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if vertex_count < 1 or triangle_count < 0:
        raise ValueError("need vertex_count >= 1 and triangle_count >= 0")
    if triangle_count == 0:
        if max_degree <= 1:
            return None
        out = _mp_floor_positive(
            vertex_count, 8 * max_degree, lambda: mpmath.log(max_degree, 2)
        )
    else:
        # ln Delta - ln(T/|V|)/2 <= 0  <=>  Delta^2 |V| <= T
        if max_degree * max_degree * vertex_count <= triangle_count:
            return None
        out = _mp_floor_positive(
            vertex_count,
            10 * max_degree,
            lambda: mpmath.log(max_degree)
            - (mpmath.log(triangle_count) - mpmath.log(vertex_count)) / 2,
        )
    return out if out > 0 else None


def aks_corollary_lower(vertex_count: int, max_degree: int, edge_bound: int) -> int | None:
    """|V| / (10 Delta) * (ln Delta - ln(E/3) / 2), floored; ``None`` when vacuous.

    ``edge_bound`` bounds the edges inside every vertex neighbourhood.
    E == 0 means the graph is triangle-free and the triangle-free bound
    is used instead.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if edge_bound < 0:
        raise ValueError("edge_bound must be nonnegative")
    if edge_bound == 0:
        return triangle_lemma_lower(vertex_count, max_degree, 0)
    # bracket <= 0  <=>  E >= 3 Delta^2
    if edge_bound >= 3 * max_degree * max_degree:
        return None
    out = _mp_floor_positive(
        vertex_count,
        10 * max_degree,
        lambda: mpmath.log(max_degree) - (mpmath.log(edge_bound) - mpmath.log(3)) / 2,
    )
    return out if out > 0 else None


def log_ratio(params: CodeParameters) -> float:
    """log2(Delta^2 / E) with Delta = V(n,d) - 1 and E the quadruple-sum bound."""
    return 2.0 * log2_of_count(paper_delta(params)) - log2_of_count(e_upper_bound(params))


def improvement_ratio(params: CodeParameters) -> float | None:
    """Locally-sparse lower bound divided by the GV lower bound; ``None`` when vacuous."""
    aks = aks_corollary_lower(
        factorial(params.n), paper_delta(params), e_upper_bound(params)
    )
    if aks is None:
        return None
    return float(Fraction(aks, gv_lower(params)))


@dataclass(frozen=True)
class Lemma7Report:
    params: CodeParameters
    epsilon: float
    min_margin: float
    argmin_profile: EdgeProfile
    violated: bool


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0 / 6.0:
        raise ValueError(f"epsilon must lie in (0, 1/6), got {epsilon}")
    return epsilon


def lemma7_margin(params: CodeParameters, profile: EdgeProfile, epsilon: float) -> float:
    """log2(g(d,d,d,0) / g(profile)) + 3 n h2(3 epsilon); ``inf`` when g(profile) is 0."""
    epsilon = _check_epsilon(epsilon)
    value = g(params, profile)
    slack = 3 * params.n * binary_entropy(3 * epsilon)
    if value == 0:
        return math.inf
    d = params.d
    return log2_ratio(g(params, EdgeProfile(d, d, d, 0)), value) + slack


def lemma7_check(params: CodeParameters, epsilon: float) -> Lemma7Report:
    """Smallest margin of the entropy inequality over all valid profiles at this (n, d).

    The inequality is only claimed for large n; a violation at small n is
    a legitimate result, not an error. The minimum is attained where g is
    largest, so this reuses :func:`g_max`.
    """
    epsilon = _check_epsilon(epsilon)
    d = params.d
    top, where = g_max(params)
    reference = _g_unchecked(params.n, d, d, d, 0)
    margin = log2_ratio(reference, top) + 3 * params.n * binary_entropy(3 * epsilon)
    return Lemma7Report(params, epsilon, margin, where, margin < 0)


@dataclass(frozen=True)
class BoundReport:
    params: CodeParameters
    gv_lower: int
    sphere_packing_upper: int
    delta_degree: int
    true_max_degree: int
    e_upper: int
    g_max: int
    g_argmax: EdgeProfile
    aks_lower: int | None
    aks_lower_true_degree: int | None
    log_ratio: float
    improvement_ratio: float | None
    provenance: dict[str, str] = field(default_factory=dict, compare=False)


PROVENANCE = {
    "gv_lower": "ceil(n! / V(n, d-1))",
    "sphere_packing_upper": "floor(n! / V(n, floor((d-1)/2)))",
    "delta_degree": "sum_{k=1}^{d} C(n,k) D_k = V(n,d) - 1",
    "true_max_degree": "sum_{k=1}^{d-1} C(n,k) D_k = V(n,d-1) - 1",
    "e_upper": "sum over valid (s,t,m,r) of g(s,t,m,r)",
    "g_max": "max over valid (s,t,m,r) of g(s,t,m,r), lexicographically first argmax",
    "aks_lower": "floor(n!/(10 D) (ln D - ln(E/3)/2)) with D = delta_degree, E = e_upper",
    "aks_lower_true_degree": "same with D = true_max_degree",
    "log_ratio": "log2(delta_degree^2 / e_upper)",
    "improvement_ratio": "aks_lower / gv_lower",
}


def bound_report(params: CodeParameters) -> BoundReport:
    delta = paper_delta(params)
    true_deg = true_max_degree(params)
    e_up = e_upper_bound(params)
    top, where = g_max(params)
    nfact = factorial(params.n)
    gv = gv_lower(params)
    aks = aks_corollary_lower(nfact, delta, e_up)
    aks_true = aks_corollary_lower(nfact, true_deg, e_up) if true_deg >= 1 else None
    return BoundReport(
        params=params,
        gv_lower=gv,
        sphere_packing_upper=sphere_packing_upper(params),
        delta_degree=delta,
        true_max_degree=true_deg,
        e_upper=e_up,
        g_max=top,
        g_argmax=where,
        aks_lower=aks,
        aks_lower_true_degree=aks_true,
        log_ratio=2.0 * log2_of_count(delta) - log2_of_count(e_up),
        improvement_ratio=None if aks is None else float(Fraction(aks, gv)),
        provenance=dict(PROVENANCE),
    )
