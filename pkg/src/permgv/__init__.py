"""Exact bounds, brute-force checks, and greedy constructions for permutation codes."""
from .bounds import (
    BoundReport,
    CodeParameters,
    EdgeProfile,
    Lemma7Report,
    aks_corollary_lower,
    bound_report,
    ceil_plus,
    e_upper_bound,
    folklore_lower,
    g,
    g_max,
    gv_lower,
    improvement_ratio,
    lemma7_check,
    log_ratio,
    paper_delta,
    sphere_packing_upper,
    triangle_lemma_lower,
    true_max_degree,
)
from .combinatorics import (
    binary_entropy,
    binomial,
    derangements,
    factorial,
    log2_of_count,
    sphere_volume,
)

__version__ = "0.1.0"
