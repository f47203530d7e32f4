import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    ball_count,
    brute_neighborhood_edges,
    mp_edge_sparse_bound,
    mp_few_triangles_bound,
    naive_e_sum,
    naive_profiles,
)
from permgv.bounds import (
    CodeParameters,
    EdgeProfile,
    aks_corollary_lower,
    bound_report,
    ceil_plus,
    e_upper_bound,
    folklore_lower,
    g,
    g_max,
    gv_lower,
    improvement_ratio,
    is_valid_profile,
    iter_profiles,
    lemma7_check,
    lemma7_margin,
    log_ratio,
    paper_delta,
    sphere_packing_upper,
    triangle_lemma_lower,
    true_max_degree,
)
from permgv.combinatorics import (
    binary_entropy,
    binomial,
    derangements,
    factorial,
    log2_of_count,
    sphere_volume,
)

P = CodeParameters


def small_params(max_n):
    return [P(n, d) for n in range(2, max_n + 1) for d in range(2, n + 1)]


class TestCodeParameters:
    def test_delta_is_exact(self):
        assert P(12, 3).delta == Fraction(1, 4)

    def test_d1_normalises_to_full_space(self):
        p = P(5, 1)
        assert p.d == 2 and gv_lower(p) == 120

    @pytest.mark.parametrize("n, d", [(5, 0), (5, 6), (1, 1), (0, 0), (5, -2)])
    def test_rejects(self, n, d):
        with pytest.raises(ValueError):
            P(n, d)

    def test_rejects_non_int(self):
        with pytest.raises(TypeError):
            P(5.0, 2)


@pytest.mark.parametrize("x, expected", [(Fraction(-3, 2), 0), (Fraction(1, 2), 1), (2, 2), (0, 0), (Fraction(7, 3), 3)])
def test_ceil_plus_examples(x, expected):
    assert ceil_plus(x) == expected


@given(st.fractions(), st.fractions())
def test_ceil_plus_properties(a, b):
    assert ceil_plus(a) >= a and ceil_plus(a) >= 0
    lo, hi = sorted((a, b))
    assert ceil_plus(lo) <= ceil_plus(hi)


@pytest.mark.parametrize("n, d, expected", [(5, 2, 120), (4, 3, 4), (5, 4, 4)])
def test_gv_lower_examples(n, d, expected):
    assert gv_lower(P(n, d)) == expected


@pytest.mark.parametrize("n, d, expected", [(5, 2, 120), (4, 3, 24), (5, 5, 10)])
def test_sphere_packing_examples(n, d, expected):
    assert sphere_packing_upper(P(n, d)) == expected


def test_gv_below_sphere_packing():
    for p in small_params(64):
        assert gv_lower(p) <= sphere_packing_upper(p)


@pytest.mark.parametrize("v, deg, expected", [(120, 0, 120), (120, 10, 11), (24, 23, 1)])
def test_folklore_examples(v, deg, expected):
    assert folklore_lower(v, deg) == expected


def test_folklore_recovers_gv():
    for p in small_params(32):
        assert folklore_lower(factorial(p.n), true_max_degree(p)) == gv_lower(p)


@pytest.mark.parametrize("n, d, expected", [(5, 2, 10), (5, 3, 30), (4, 4, 23)])
def test_paper_delta_examples(n, d, expected):
    assert paper_delta(P(n, d)) == expected


@pytest.mark.parametrize("n, d, expected", [(5, 3, 10), (5, 2, 0), (4, 4, 14)])
def test_true_max_degree_examples(n, d, expected):
    assert true_max_degree(P(n, d)) == expected


def test_degrees_are_sphere_volumes_minus_one():
    for p in small_params(64):
        assert paper_delta(p) == sphere_volume(p.n, p.d) - 1
        assert true_max_degree(p) == sphere_volume(p.n, p.d - 1) - 1
    for n in range(2, 8):
        for d in range(2, n + 1):
            assert true_max_degree(P(n, d)) == ball_count(n, d - 1) - 1


class TestProfiles:
    def test_iter_matches_box_filter(self):
        for p in small_params(9):
            assert list(iter_profiles(p)) == naive_profiles(p.n, p.d)

    def test_validity_symmetric_in_s_t(self):
        for p in small_params(7):
            for s in range(0, p.d + 2):
                for t in range(0, p.d + 2):
                    for m in range(0, p.d + 2):
                        for r in range(0, p.d + 2):
                            assert is_valid_profile(p, EdgeProfile(s, t, m, r)) == is_valid_profile(
                                p, EdgeProfile(t, s, m, r)
                            )

    def test_g_not_symmetric_in_general(self):
        p = P(5, 3)
        assert g(p, EdgeProfile(2, 3, 2, 0)) != g(p, EdgeProfile(3, 2, 2, 0))

    @pytest.mark.parametrize(
        "profile, fragment",
        [((0, 1, 0, 0), "s"), ((1, 4, 1, 0), "t"), ((3, 3, 1, 0), "m"), ((3, 3, 2, 3), "r")],
    )
    def test_invalid_profile_names_constraint(self, profile, fragment):
        with pytest.raises(ValueError, match=rf"need .*{fragment}"):
            g(P(5, 3), EdgeProfile(*profile))


def test_g_examples():
    p = P(5, 3)
    assert g(p, EdgeProfile(2, 2, 2, 0)) == 10 * 1 * 1 * 1 * 1 * 2
    assert g(p, EdgeProfile(2, 2, 1, 1)) == 10 * 1 * 2 * 1 * 3 * 1
    for q in small_params(30):
        d = q.d
        assert g(q, EdgeProfile(d, d, d, 0)) == binomial(q.n, d) * derangements(d) * factorial(d)


def test_e_upper_examples():
    # t = 1 terms survive: g carries D_s but not D_t
    assert e_upper_bound(P(5, 2)) == naive_e_sum(5, 2) == 150
    assert e_upper_bound(P(4, 3)) == naive_e_sum(4, 3) == naive_e_sum(4, 3, t_major=True) == 734


def test_e_upper_matches_direct_sums():
    for p in small_params(12):
        want = naive_e_sum(p.n, p.d)
        assert e_upper_bound(p) == want
        assert naive_e_sum(p.n, p.d, t_major=True, reverse=True) == want
        assert sum(g(p, prof) for prof in iter_profiles(p)) == want


def test_e_upper_dominates_reference_term():
    for p in small_params(40):
        d = p.d
        assert e_upper_bound(p) >= g(p, EdgeProfile(d, d, d, 0))


def test_e_upper_bounds_exact_neighbourhood_edges():
    for n in range(2, 7):
        for d in range(2, n + 1):
            assert brute_neighborhood_edges(n, d) <= e_upper_bound(P(n, d))


def _scan_max(p):
    best, where = -1, None
    for prof in iter_profiles(p):
        v = g(p, prof)
        if v > best:
            best, where = v, prof
    return best, where


def test_g_max_example_n5_d2():
    value, where = g_max(P(5, 2))
    assert (value, tuple(where)) == (60, (2, 2, 1, 1))
    assert _scan_max(P(5, 2)) == (value, where)


def test_g_max_matches_exhaustive_scan():
    for p in small_params(16) + [P(40, 10), P(30, 14)]:
        assert g_max(p) == _scan_max(p)


def test_g_max_sandwich():
    for p in small_params(64):
        top, _ = g_max(p)
        e = e_upper_bound(p)
        assert top <= e <= p.d**4 * top


class TestLocallySparse:
    def test_edge_sparse_with_e3_drops_log_term(self):
        v, deg = 10**6, 50
        with mpmath.workdps(50):
            want = int(mpmath.floor(mpmath.mpf(v) * mpmath.log(deg) / (10 * deg)))
        assert aks_corollary_lower(v, deg, 3) == want

    def test_edge_sparse_vacuous(self):
        assert aks_corollary_lower(10**6, 50, 3 * 50 * 50) is None
        assert aks_corollary_lower(10**6, 50, 10**9) is None

    def test_edge_sparse_small_case_floors_to_zero(self):
        # n = 7, d = 4: positive bracket but the bound floors to 0
        p = P(7, 4)
        want = mp_edge_sparse_bound(5040, paper_delta(p), naive_e_sum(7, 4))
        assert want == 0
        assert aks_corollary_lower(5040, paper_delta(p), e_upper_bound(p)) is None

    def test_edge_sparse_high_precision(self):
        for p in [P(60, 15), P(100, 25), P(200, 50)]:
            v, deg, e = factorial(p.n), paper_delta(p), e_upper_bound(p)
            assert aks_corollary_lower(v, deg, e) == mp_edge_sparse_bound(v, deg, e, dps=800)

    def test_triangle_free_case(self):
        assert triangle_lemma_lower(1024, 16, 0) == 32
        assert triangle_lemma_lower(1024, 1, 0) is None

    def test_triangle_t_equals_v(self):
        with mpmath.workdps(50):
            want = int(mpmath.floor(1024 * mpmath.log(16) / 160))
        assert triangle_lemma_lower(1024, 16, 1024) == want

    def test_triangle_from_graph_counts(self):
        # n = 6, d = 3: neighbourhoods are edgeless, so T = 0 and the triangle-free form applies
        assert brute_neighborhood_edges(6, 3) == 0
        assert triangle_lemma_lower(720, 15, 0) == 23
        # n = 6, d = 4: E* = 380, T = 720 * 380 / 3
        t = 720 * brute_neighborhood_edges(6, 4) // 3
        assert triangle_lemma_lower(720, 55, t) == mp_few_triangles_bound(720, 55, t) == 2

    def test_zero_edge_bound_uses_triangle_free_form(self):
        assert aks_corollary_lower(1024, 16, 0) == triangle_lemma_lower(1024, 16, 0)


def test_log_ratio_identity():
    for p in small_params(20) + [P(100, 25)]:
        want = 2 * log2_of_count(paper_delta(p)) - log2_of_count(e_upper_bound(p))
        assert log_ratio(p) == pytest.approx(want, abs=1e-12)


def test_log_ratio_reverse_summation_n100():
    p = P(100, 25)
    e_rev = naive_e_sum(100, 25, t_major=True, reverse=True)
    delta = sum(binomial(100, k) * derangements(k) for k in range(25, 0, -1))
    alt = 2 * log2_of_count(delta) - log2_of_count(e_rev)
    assert log_ratio(p) == pytest.approx(alt, abs=1e-6)


def test_log_ratio_per_n_positive_and_growing():
    vals = [log_ratio(P(n, n // 4)) / n for n in (60, 120, 240)]
    assert vals[0] > 0
    assert all(b >= a * 0.95 for a, b in zip(vals, vals[1:]))


def test_improvement_ratio():
    assert improvement_ratio(P(7, 4)) is None
    r100 = improvement_ratio(P(100, 25))
    r200 = improvement_ratio(P(200, 50))
    assert r100 is not None and r200 is not None
    assert 0 < r100 < r200


class TestLemma7:
    def test_reference_profile_margin_is_slack(self):
        for p in [P(10, 3), P(50, 12), P(200, 50)]:
            d = p.d
            m = lemma7_margin(p, EdgeProfile(d, d, d, 0), 0.05)
            assert m == pytest.approx(3 * p.n * binary_entropy(0.15), rel=1e-12)

    def test_n200(self):
        rep = lemma7_check(P(200, 50), 0.05)
        assert rep.violated is False and rep.min_margin > 0

    def test_min_margin_is_min_over_profiles(self):
        for p in small_params(9):
            rep = lemma7_check(p, 0.1)
            margins = [lemma7_margin(p, prof, 0.1) for prof in iter_profiles(p)]
            assert rep.min_margin == pytest.approx(min(margins), abs=1e-9)
            assert lemma7_margin(p, rep.argmin_profile, 0.1) == pytest.approx(rep.min_margin, abs=1e-9)
            assert rep.violated == (rep.min_margin < 0)

    def test_small_n_diagnostic_runs(self):
        rep = lemma7_check(P(10, 3), 0.15)
        assert isinstance(rep.violated, bool)

    @pytest.mark.parametrize("eps", [0.0, 1 / 6, 0.2, -0.01])
    def test_epsilon_range(self, eps):
        with pytest.raises(ValueError):
            lemma7_check(P(10, 3), eps)

    def test_zero_g_profile_has_infinite_margin(self):
        # s = 1 carries D_1 = 0
        assert lemma7_margin(P(6, 3), EdgeProfile(1, 1, 1, 0), 0.1) == math.inf


def test_bound_report_fields():
    rep = bound_report(P(4, 3))
    assert rep.gv_lower == 4 and rep.sphere_packing_upper == 24
    assert rep.delta_degree == 14 and rep.true_max_degree == 6
    assert rep.e_upper == 734
    assert rep.g_max <= rep.e_upper
    assert set(rep.provenance) >= {"gv_lower", "e_upper", "aks_lower", "log_ratio"}
    big = bound_report(P(100, 25))
    assert big.aks_lower is not None and big.improvement_ratio == improvement_ratio(P(100, 25))
    assert big.gv_lower <= big.sphere_packing_upper
