import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dist
from permgv.perms import (
    all_permutations,
    compose,
    distance_ball,
    hamming_distance,
    identity,
    inverse,
    rank,
    ranks_of,
    unrank,
    unrank_many,
)


def test_hamming_examples():
    assert hamming_distance(identity(5), identity(5)) == 0
    assert hamming_distance(identity(5), (1, 0, 2, 3, 4)) == 2
    assert hamming_distance(identity(5), (1, 2, 0, 3, 4)) == 3


def test_hamming_length_mismatch():
    with pytest.raises(ValueError):
        hamming_distance((0, 1), (0, 1, 2))


def test_distance_never_one():
    for a, b in itertools.combinations(itertools.permutations(range(5)), 2):
        assert hamming_distance(a, b) != 1


perm7 = st.permutations(list(range(7))).map(tuple)


@given(perm7, perm7, perm7)
def test_right_invariance(a, b, c):
    assert hamming_distance(a, b) == hamming_distance(compose(a, c), compose(b, c))
    assert hamming_distance(a, b) == hamming_distance(identity(7), compose(a, inverse(b)))


def test_rank_unrank_roundtrip():
    for n in range(1, 7):
        for r, p in enumerate(itertools.permutations(range(n))):
            assert rank(p) == r
            assert unrank(r, n) == p


def test_vectorised_rank_unrank():
    perms = all_permutations(6)
    assert np.array_equal(ranks_of(perms), np.arange(720))
    assert np.array_equal(unrank_many(np.arange(720), 6), perms)
    big = np.array([0, 1, math.factorial(10) - 1, 1234567])
    assert [tuple(r) for r in unrank_many(big, 10)] == [unrank(int(x), 10) for x in big]


def test_distance_ball_matches_filter():
    for n in range(1, 7):
        for radius in range(n + 1):
            ident = tuple(range(n))
            want = sorted(p for p in itertools.permutations(range(n)) if 1 <= dist(ident, p) <= radius)
            got = sorted(tuple(int(x) for x in row) for row in distance_ball(n, radius))
            assert got == want
