import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_matching, edges_of
from onlineramsey.matching import SimpleGraph, has_matching, has_matching_mask, matching_number, max_matching_size

# 5-cycle value frozen from brute_matching
CYCLE5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]


@pytest.mark.parametrize(
    "n, edges, expected",
    [
        (3, [(0, 1), (1, 2)], 1),
        (4, [(0, 1), (2, 3)], 2),
        (5, CYCLE5, 2),
        (3, [(0, 1), (1, 2), (0, 2)], 1),
        (4, [], 0),
    ],
)
def test_max_matching_examples(n, edges, expected):
    assert max_matching_size(SimpleGraph.from_edges(n, edges)) == expected


def test_has_matching_examples():
    star = SimpleGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert not has_matching(star, 2)
    assert not has_matching(SimpleGraph.from_edges(3, []), 1)
    assert has_matching(SimpleGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 1)


def test_simple_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(1, 1)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_exhaustive_against_brute_force(n):
    edges = edges_of(n)
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        want = brute_matching(chosen)
        assert matching_number(n, mask) == want
        for r in range(0, n // 2 + 2):
            assert has_matching_mask(n, mask, r) == (want >= r)


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_random_against_brute_force(n):
    rng = random.Random(n)
    all_edges = edges_of(n)
    for _ in range(300):
        chosen = rng.sample(all_edges, rng.randint(0, 12))
        g = SimpleGraph.from_edges(n, chosen)
        want = brute_matching(chosen)
        assert max_matching_size(g) == want
        assert has_matching(g, want) and not has_matching(g, want + 1)


graphs = st.integers(2, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(edges_of(n)), max_size=20))
)


@given(graphs)
def test_matching_properties(g):
    n, edges = g
    base = max_matching_size(SimpleGraph(n, frozenset(edges)))
    assert base <= n // 2
    for e in itertools.islice(sorted(set(edges_of(n)) - edges), 5):
        grown = max_matching_size(SimpleGraph(n, frozenset(edges | {e})))
        assert grown - base in (0, 1)
