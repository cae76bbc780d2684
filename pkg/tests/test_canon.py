import itertools
import random
from collections import defaultdict

import pytest

from oracles import BruteCanon, allowed_color_perms, permute_cells
from onlineramsey.canon import MAX_N, Canonicalizer, canonical_edge_orbits, canonical_key, canonicalizer
from onlineramsey.game import BoardState, GameConfig, GameError, apply_move, geometry, new_game


def board(cfg, colored):
    s = new_game(cfg)
    for e, c in colored:
        s = apply_move(s, e, c)
    return s


def test_key_examples():
    cfg = GameConfig(2, (2, 2), 5)
    star1 = board(cfg, [((0, 1), 1), ((0, 2), 1)])
    star2 = board(cfg, [((3, 4), 1), ((3, 2), 1)])
    assert canonical_key(star1, cfg) == canonical_key(star2, cfg)
    assert canonical_key(board(cfg, [((0, 1), 1)]), cfg) == canonical_key(board(cfg, [((0, 1), 2)]), cfg)
    assert canonical_key(board(cfg, [((0, 1), 1)]), cfg) != canonical_key(
        board(cfg, [((0, 1), 1), ((2, 3), 2)]), cfg
    )


def test_color_swap_needs_equal_targets():
    cfg = GameConfig(2, (1, 2), 4)
    assert canonical_key(board(cfg, [((0, 1), 1)]), cfg) != canonical_key(board(cfg, [((0, 1), 2)]), cfg)


def test_orbit_examples():
    cfg = GameConfig(2, (2, 2), 4)
    assert canonical_edge_orbits(new_game(cfg), cfg) == [[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]]
    one = board(cfg, [((0, 1), 1)])
    assert canonical_edge_orbits(one, cfg) == [[(0, 2), (0, 3), (1, 2), (1, 3)], [(2, 3)]]
    full = BoardState.from_text("121212", 4, 2)
    assert canonical_edge_orbits(full, cfg) == []


def test_unsupported_n():
    with pytest.raises(GameError):
        Canonicalizer(MAX_N + 1, (2, 2))


def _check_partition(n, targets, states):
    """Equal keys exactly when the brute-force canonical forms agree."""
    canon = Canonicalizer(n, targets)
    brute = BruteCanon(n, targets)
    by_key = defaultdict(set)
    by_form = defaultdict(set)
    for cells in states:
        by_key[canon.key(cells)].add(cells)
        by_form[brute.form(cells)].add(cells)
    assert sorted(map(sorted, by_key.values())) == sorted(map(sorted, by_form.values()))


@pytest.mark.parametrize(
    "n, targets",
    [(2, (1, 1)), (3, (2, 2)), (3, (1, 2, 1)), (4, (2, 2)), (4, (1, 2)), (4, (2, 2, 2)), (4, (1, 2, 1))],
)
def test_key_complete_small_exhaustive(n, targets):
    m = n * (n - 1) // 2
    states = [bytes(c) for c in itertools.product(range(len(targets) + 1), repeat=m)]
    _check_partition(n, targets, states)


def test_key_complete_n5_two_colours_exhaustive():
    states = [bytes(c) for c in itertools.product(range(3), repeat=10)]
    _check_partition(5, (2, 2), states)


@pytest.mark.parametrize("targets", [(2, 2, 2), (1, 2, 2), (3, 3, 3, 3)])
def test_key_complete_n5_sampled(targets):
    rng = random.Random(len(targets))
    t = len(targets)
    states = set()
    while len(states) < 1500:
        k = rng.randint(0, 10)
        cells = [0] * 10
        for i in rng.sample(range(10), k):
            cells[i] = rng.randint(1, t)
        states.add(bytes(cells))
    _check_partition(5, targets, sorted(states))


@pytest.mark.parametrize("n, targets", [(5, (2, 2)), (6, (2, 2, 2)), (7, (2, 2, 2, 2)), (8, (1, 2, 2)), (9, (3, 3))])
def test_key_invariant_under_group(n, targets):
    rng = random.Random(n)
    canon = canonicalizer(n, targets)
    cperms = allowed_color_perms(targets)
    m = n * (n - 1) // 2
    for _ in range(150):
        density = rng.random()
        cells = bytes(rng.randint(1, len(targets)) if rng.random() < density else 0 for _ in range(m))
        perm = list(range(n))
        rng.shuffle(perm)
        image = permute_cells(cells, n, perm, rng.choice(cperms))
        assert canon.key(image) == canon.key(cells)


def test_distinct_graphs_distinct_keys_n6():
    # two non-isomorphic 3-edge graphs with equal degree sequences per colour
    cfg = GameConfig(1, (3,), 6)
    path_plus = board(cfg, [((0, 1), 1), ((1, 2), 1), ((3, 4), 1)])  # P3 + K2
    three = board(cfg, [((0, 1), 1), ((2, 3), 1), ((4, 5), 1)])
    assert canonical_key(path_plus, cfg) != canonical_key(three, cfg)
    hexagon = board(cfg, [((0, 1), 1), ((1, 2), 1), ((2, 3), 1), ((3, 4), 1), ((4, 5), 1), ((0, 5), 1)])
    triangles = board(cfg, [((0, 1), 1), ((1, 2), 1), ((0, 2), 1), ((3, 4), 1), ((4, 5), 1), ((3, 5), 1)])
    assert canonical_key(hexagon, cfg) != canonical_key(triangles, cfg)


@pytest.mark.parametrize("n, targets", [(3, (2, 2)), (4, (2, 2)), (4, (1, 2)), (4, (2, 2, 2))])
def test_orbits_match_automorphism_group_exhaustive(n, targets):
    m = n * (n - 1) // 2
    canon = Canonicalizer(n, targets)
    brute = BruteCanon(n, targets)
    for c in itertools.product(range(len(targets) + 1), repeat=m):
        cells = bytes(c)
        assert canon.edge_orbits(cells) == brute.automorphism_edge_orbits(cells)


def test_orbits_match_automorphism_group_n5_sampled():
    rng = random.Random(11)
    canon = Canonicalizer(5, (2, 2, 2))
    brute = BruteCanon(5, (2, 2, 2))
    for _ in range(300):
        cells = bytes(rng.choice([0, 0, 0, 1, 2, 3]) for _ in range(10))
        assert canon.edge_orbits(cells) == brute.automorphism_edge_orbits(cells)


def test_orbits_partition_uncolored_edges():
    rng = random.Random(3)
    cfg = GameConfig(3, (2, 2, 2), 6)
    g = geometry(6)
    for _ in range(100):
        s = new_game(cfg)
        for i in rng.sample(range(15), rng.randint(0, 8)):
            s = apply_move(s, g.edges[i], rng.randint(1, 3))
        orbits = canonical_edge_orbits(s, cfg)
        flat = sorted(e for o in orbits for e in o)
        assert flat == sorted(e for i, e in enumerate(g.edges) if not s.cells[i])
