import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onlineramsey.game import GameConfig, GameError, builder_won, geometry, new_game
from onlineramsey.matching import matching_number
from onlineramsey.painter import (
    FREE,
    PainterAnnotations,
    PainterLedger,
    MatchingPainter,
    VertexType,
    audit_ledger,
    check_step,
    classify_vertex,
    orient_edge,
    painter_move,
    snapshot,
    survival_horizon,
)

CFG = GameConfig(2, (2, 2), 5)


def test_classify_vertex():
    ann = PainterAnnotations(5)
    assert all(classify_vertex(ann, v) is VertexType.III for v in range(5))
    ann.set_rooted((0, 1), 0, 1)
    assert classify_vertex(ann, 0) is VertexType.I
    assert classify_vertex(ann, 1) is VertexType.III
    ann.set_free((2, 3), 2)
    assert classify_vertex(ann, 2) is VertexType.II
    # type I takes precedence over a free edge
    ann.set_free((0, 4), 1)
    assert classify_vertex(ann, 0) is VertexType.I


def test_orient_edge():
    ann = PainterAnnotations(6)
    ann.set_rooted((4, 5), 5, 1)
    assert orient_edge(ann, (2, 5)) == (5, 2)
    assert orient_edge(ann, (1, 3)) == (1, 3)
    ann2 = PainterAnnotations(6)
    ann2.set_free((0, 1), 1)
    ann2.set_rooted((3, 4), 4, 1)
    assert orient_edge(ann2, (0, 4)) == (4, 0)
    with pytest.raises(GameError):
        orient_edge(ann2, (0, 1))


def test_hand_trace_star():
    state, ann, led = new_game(CFG), PainterAnnotations(5), PainterLedger(2)

    color, state, ann, led, rule = painter_move(state, ann, led, CFG, (0, 1))
    assert (color, rule) == (1, "iii")
    assert ann.roles[(0, 1)] == FREE

    color, state, ann, led, rule = painter_move(state, ann, led, CFG, (0, 2))
    assert (color, rule) == (1, "ii")
    assert ann.roles[(0, 1)] == 0 and ann.roles[(0, 2)] == 0
    assert classify_vertex(ann, 1) is VertexType.III

    color, state, ann, led, rule = painter_move(state, ann, led, CFG, (0, 3))
    assert (color, rule) == (1, "i")
    assert ann.roles[(0, 3)] == 0
    assert builder_won(state, CFG) is None
    assert matching_number(5, state.masks[0]) == 1


def test_hand_trace_two_free_edges():
    state, ann, led = new_game(CFG), PainterAnnotations(5), PainterLedger(2)
    color, state, ann, led, rule = painter_move(state, ann, led, CFG, (0, 1))
    assert color == 1
    color, state, ann, led, rule = painter_move(state, ann, led, CFG, (2, 3))
    assert (color, rule) == (2, "iii")
    assert led.B == [1, 1] and led.C3 == 2


def test_painter_move_is_pure():
    state, ann, led = new_game(CFG), PainterAnnotations(5), PainterLedger(2)
    painter_move(state, ann, led, CFG, (0, 1))
    assert not ann.roles and led.C3 == 0 and state.num_colored == 0
    with pytest.raises(GameError):
        p = MatchingPainter(CFG)
        p.respond((0, 1))
        p.respond((1, 0))


def test_audit_ledger_examples():
    cfg = GameConfig(2, (2, 2), 5)
    assert audit_ledger(PainterAnnotations(5), cfg) == ([0, 0], [0, 0])
    ann = PainterAnnotations(5)
    ann.set_free((1, 2), 2)
    assert audit_ledger(ann, cfg) == ([0, 0], [0, 1])
    ann = PainterAnnotations(5)
    for w in (1, 2, 3):
        ann.set_rooted((0, w), 0, 1)
    assert audit_ledger(ann, cfg) == ([1, 0], [0, 0])


@pytest.mark.parametrize(
    "cfg, T",
    [(GameConfig(2, (2, 2), 5), 3), (GameConfig(3, (2, 2, 2), 6), 5), (GameConfig(2, (3, 3), 8), 6)],
)
def test_survival_horizon(cfg, T):
    assert survival_horizon(cfg) == T


def test_survival_horizon_two_colour_family():
    for r in range(1, 101):
        assert survival_horizon(GameConfig(2, (r, r), 3 * r - 1)) == 3 * r - 3


def test_trace_record_schema():
    p = MatchingPainter(CFG)
    rec = p.trace_record(p.respond((0, 1)))
    assert set(rec) == {"move_index", "edge", "rule", "color", "roles_changed", "A", "B", "C2", "C3", "typeIII_count"}
    assert rec["roles_changed"] == [{"edge": [0, 1], "role": "free"}]
    rec = p.trace_record(p.respond((0, 2)))
    assert rec["rule"] == "ii" and rec["typeIII_count"] == 4
    assert {"edge": [0, 1], "role": "rooted", "root": 0} in rec["roles_changed"]
    json.dumps(rec)


def test_free_edges_form_matching_on_type_two_vertices():
    # consequence of the rules: a vertex touches at most one free edge
    rng = random.Random(5)
    cfg = GameConfig(3, (3, 2, 4), 9)
    for _ in range(200):
        p = MatchingPainter(cfg)
        for i in rng.sample(range(cfg.num_edges), 20):
            p.respond(geometry(9).edges[i])
            assert all(len(x) <= 1 for x in p.ann.free_at)
            for e, root in p.ann.roles.items():
                if root != FREE:
                    assert p.ann.colors[e] == p.ann.colors[p.ann.rooted_at[root][0]]


configs = st.lists(st.integers(1, 4), min_size=2, max_size=4).flatmap(
    lambda targets: st.tuples(
        st.just(tuple(targets)),
        st.integers(0, 3).map(lambda extra: max(targets) + 1 + sum(r - 1 for r in targets) + extra),
    )
)


@settings(max_examples=150, deadline=None)
@given(configs, st.randoms(use_true_random=False), st.booleans())
def test_invariants_along_random_play(cfg_spec, rnd, randomize):
    targets, n = cfg_spec
    cfg = GameConfig(len(targets), targets, n)
    T = survival_horizon(cfg)
    p = MatchingPainter(cfg, random.Random(rnd.random()) if randomize else None)
    order = list(range(cfg.num_edges))
    rnd.shuffle(order)
    for j, i in enumerate(order, start=1):
        before = snapshot(p)
        move = p.respond(geometry(n).edges[i])
        assert check_step(p, before, move) == []
        if j <= T:
            assert builder_won(p.state, cfg) is None
        if j > T + 3:
            break
