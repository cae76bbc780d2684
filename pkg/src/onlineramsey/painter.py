"""Painter strategy that keeps every colour short of its target matching.

Painter tags each coloured edge as *free* or *rooted* at one of its endpoints.
Vertices are then typed: I if they root an edge, II if not I but touching a
free edge, III otherwise. On Builder's edge ab, oriented so that a has the
lower type, Painter answers:

* a of type I   -- root ab at a, copy the colour of an edge already rooted at a;
* a of type II  -- take a free edge ac, root both ab and ac at a, copy ac's colour;
* a of type III -- ab becomes free, coloured with a colour c whose
  A(c) + B(c) <= r_c - 2 if one exists, otherwise any colour.

Here A(c) counts vertices rooting a colour-c edge and B(c) counts free
colour-c edges. Against any Builder this survives
3 * (sum(r) - t + 1) - n - 1 moves with no monochromatic target matching.

Choices the strategy leaves open are resolved deterministically (earliest
coloured edge, smallest colour, smaller vertex first). Passing a
``random.Random`` resolves them at random instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import IntEnum

from onlineramsey.game import (
    BoardState,
    Edge,
    GameConfig,
    GameError,
    apply_move,
    new_game,
    normalize_edge,
)
from onlineramsey.matching import matching_number

FREE = -1


class VertexType(IntEnum):
    I = 1
    II = 2
    III = 3


RULE_I, RULE_II, RULE_III = "i", "ii", "iii"


@dataclass
class PainterAnnotations:
    """Role of every coloured edge plus per-vertex back-references.

    ``roles[e]`` is FREE or the root vertex. ``rooted_at[v]`` and
    ``free_at[v]`` list edges in the order they were coloured.
    """

    n: int
    roles: dict[Edge, int] = field(default_factory=dict)
    colors: dict[Edge, int] = field(default_factory=dict)
    rooted_at: list[list[Edge]] = field(default_factory=list)
    free_at: list[list[Edge]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rooted_at:
            self.rooted_at = [[] for _ in range(self.n)]
        if not self.free_at:
            self.free_at = [[] for _ in range(self.n)]

    def copy(self) -> PainterAnnotations:
        return PainterAnnotations(
            self.n,
            dict(self.roles),
            dict(self.colors),
            [list(x) for x in self.rooted_at],
            [list(x) for x in self.free_at],
        )

    def vertex_type(self, v: int) -> VertexType:
        if self.rooted_at[v]:
            return VertexType.I
        if self.free_at[v]:
            return VertexType.II
        return VertexType.III

    def set_free(self, e: Edge, color: int) -> None:
        self.roles[e] = FREE
        self.colors[e] = color
        self.free_at[e[0]].append(e)
        self.free_at[e[1]].append(e)

    def set_rooted(self, e: Edge, root: int, color: int) -> None:
        if self.roles.get(e) == FREE:
            self.free_at[e[0]].remove(e)
            self.free_at[e[1]].remove(e)
        self.roles[e] = root
        self.colors[e] = color
        self.rooted_at[root].append(e)

    def key(self) -> tuple:
        """Hashable snapshot of everything that drives future deterministic replies.

        Only the earliest edge rooted at a vertex is ever consulted, so later
        rooted edges enter the key through ``roles`` alone.
        """
        return (
            tuple(sorted((e, self.colors[e], r) for e, r in self.roles.items())),
            tuple(x[0] if x else None for x in self.rooted_at),
            tuple(tuple(x) for x in self.free_at),
        )


@dataclass
class PainterLedger:
    """Counters A(c), B(c) (index c-1), rule counts C2, C3, and moves played j."""

    t: int
    A: list[int] = field(default_factory=list)
    B: list[int] = field(default_factory=list)
    C2: int = 0
    C3: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        if not self.A:
            self.A = [0] * self.t
        if not self.B:
            self.B = [0] * self.t

    def copy(self) -> PainterLedger:
        return PainterLedger(self.t, list(self.A), list(self.B), self.C2, self.C3, self.j)

    def load(self, c: int) -> int:
        """A(c) + B(c) for colour c in 1..t."""
        return self.A[c - 1] + self.B[c - 1]

    def loads(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.A, self.B))


@dataclass(frozen=True)
class PainterMove:
    edge: Edge  # oriented (a, b)
    color: int
    rule: str
    roles_changed: tuple[tuple[Edge, int], ...]


def classify_vertex(ann: PainterAnnotations, v: int) -> VertexType:
    return ann.vertex_type(v)


def orient_edge(
    ann: PainterAnnotations, e: Edge, rng: random.Random | None = None
) -> tuple[int, int]:
    """Order the endpoints so the first has the lower type (I < II < III)."""
    u, v = normalize_edge(*e)
    if (u, v) in ann.roles:
        raise GameError(f"edge {(u, v)} is already coloured")
    tu, tv = ann.vertex_type(u), ann.vertex_type(v)
    if tu == tv and rng is not None and rng.random() < 0.5:
        return v, u
    return (v, u) if tv < tu else (u, v)


def audit_ledger(ann: PainterAnnotations, config: GameConfig) -> tuple[list[int], list[int]]:
    """Recompute (A, B) from the annotations by a full scan."""
    roots: list[set[int]] = [set() for _ in range(config.t)]
    B = [0] * config.t
    for e, role in ann.roles.items():
        c = ann.colors[e]
        if role == FREE:
            B[c - 1] += 1
        else:
            roots[c - 1].add(role)
    return [len(s) for s in roots], B


def survival_horizon(config: GameConfig) -> int:
    return 3 * (sum(config.targets) - config.t + 1) - config.n - 1


class MatchingPainter:
    """One game's worth of Painter state: board, annotations and ledger."""

    def __init__(self, config: GameConfig, rng: random.Random | None = None) -> None:
        self.config = config
        self.rng = rng
        self.state = new_game(config)
        self.ann = PainterAnnotations(config.n)
        self.ledger = PainterLedger(config.t)
        # per-vertex count of rooted edges in each colour; A(c) = #{v : count > 0}
        self._root_colors = [[0] * config.t for _ in range(config.n)]
        self.type3 = config.n

    def clone(self) -> MatchingPainter:
        other = MatchingPainter.__new__(MatchingPainter)
        other.config = self.config
        other.rng = self.rng
        other.state = self.state
        other.ann = self.ann.copy()
        other.ledger = self.ledger.copy()
        other._root_colors = [list(x) for x in self._root_colors]
        other.type3 = self.type3
        return other

    def vertex_type(self, v: int) -> VertexType:
        return self.ann.vertex_type(v)

    def count_type3(self) -> int:
        return sum(1 for v in range(self.config.n) if self.ann.vertex_type(v) is VertexType.III)

    def _pick(self, items: list):
        if self.rng is None:
            return items[0]
        return self.rng.choice(items)

    def _root(self, e: Edge, a: int, color: int) -> None:
        was_free = self.ann.roles.get(e) == FREE
        self.ann.set_rooted(e, a, color)
        if was_free:
            self.ledger.B[color - 1] -= 1
        counts = self._root_colors[a]
        if counts[color - 1] == 0:
            self.ledger.A[color - 1] += 1
        counts[color - 1] += 1

    def respond(self, edge: Edge) -> PainterMove:
        """Colour Builder's edge, update annotations and ledger incrementally."""
        e = normalize_edge(*edge)
        if self.state.cells[self.state.geom.edge_index(*e)]:
            raise GameError(f"edge {e} is already coloured")
        a, b = orient_edge(self.ann, e, self.rng)
        ta = self.ann.vertex_type(a)
        touched = {a, b}
        ac = None
        if ta is VertexType.II:
            ac = self._pick(self.ann.free_at[a])
            touched.update(ac)
        type3_before = sum(self.ann.vertex_type(v) is VertexType.III for v in touched)

        if ta is VertexType.I:
            rule = RULE_I
            color = self.ann.colors[self._pick(self.ann.rooted_at[a])]
            self._root(e, a, color)
            changed = ((e, a),)
        elif ta is VertexType.II:
            rule = RULE_II
            color = self.ann.colors[ac]
            self._root(ac, a, color)
            self._root(e, a, color)
            changed = ((ac, a), (e, a))
            self.ledger.C2 += 1
        else:
            rule = RULE_III
            targets = self.config.targets
            colors = range(1, self.config.t + 1)
            slack = [c for c in colors if self.ledger.load(c) <= targets[c - 1] - 2]
            color = self._pick(slack or list(colors))
            self.ann.set_free(e, color)
            self.ledger.B[color - 1] += 1
            changed = ((e, FREE),)
            self.ledger.C3 += 1

        self.type3 += sum(self.ann.vertex_type(v) is VertexType.III for v in touched) - type3_before
        self.state = apply_move(self.state, e, color)
        self.ledger.j += 1
        return PainterMove((a, b), color, rule, changed)

    def memo_key(self) -> tuple:
        return (self.state.cells, self.ann.key())

    def trace_record(self, move: PainterMove) -> dict:
        return {
            "move_index": self.ledger.j,
            "edge": list(move.edge),
            "rule": move.rule,
            "color": move.color,
            "roles_changed": [
                {"edge": list(e), "role": "free"} if r == FREE else {"edge": list(e), "role": "rooted", "root": r}
                for e, r in move.roles_changed
            ],
            "A": list(self.ledger.A),
            "B": list(self.ledger.B),
            "C2": self.ledger.C2,
            "C3": self.ledger.C3,
            "typeIII_count": self.type3,
        }


def painter_move(
    state: BoardState,
    ann: PainterAnnotations,
    ledger: PainterLedger,
    config: GameConfig,
    e: Edge,
    rng: random.Random | None = None,
) -> tuple[int, BoardState, PainterAnnotations, PainterLedger, str]:
    """Functional form of :meth:`MatchingPainter.respond`; inputs are not mutated."""
    p = MatchingPainter.__new__(MatchingPainter)
    p.config = config
    p.rng = rng
    p.state = state
    p.ann = ann.copy()
    p.ledger = ledger.copy()
    p._root_colors = [[0] * config.t for _ in range(config.n)]
    for edge, root in ann.roles.items():
        if root != FREE:
            p._root_colors[root][ann.colors[edge] - 1] += 1
    p.type3 = p.count_type3()
    move = p.respond(e)
    return move.color, p.state, p.ann, p.ledger, move.rule


# ---------------------------------------------------------------------------
# invariant auditing


@dataclass(frozen=True)
class Snapshot:
    type3: int
    loads: tuple[int, ...]


def snapshot(p: MatchingPainter) -> Snapshot:
    return Snapshot(p.type3, p.ledger.loads())


def check_step(p: MatchingPainter, before: Snapshot, move: PainterMove) -> list[str]:
    """Names of every invariant violated by the move just played."""
    cfg = p.config
    led = p.ledger
    bad: list[str] = []

    type3 = p.count_type3()
    if type3 != p.type3:
        bad.append("type3_count")
    delta = type3 - before.type3
    allowed = {RULE_I: (0,), RULE_II: (0, 1), RULE_III: (-2,)}[move.rule]
    if delta not in allowed:
        bad.append("type3_delta")

    loads = led.loads()
    for c in range(1, cfg.t + 1):
        d = loads[c - 1] - before.loads[c - 1]
        want = 1 if (move.rule == RULE_III and c == move.color) else 0
        if d != want:
            bad.append("load_delta")
            break

    A, B = audit_ledger(p.ann, cfg)
    if A != led.A or B != led.B:
        bad.append("ledger_audit")
    if min(led.A + led.B) < 0 or led.C2 + led.C3 > led.j:
        bad.append("ledger_bounds")
    if sum(loads) != led.C3:
        bad.append("load_equals_c3")

    n = cfg.n
    if not (n - 2 * led.C3 <= type3 <= n + led.C2 - 2 * led.C3):
        bad.append("type3_bounds")

    T = survival_horizon(cfg)
    if led.j <= T and 3 * led.C3 > n + led.j:
        bad.append("c3_bound")
    if led.j == T and sum(loads) > sum(cfg.targets) - cfg.t:
        bad.append("final_load")

    for c in range(1, cfg.t + 1):
        if matching_number(n, p.state.masks[c - 1]) > loads[c - 1]:
            bad.append("matching_domination")
            break

    if any(loads[c] >= cfg.targets[c] for c in range(cfg.t)):
        if any(loads[c] < cfg.targets[c] - 1 for c in range(cfg.t)):
            bad.append("slack_propagation")

    for e, role in p.ann.roles.items():
        if role != FREE and role not in e:
            bad.append("root_not_endpoint")
            break
    return bad
