"""Board representation for the Builder/Painter game on K_n.

A board is a partial edge colouring of K_n with colours 1..t. Edges are
indexed lexicographically, (0,1), (0,2), ..., (n-2,n-1), and a board stores
one byte per edge (0 = uncoloured). Each colour class is also exposed as an
integer bitmask over edge indices, which is what the matching and search code
consume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Edge = tuple[int, int]

UNCOLORED = 0
MAX_TEXT_COLORS = 9


class GameError(ValueError):
    """Raised for invalid configurations and illegal moves."""


@dataclass(frozen=True)
class GameConfig:
    """Number of colours, per-colour target matching sizes, board size."""

    t: int
    targets: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(int(r) for r in self.targets))
        if self.t < 1:
            raise GameError(f"need at least one colour, got t={self.t}")
        if len(self.targets) != self.t:
            raise GameError(f"expected {self.t} targets, got {len(self.targets)}")
        if any(r < 1 for r in self.targets):
            raise GameError(f"targets must be positive, got {self.targets}")
        if self.n < 2:
            raise GameError(f"need n >= 2, got n={self.n}")

    @classmethod
    def of(cls, targets: Sequence[int], n: int) -> GameConfig:
        return cls(len(targets), tuple(targets), n)

    @property
    def num_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    def to_json(self) -> dict:
        return {"t": self.t, "targets": list(self.targets), "n": self.n}

    def __str__(self) -> str:
        return f"(t={self.t}, r={self.targets}, n={self.n})"


class Geometry:
    """Edge indexing tables for K_n, shared by every board of that size."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.edges: list[Edge] = list(itertools.combinations(range(n), 2))
        self.m = len(self.edges)
        self.index: dict[Edge, int] = {e: i for i, e in enumerate(self.edges)}
        self.full = (1 << self.m) - 1
        # incident[v]: mask of edges containing v
        self.incident = [0] * n
        for i, (u, v) in enumerate(self.edges):
            self.incident[u] |= 1 << i
            self.incident[v] |= 1 << i
        # touching[i]: mask of edges sharing an endpoint with edge i (itself included)
        self.touching = [self.incident[u] | self.incident[v] for u, v in self.edges]
        self.matrix = [[-1] * n for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            self.matrix[u][v] = self.matrix[v][u] = i

    def edge_index(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise GameError(f"({u},{v}) is not an edge of K_{self.n}")
        return self.matrix[u][v]


@lru_cache(maxsize=None)
def geometry(n: int) -> Geometry:
    return Geometry(n)


def normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise GameError(f"({u},{v}) is a loop, not an edge")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BoardState:
    """Immutable partial colouring of K_n; ``cells[i]`` is the colour of edge i."""

    n: int
    t: int
    cells: bytes
    moves: int = field(default=0, compare=False)

    @property
    def geom(self) -> Geometry:
        return geometry(self.n)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Per-colour edge bitmasks, colour c at position c-1."""
        out = [0] * self.t
        for i, c in enumerate(self.cells):
            if c:
                out[c - 1] |= 1 << i
        return tuple(out)

    @property
    def colored_mask(self) -> int:
        m = 0
        for x in self.masks:
            m |= x
        return m

    def color(self, u: int, v: int) -> int:
        return self.cells[self.geom.edge_index(u, v)]

    def colored_edges(self, color: int | None = None) -> list[Edge]:
        edges = self.geom.edges
        if color is None:
            return [edges[i] for i, c in enumerate(self.cells) if c]
        return [edges[i] for i, c in enumerate(self.cells) if c == color]

    @property
    def num_colored(self) -> int:
        return sum(1 for c in self.cells if c)

    def is_full(self) -> bool:
        return all(self.cells)

    def to_text(self) -> str:
        """'.' for uncoloured edges, the colour digit otherwise."""
        if self.t > MAX_TEXT_COLORS:
            raise GameError("text encoding supports at most 9 colours")
        return "".join(str(c) if c else "." for c in self.cells)

    @classmethod
    def from_text(cls, text: str, n: int, t: int) -> BoardState:
        m = n * (n - 1) // 2
        if len(text) != m:
            raise GameError(f"expected {m} characters for n={n}, got {len(text)}")
        cells = bytearray()
        for ch in text:
            c = 0 if ch == "." else int(ch)
            if not 0 <= c <= t:
                raise GameError(f"colour {c} out of range 1..{t}")
            cells.append(c)
        return cls(n, t, bytes(cells), sum(1 for c in cells if c))

    def packed(self) -> int:
        """Dense integer encoding, ``bit_length(t)`` bits per edge."""
        width = self.t.bit_length()
        code = 0
        for i, c in enumerate(self.cells):
            code |= c << (width * i)
        return code

    def __str__(self) -> str:
        return self.to_text() if self.t <= MAX_TEXT_COLORS else repr(self.cells)


def new_game(config: GameConfig) -> BoardState:
    return BoardState(config.n, config.t, bytes(config.num_edges))


def apply_move(state: BoardState, edge: Edge, color: int) -> BoardState:
    u, v = edge
    i = state.geom.edge_index(u, v)
    if not 1 <= color <= state.t:
        raise GameError(f"colour {color} out of range 1..{state.t}")
    if state.cells[i]:
        raise GameError(f"edge {normalize_edge(u, v)} is already coloured")
    cells = bytearray(state.cells)
    cells[i] = color
    return BoardState(state.n, state.t, bytes(cells), state.moves + 1)


def uncolored_edges(state: BoardState) -> list[Edge]:
    edges = state.geom.edges
    return [edges[i] for i, c in enumerate(state.cells) if not c]


def builder_won(state: BoardState, config: GameConfig) -> int | None:
    """Least colour i whose class contains an r_i-edge matching, else None."""
    from onlineramsey.matching import matching_number

    for c, (mask, r) in enumerate(zip(state.masks, config.targets), start=1):
        if matching_number(state.n, mask) >= r:
            return c
    return None


@dataclass(frozen=True)
class PlayRecord:
    """Ordered (edge, colour) pairs of one game."""

    moves: tuple[tuple[Edge, int], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for (u, v), c in self.moves:
            e = normalize_edge(u, v)
            if e in seen:
                raise GameError(f"edge {e} appears twice in play record")
            seen.add(e)
            norm.append((e, c))
        object.__setattr__(self, "moves", tuple(norm))

    def append(self, edge: Edge, color: int) -> PlayRecord:
        return PlayRecord(self.moves + ((edge, color),))

    def replay(self, config: GameConfig) -> BoardState:
        state = new_game(config)
        for edge, color in self.moves:
            state = apply_move(state, edge, color)
        return state

    def __len__(self) -> int:
        return len(self.moves)

    def to_json(self) -> list:
        return [[u, v, c] for (u, v), c in self.moves]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Edge, int]]) -> PlayRecord:
        return cls(tuple(pairs))
