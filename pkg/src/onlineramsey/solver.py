"""Exact values of the restricted online Ramsey game for matchings.

The value of a board is the number of further moves Builder needs to force a
monochromatic r_c-matching in some colour c against best Painter play:

    value(S) = 0                                  if S is already won
             = inf (NoWin)                        if S is full
             = 1 + min_e max_c value(S + e:c)     otherwise

:class:`ExactSolver` answers "can Builder win within d moves?" by depth-limited
AND/OR search and deepens d until the answer is yes. Proven facts are stored
per canonical key as bounds (value >= lo, value <= hi), so they stay valid
across deepening iterations. Builder branches once per edge orbit. A branch is
cut when min_c (r_c - matching number of colour c) exceeds the remaining
depth; one move raises one colour's matching number by at most one.
"""

from __future__ import annotations

import time
from collections.abc import Iterator
from dataclasses import asdict, dataclass

from onlineramsey.canon import Canonicalizer, canonicalizer
from onlineramsey.game import BoardState, Edge, GameConfig, GameError, builder_won, geometry, new_game
from onlineramsey.matching import matching_number
from onlineramsey.painter import MatchingPainter

INF = float("inf")


@dataclass(frozen=True)
class Finite:
    k: int

    def to_json(self) -> dict:
        return {"finite": self.k}

    def __str__(self) -> str:
        return f"Finite({self.k})"


@dataclass(frozen=True)
class NoWin:
    def to_json(self) -> str:
        return "no_win"

    def __str__(self) -> str:
        return "NoWin"


@dataclass(frozen=True)
class BudgetExceeded:
    bound: int  # value is known to be at least this

    def to_json(self) -> dict:
        return {"budget_exceeded": self.bound}

    def __str__(self) -> str:
        return f"BudgetExceeded(>= {self.bound})"


GameValue = Finite | NoWin | BudgetExceeded


def value_from_json(obj) -> GameValue:
    if obj == "no_win":
        return NoWin()
    if "finite" in obj:
        return Finite(int(obj["finite"]))
    return BudgetExceeded(int(obj["budget_exceeded"]))


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    memo_size: int = 0
    wall_time: float = 0.0
    max_depth: int = 0

    def to_json(self) -> dict:
        return asdict(self)


def _check_budget(budget: int | None) -> None:
    if budget is not None and budget < 1:
        raise GameError(f"budget must be at least 1, got {budget}")


def _finish(value: int | float, budget: int | None, m: int) -> GameValue:
    if value != INF and (budget is None or value <= budget):
        return Finite(int(value))
    if budget is None or budget >= m:
        return NoWin()
    return BudgetExceeded(budget + 1)


class ExactSolver:
    """Depth-limited AND/OR search with a canonical-key bounds table.

    ``canonical`` and ``orbits`` switch the symmetry reductions off for
    cross-checking; ``prune`` switches off the matching-number cut.
    """

    def __init__(
        self,
        config: GameConfig,
        *,
        canonical: bool = True,
        orbits: bool = True,
        prune: bool = True,
    ) -> None:
        self.config = config
        self.n = config.n
        self.targets = config.targets
        self.geom = geometry(config.n)
        self.canon: Canonicalizer | None = (
            canonicalizer(config.n, config.targets) if canonical or orbits else None
        )
        self.canonical = canonical
        self.orbits = orbits
        self.prune = prune
        self.lower: dict[bytes, int] = {}
        self.upper: dict[bytes, int] = {}
        self._keys: dict[bytes, bytes] = {}
        self._orbit_cache: dict[bytes, list[int]] = {}
        self.stats = SearchStats()

    # -- helpers -----------------------------------------------------------

    def _key(self, cells: bytes) -> bytes:
        if not self.canonical:
            return cells
        k = self._keys.get(cells)
        if k is None:
            k = self.canon.key(cells)
            self._keys[cells] = k
        return k

    def _branch_edges(self, cells: bytes) -> list[int]:
        if not self.orbits:
            return [i for i, c in enumerate(cells) if not c]
        reps = self._orbit_cache.get(cells)
        if reps is None:
            reps = [orbit[0] for orbit in self.canon.edge_orbits(cells)]
            self._orbit_cache[cells] = reps
        return reps

    def _matchings(self, masks: list[int]) -> list[int]:
        return [matching_number(self.n, m) for m in masks]

    @staticmethod
    def _split(cells: bytes, t: int) -> list[int]:
        masks = [0] * t
        for i, c in enumerate(cells):
            if c:
                masks[c - 1] |= 1 << i
        return masks

    # -- search ------------------------------------------------------------

    def wins_within(self, cells: bytes, masks: list[int], mm: list[int], depth: int, ply: int = 0) -> bool:
        """Can Builder force a win within ``depth`` moves from a non-won board?"""
        uncolored = cells.count(0)
        if depth > uncolored:
            depth = uncolored
        if depth <= 0:
            return False
        targets = self.targets
        t = len(targets)
        if self.prune and min(targets[c] - mm[c] for c in range(t)) > depth:
            return False
        key = self._key(cells)
        if self.lower.get(key, 0) > depth:
            self.stats.memo_hits += 1
            return False
        hi = self.upper.get(key)
        if hi is not None and hi <= depth:
            self.stats.memo_hits += 1
            return True
        self.stats.nodes += 1
        if ply > self.stats.max_depth:
            self.stats.max_depth = ply

        n = self.n
        scored = []
        for i in self._branch_edges(cells):
            bit = 1 << i
            after = [matching_number(n, masks[c] | bit) for c in range(t)]
            wins = sum(after[c] >= targets[c] for c in range(t))
            # Painter tries the colour furthest from its target first
            replies = sorted(
                (c for c in range(t) if after[c] < targets[c]),
                key=lambda c: (mm[c] - targets[c], c),
            )
            scored.append((-wins, sum(mm) - sum(after), i, after, replies))
        scored.sort(key=lambda s: s[:3])

        for _, _, i, after, replies in scored:
            forced = True
            for c in replies:
                if depth == 1:
                    forced = False
                    break
                child = bytearray(cells)
                child[i] = c + 1
                cmasks = list(masks)
                cmasks[c] |= 1 << i
                cmm = list(mm)
                cmm[c] = after[c]
                if not self.wins_within(bytes(child), cmasks, cmm, depth - 1, ply + 1):
                    forced = False
                    break
            if forced:
                self.upper[key] = depth if hi is None else min(hi, depth)
                return True
        # at depth == uncolored this records "no win at all" (value > uncolored)
        self.lower[key] = max(self.lower.get(key, 0), depth + 1)
        return False

    def value(self, state: BoardState, budget: int | None = None) -> GameValue:
        """Exact value of an arbitrary board, deepening up to ``budget``."""
        _check_budget(budget)
        if builder_won(state, self.config) is not None:
            return Finite(0)
        cells = state.cells
        masks = list(state.masks)
        mm = self._matchings(masks)
        uncolored = cells.count(0)
        limit = uncolored if budget is None else min(budget, uncolored)
        start = max(1, min(r - k for r, k in zip(self.targets, mm)))
        key = self._key(cells)
        start = max(start, self.lower.get(key, 0))
        for d in range(start, limit + 1):
            if self.wins_within(cells, masks, mm, d):
                return Finite(d)
        if limit == uncolored:
            return NoWin()
        return BudgetExceeded(limit + 1)

    def solve(self, budget: int | None = None) -> GameValue:
        t0 = time.perf_counter()
        v = self.value(new_game(self.config), budget)
        if isinstance(v, NoWin) and budget is not None and budget < self.config.num_edges:
            v = BudgetExceeded(budget + 1)
        self.stats.wall_time += time.perf_counter() - t0
        self.stats.memo_size = len(self.lower) + len(self.upper)
        return v

    def move_values(self, state: BoardState, budget: int | None = None) -> Iterator[tuple[Edge, GameValue]]:
        """Value of each Builder move (one per orbit): 1 + worst Painter reply."""
        edges = self.geom.edges
        for i in self._branch_edges(state.cells):
            worst: int | float = 0
            exceeded = False
            for c in range(1, self.config.t + 1):
                cells = bytearray(state.cells)
                cells[i] = c
                child = BoardState(state.n, state.t, bytes(cells), state.moves + 1)
                sub_budget = None if budget is None else budget - 1
                if sub_budget == 0:
                    v = Finite(0) if builder_won(child, self.config) is not None else BudgetExceeded(1)
                else:
                    v = self.value(child, sub_budget)
                if isinstance(v, Finite):
                    worst = max(worst, v.k)
                elif isinstance(v, NoWin):
                    worst = INF
                else:
                    exceeded = True
            if worst == INF:
                yield edges[i], NoWin()
            elif exceeded:
                yield edges[i], BudgetExceeded(budget + 1)
            else:
                yield edges[i], Finite(int(worst) + 1)


def _rank(v: GameValue) -> float:
    if isinstance(v, Finite):
        return v.k
    if isinstance(v, BudgetExceeded):
        return v.bound + 0.5
    return INF


def solve_exact(config: GameConfig, budget: int | None = None) -> tuple[GameValue, SearchStats]:
    """Optimal-play value from the empty board; ``budget=None`` is unlimited."""
    _check_budget(budget)
    solver = ExactSolver(config)
    value = solver.solve(budget)
    return value, solver.stats


def optimal_first_moves(
    config: GameConfig, budget: int | None = None, solver: ExactSolver | None = None
) -> list[tuple[Edge, GameValue]]:
    """Minimax-optimal openings, one representative edge per orbit."""
    _check_budget(budget)
    solver = solver or ExactSolver(config)
    moves = list(solver.move_values(new_game(config), budget))
    best = min(_rank(v) for _, v in moves)
    return [(e, v) for e, v in moves if _rank(v) == best]


class NaiveSolver:
    """Plain minimax over raw boards, memoised on the exact cell string only.

    No symmetry reduction and no pruning; an oracle for tiny boards.
    """

    def __init__(self, config: GameConfig) -> None:
        self.config = config
        self.memo: dict[bytes, float] = {}
        self.stats = SearchStats()

    def _won(self, cells: bytes) -> bool:
        cfg = self.config
        masks = ExactSolver._split(cells, cfg.t)
        return any(matching_number(cfg.n, masks[c]) >= cfg.targets[c] for c in range(cfg.t))

    def value(self, cells: bytes, ply: int = 0) -> float:
        """Moves to a forced win from ``cells``; ``INF`` if Painter survives."""
        memo = self.memo
        if cells in memo:
            self.stats.memo_hits += 1
            return memo[cells]
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, ply)
        if self._won(cells):
            v = 0
        elif all(cells):
            v = INF
        else:
            best = INF
            for i, occupied in enumerate(cells):
                if occupied:
                    continue
                worst = 0
                for c in range(1, self.config.t + 1):
                    child = bytearray(cells)
                    child[i] = c
                    worst = max(worst, self.value(bytes(child), ply + 1))
                best = min(best, worst)
            v = 1 + best
        memo[cells] = v
        return v


def solve_naive(config: GameConfig, budget: int | None = None) -> tuple[GameValue, SearchStats]:
    _check_budget(budget)
    t0 = time.perf_counter()
    solver = NaiveSolver(config)
    v = solver.value(bytes(config.num_edges))
    solver.stats.memo_size = len(solver.memo)
    solver.stats.wall_time = time.perf_counter() - t0
    return _finish(v, budget, config.num_edges), solver.stats


def best_builder_vs_painter(config: GameConfig, budget: int | None = None) -> tuple[GameValue, SearchStats]:
    """Fewest moves for Builder to win against the deterministic matching Painter.

    Breadth-first over Builder sequences. Painter replies depend on the roles
    and roots as well as the colours, so transpositions are merged on the full
    annotated state, without vertex-symmetry reduction.
    """
    _check_budget(budget)
    t0 = time.perf_counter()
    stats = SearchStats()
    m = config.num_edges
    limit = m if budget is None else min(budget, m)
    layer = {0: MatchingPainter(config)}
    result: GameValue | None = None
    for depth in range(1, limit + 1):
        nxt: dict[tuple, MatchingPainter] = {}
        stats.max_depth = depth
        for painter in layer.values():
            stats.nodes += 1
            for i, c in enumerate(painter.state.cells):
                if c:
                    continue
                child = painter.clone()
                child.respond(config_edge(config, i))
                if builder_won(child.state, config) is not None:
                    result = Finite(depth)
                    break
                key = child.memo_key()
                if key in nxt:
                    stats.memo_hits += 1
                else:
                    nxt[key] = child
            if result is not None:
                break
        if result is not None:
            break
        stats.memo_size += len(nxt)
        layer = nxt
        if not layer:
            break
    if result is None:
        result = NoWin() if limit == m else BudgetExceeded(limit + 1)
    stats.wall_time = time.perf_counter() - t0
    return result, stats


def config_edge(config: GameConfig, i: int) -> Edge:
    return geometry(config.n).edges[i]


def certify_builder_win(config: GameConfig, k: int, solver: ExactSolver | None = None) -> tuple[bool, int]:
    """Replay a Builder strategy against every Painter reply on raw boards.

    The solver only suggests Builder's edge; the check itself walks the full
    reply tree without symmetry reduction or memo lookups and confirms every
    leaf is won within ``k`` moves. Returns (certified, leaves visited).
    """
    solver = solver or ExactSolver(config)
    n, t, targets = config.n, config.t, config.targets
    leaves = 0

    def won(masks: list[int]) -> bool:
        return any(matching_number(n, masks[c]) >= targets[c] for c in range(t))

    def suggest(cells: bytes, masks: list[int], d: int) -> int | None:
        mm = solver._matchings(masks)
        for i, c in enumerate(cells):
            if c:
                continue
            ok = True
            for col in range(t):
                cm = list(masks)
                cm[col] |= 1 << i
                if matching_number(n, cm[col]) >= targets[col]:
                    continue
                child = bytearray(cells)
                child[i] = col + 1
                cmm = list(mm)
                cmm[col] = matching_number(n, cm[col])
                if d == 1 or not solver.wins_within(bytes(child), cm, cmm, d - 1):
                    ok = False
                    break
            if ok:
                return i
        return None

    def check(cells: bytes, masks: list[int], d: int) -> bool:
        nonlocal leaves
        if won(masks):
            leaves += 1
            return True
        if d == 0:
            return False
        i = suggest(cells, masks, d)
        if i is None:
            return False
        for col in range(t):
            child = bytearray(cells)
            child[i] = col + 1
            cm = list(masks)
            cm[col] |= 1 << i
            if not check(bytes(child), cm, d - 1):
                return False
        return True

    ok = check(bytes(config.num_edges), [0] * t, k)
    return ok, leaves
