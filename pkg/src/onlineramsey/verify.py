"""Verification campaigns for the matching Painter.

Every Builder sequence (exhaustive mode) or a seeded sample of them (random
mode) is played against :class:`MatchingPainter`; after each move the board must
have no winning colour and every bookkeeping invariant must hold.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from onlineramsey.game import GameConfig, GameError, PlayRecord, builder_won, geometry
from onlineramsey.painter import MatchingPainter, check_step, snapshot, survival_horizon

DEFAULT_STATE_CAP = 10**9
MAX_RECORDED_FAILURES = 50


@dataclass
class VerifyReport:
    config: GameConfig
    mode: str
    depth: int
    sequences: int = 0
    states: int = 0
    failures: list[PlayRecord] = field(default_factory=list)
    violations: Counter = field(default_factory=Counter)
    wall_time: float = 0.0
    seed: int | None = None
    complete: bool = True

    @property
    def success(self) -> bool:
        return self.complete and not self.failures

    @property
    def vacuous(self) -> bool:
        return self.depth <= 0

    def to_json(self, wall_time: bool = True) -> dict:
        out = {
            "config": self.config.to_json(),
            "mode": self.mode,
            "depth": self.depth,
            "sequences": self.sequences,
            "states": self.states,
            "success": self.success,
            "complete": self.complete,
            "vacuous": self.vacuous,
            "failures": [f.to_json() for f in self.failures],
            "violations": dict(sorted(self.violations.items())),
            "seed": self.seed,
        }
        if wall_time:
            out["wall_time"] = self.wall_time
        return out


def _step(painter: MatchingPainter, edge, record: PlayRecord, report: VerifyReport) -> PlayRecord:
    before = snapshot(painter)
    move = painter.respond(edge)
    record = record.append(move.edge, move.color)
    bad = check_step(painter, before, move)
    if builder_won(painter.state, painter.config) is not None:
        bad.append("builder_won")
    if bad:
        report.violations.update(bad)
        if len(report.failures) < MAX_RECORDED_FAILURES:
            report.failures.append(record)
    return record


def _check_depth(config: GameConfig, depth: int) -> None:
    if depth > config.num_edges:
        raise GameError(f"depth {depth} exceeds the {config.num_edges} edges of K_{config.n}")


def verify_painter_exhaustive(
    config: GameConfig, depth: int | None = None, state_cap: int = DEFAULT_STATE_CAP
) -> VerifyReport:
    """All ordered Builder sequences of length ``depth`` (default: survival horizon).

    Sequences reaching the same annotated position are merged, carrying a path
    count, so ``sequences`` still equals the number of ordered sequences.
    """
    t0 = time.perf_counter()
    depth = survival_horizon(config) if depth is None else depth
    report = VerifyReport(config, "exhaustive", depth)
    if depth <= 0:
        report.sequences = 1 if depth == 0 else 0
        return report
    _check_depth(config, depth)
    edges = geometry(config.n).edges
    layer: dict[tuple, tuple[MatchingPainter, PlayRecord, int]] = {(): (MatchingPainter(config), PlayRecord(), 1)}
    for _ in range(depth):
        nxt: dict[tuple, tuple[MatchingPainter, PlayRecord, int]] = {}
        for painter, record, count in layer.values():
            for i, c in enumerate(painter.state.cells):
                if c:
                    continue
                child = painter.clone()
                child_record = _step(child, edges[i], record, report)
                key = child.memo_key()
                if key in nxt:
                    p, r, k = nxt[key]
                    nxt[key] = (p, r, k + count)
                else:
                    nxt[key] = (child, child_record, count)
                    report.states += 1
                    if report.states >= state_cap:
                        report.complete = False
                        report.wall_time = time.perf_counter() - t0
                        return report
        layer = nxt
    report.sequences = sum(k for _, _, k in layer.values())
    report.wall_time = time.perf_counter() - t0
    return report


def _random_shard(
    config: GameConfig, depth: int, seed: int, start: int, stop: int, randomize_painter: bool
) -> VerifyReport:
    report = VerifyReport(config, "random", depth, seed=seed)
    edges = geometry(config.n).edges
    for trial in range(start, stop):
        rng = random.Random(seed * 1_000_003 + trial)
        painter = MatchingPainter(config, rng if randomize_painter else None)
        record = PlayRecord()
        for i in rng.sample(range(config.num_edges), depth):
            record = _step(painter, edges[i], record, report)
            report.states += 1
        report.sequences += 1
    return report


def verify_painter_random(
    config: GameConfig,
    trials: int,
    seed: int,
    depth: int | None = None,
    *,
    randomize_painter: bool = False,
    workers: int = 1,
) -> VerifyReport:
    """``trials`` uniformly random Builder sequences; reproducible from ``seed``.

    Trial k draws from its own generator, so sharding across workers does not
    change the report.
    """
    t0 = time.perf_counter()
    depth = survival_horizon(config) if depth is None else depth
    _check_depth(config, depth)
    if depth <= 0:
        return VerifyReport(config, "random", depth, seed=seed)
    workers = max(1, min(workers, trials))
    bounds = [(k * trials // workers, (k + 1) * trials // workers) for k in range(workers)]
    if workers == 1:
        shards = [_random_shard(config, depth, seed, 0, trials, randomize_painter)]
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [
                pool.submit(_random_shard, config, depth, seed, a, b, randomize_painter) for a, b in bounds
            ]
            shards = [f.result() for f in futures]
    report = VerifyReport(config, "random", depth, seed=seed)
    for shard in shards:
        report.sequences += shard.sequences
        report.states += shard.states
        report.violations.update(shard.violations)
        room = MAX_RECORDED_FAILURES - len(report.failures)
        report.failures.extend(shard.failures[: max(room, 0)])
    report.wall_time = time.perf_counter() - t0
    return report


def painter_trace(config: GameConfig, edges, rng: random.Random | None = None) -> list[dict]:
    """JSON-ready trace records for Painter's replies to a Builder sequence."""
    painter = MatchingPainter(config, rng)
    out = []
    for e in edges:
        move = painter.respond(tuple(e))
        out.append(painter.trace_record(move))
    return out
