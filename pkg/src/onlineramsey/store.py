"""Append-only JSON Lines store of solver results, and regression checks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from onlineramsey import __version__
from onlineramsey.bounds import KnownValue, known_value, known_values
from onlineramsey.game import GameConfig
from onlineramsey.solver import BudgetExceeded, Finite, GameValue, SearchStats, value_from_json


def result_record(
    config: GameConfig,
    value: GameValue,
    stats: SearchStats,
    first_moves: list | None = None,
    kind: str = "solve",
) -> dict:
    return {
        "kind": kind,
        "config": config.to_json(),
        "value": value.to_json(),
        "optimal_first_moves": [
            {"edge": list(e), "value": v.to_json()} for e, v in (first_moves or [])
        ],
        "stats": stats.to_json(),
        "tool_version": __version__,
    }


class ResultsStore:
    """One JSON object per line; a (kind, config) may repeat only across tool versions."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)

    def records(self) -> list[dict]:
        if not self.path.exists():
            return []
        with self.path.open() as fh:
            return [json.loads(line) for line in fh if line.strip()]

    def append(self, record: dict) -> bool:
        """Append unless the same (kind, config, tool_version) is already stored."""
        ident = (record.get("kind", "solve"), json.dumps(record["config"], sort_keys=True), record["tool_version"])
        for r in self.records():
            if (r.get("kind", "solve"), json.dumps(r["config"], sort_keys=True), r["tool_version"]) == ident:
                return False
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
        return True


@dataclass(frozen=True)
class RegressionResult:
    known: KnownValue
    status: str  # "pass" | "fail" | "skipped"
    got: GameValue | None = None

    def to_json(self) -> dict:
        return {
            "config": self.known.config.to_json(),
            "expected": sorted(self.known.values),
            "got": None if self.got is None else self.got.to_json(),
            "status": self.status,
        }


def _judge(known: KnownValue, value: GameValue) -> str:
    if isinstance(value, Finite):
        return "pass" if known.matches(value.k) else "fail"
    if isinstance(value, BudgetExceeded):
        return "fail" if value.bound > max(known.values) else "skipped"
    return "fail"


def run_regression(store: ResultsStore, r_max: int = 5) -> list[RegressionResult]:
    """Compare stored exact-solver values with the known table.

    Known entries with no stored result are skipped; stored configs outside
    the default table are still checked if a closed form covers them.
    """
    latest: dict[GameConfig, GameValue] = {}
    for rec in store.records():
        if rec.get("kind", "solve") != "solve":
            continue
        c = rec["config"]
        latest[GameConfig(c["t"], tuple(c["targets"]), c["n"])] = value_from_json(rec["value"])

    table = {k.config: k for k in known_values(r_max)}
    for cfg in latest:
        kv = known_value(cfg)
        if kv is not None:
            table.setdefault(cfg, kv)

    out = []
    for cfg in sorted(table, key=lambda c: (c.t, c.targets, c.n)):
        kv = table[cfg]
        if cfg not in latest:
            out.append(RegressionResult(kv, "skipped"))
        else:
            out.append(RegressionResult(kv, _judge(kv, latest[cfg]), latest[cfg]))
    return out
