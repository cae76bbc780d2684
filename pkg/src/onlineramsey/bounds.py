"""Closed-form bounds and known values for matching games.

``theorem1_upper`` is the general Builder bound
((2t - 1 + (t - 3) log2(t - 2)) / (t + 1)) * n with log2(0) taken as 0,
``theorem3_lower`` is the Painter bound 3 * (sum(r) - t + 1) - n, and
``cockayne_lorimer`` is the classical Ramsey number of matchings,
max(r) + 1 + sum(r - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from onlineramsey.game import GameConfig, GameError
from onlineramsey.painter import survival_horizon

DECIMAL_DIGITS = 50


def _log2_exact(x: int) -> int | None:
    if x == 0:
        return 0  # convention log2(0) = 0
    if x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def theorem1_coefficient(t: int) -> Fraction | Decimal:
    """Multiplier of n in the upper bound.

    Exact whenever t - 2 is 0 or a power of two; otherwise a Decimal correct
    to within one unit in the last of 50 significant digits.
    """
    if t < 2:
        raise GameError(f"upper bound needs t >= 2, got t={t}")
    lg = _log2_exact(t - 2)
    if lg is not None:
        return Fraction(2 * t - 1 + (t - 3) * lg, t + 1)
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS + 10
        log2 = Decimal(t - 2).ln() / Decimal(2).ln()
        coef = (2 * t - 1 + (t - 3) * log2) / (t + 1)
        ctx.prec = DECIMAL_DIGITS
        return +coef


def theorem1_upper(t: int, n: int) -> Fraction | Decimal:
    coef = theorem1_coefficient(t)
    if isinstance(coef, Fraction):
        return coef * n
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        return coef * n


def theorem3_lower(targets: Sequence[int], n: int) -> int:
    """3 * (sum(r) - t + 1) - n; meaningful for t >= 2 and n >= R(r)."""
    return 3 * (sum(targets) - len(targets) + 1) - n


def cockayne_lorimer(targets: Sequence[int]) -> int:
    if not targets:
        raise GameError("need at least one target")
    if any(r < 1 for r in targets):
        raise GameError(f"targets must be positive, got {tuple(targets)}")
    return max(targets) + 1 + sum(r - 1 for r in targets)


def lower_bound_applies(config: GameConfig) -> bool:
    return config.t >= 2 and config.n >= cockayne_lorimer(config.targets)


@dataclass(frozen=True)
class KnownValue:
    config: GameConfig
    values: frozenset[int]  # one value, or the two still-possible values

    def matches(self, k: int) -> bool:
        return k in self.values


def known_value(config: GameConfig) -> KnownValue | None:
    """Exact values for r copies of rK_2 at n = R_t(rK_2), t in {2, 3, 4}."""
    r = config.targets[0]
    if any(x != r for x in config.targets) or config.n != cockayne_lorimer(config.targets):
        return None
    if config.t == 2:
        vals = {3 * r - 2}
    elif config.t == 3:
        vals = {5 * r - 4}
    elif config.t == 4:
        vals = {7 * r - 6, 7 * r - 5}
    else:
        return None
    return KnownValue(config, frozenset(vals))


def known_values(r_max: int = 5) -> list[KnownValue]:
    out = []
    for t in (2, 3, 4):
        for r in range(1, r_max + 1):
            targets = (r,) * t
            out.append(known_value(GameConfig(t, targets, cockayne_lorimer(targets))))
    return out


@dataclass(frozen=True)
class BoundReport:
    config: GameConfig
    lower: int
    upper: Fraction | Decimal | None
    ramsey_n: int
    survival_T: int
    known: KnownValue | None

    @property
    def upper_ceil(self) -> int | None:
        return None if self.upper is None else math.ceil(self.upper)

    def to_json(self) -> dict:
        out = {
            "t": self.config.t,
            "r": list(self.config.targets),
            "n": self.config.n,
            "ramsey_n": self.ramsey_n,
            "lower": self.lower,
            "upper": None if self.upper is None else str(self.upper),
            "upper_ceil": self.upper_ceil,
            "survival_T": self.survival_T,
            "applies": lower_bound_applies(self.config),
        }
        if self.known is not None:
            out["known_value"] = sorted(self.known.values)
        return out


def bound_report(config: GameConfig) -> BoundReport:
    return BoundReport(
        config=config,
        lower=theorem3_lower(config.targets, config.n),
        upper=theorem1_upper(config.t, config.n) if config.t >= 2 else None,
        ramsey_n=cockayne_lorimer(config.targets),
        survival_T=survival_horizon(config),
        known=known_value(config),
    )
