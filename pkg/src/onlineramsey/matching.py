"""Exact maximum matchings on small simple graphs.

Boards have at most a few dozen edges, so the matching number is computed by
branching on the lowest-indexed edge (take it, or drop it) over edge bitmasks,
memoised per (n, mask). This is exact on general graphs, odd cycles included.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from onlineramsey.game import Edge, GameError, geometry, normalize_edge


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GameError(f"bad edge ({u},{v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        return cls(n, frozenset(normalize_edge(u, v) for u, v in edges))

    @property
    def mask(self) -> int:
        index = geometry(self.n).index
        m = 0
        for e in self.edges:
            m |= 1 << index[e]
        return m


@lru_cache(maxsize=1 << 20)
def matching_number(n: int, mask: int) -> int:
    """Matching number of the subgraph of K_n given by an edge bitmask."""
    if mask == 0:
        return 0
    low = mask & -mask
    i = low.bit_length() - 1
    rest = mask ^ low
    with_edge = 1 + matching_number(n, mask & ~geometry(n).touching[i])
    if with_edge == n // 2:
        return with_edge
    return max(with_edge, matching_number(n, rest))


def has_matching_mask(n: int, mask: int, r: int) -> bool:
    """True iff the mask contains r pairwise disjoint edges; stops early."""
    if r <= 0:
        return True
    if mask == 0:
        return False
    touching = geometry(n).touching
    stack = [(mask, r)]
    while stack:
        m, need = stack.pop()
        if need == 0:
            return True
        if m == 0 or m.bit_count() < need:
            continue
        low = m & -m
        i = low.bit_length() - 1
        stack.append((m ^ low, need))
        stack.append((m & ~touching[i], need - 1))
    return False


def max_matching_size(g: SimpleGraph) -> int:
    return matching_number(g.n, g.mask)


def has_matching(g: SimpleGraph, r: int) -> bool:
    return has_matching_mask(g.n, g.mask, r)
