"""Canonical forms of partially edge-coloured complete graphs.

Two boards are equivalent when a vertex permutation together with a colour
permutation that preserves targets (r_pi(i) == r_i) maps one onto the other.
The canonical key is the lexicographically least edge-colour string over a
search tree of vertex orderings:

1. colours are ordered within each equal-target block by a vertex-invariant
   fingerprint (edge count, sorted degree sequence); only fingerprint ties are
   permuted;
2. vertices are split by per-colour degree and refined to an equitable
   partition (colour refinement);
3. the first non-singleton cell is individualised one vertex at a time and the
   search recurses; vertices of that cell which are twins (same colour to
   every third vertex) lead to identical leaves, so one per twin class is
   enough.

The result is a complete invariant, not a hash.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from onlineramsey.game import BoardState, Edge, GameConfig, GameError, geometry

MAX_N = 12


class Canonicalizer:
    """Computes canonical keys for boards with a fixed (n, targets)."""

    def __init__(self, n: int, targets: tuple[int, ...]) -> None:
        if n > MAX_N:
            raise GameError(f"canonical labelling supports n <= {MAX_N}, got n={n}")
        self.n = n
        self.t = len(targets)
        self.targets = tuple(targets)
        self.geom = geometry(n)
        self.mark = self.t + 1
        blocks: dict[int, list[int]] = {}
        for c, r in enumerate(targets, start=1):
            blocks.setdefault(r, []).append(c)
        self.blocks = [blocks[r] for r in sorted(blocks)]
        self._pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]

    # -- colour relabelling ------------------------------------------------

    def _relabelings(self, cells: bytes) -> list[list[int]]:
        n, t = self.n, self.t
        deg = [[0] * n for _ in range(t + 1)]
        count = [0] * (t + 1)
        for (u, v), c in zip(self.geom.edges, cells):
            if c and c <= t:
                deg[c][u] += 1
                deg[c][v] += 1
                count[c] += 1
        fp = {c: (count[c], tuple(sorted(deg[c]))) for c in range(1, t + 1)}

        # choices[k] = list of partial maps old colour -> new colour for block k
        per_block: list[list[list[tuple[int, int]]]] = []
        for block in self.blocks:
            order = sorted(block, key=lambda c: fp[c])
            groups = [list(g) for _, g in itertools.groupby(order, key=lambda c: fp[c])]
            options: list[list[tuple[int, int]]] = [[]]
            pos = 0
            for g in groups:
                labels = block[pos : pos + len(g)]
                pos += len(g)
                if fp[g[0]][0] == 0 or len(g) == 1:
                    perms = [tuple(g)]
                else:
                    perms = list(itertools.permutations(g))
                options = [opt + list(zip(p, labels)) for opt in options for p in perms]
            per_block.append(options)

        out = []
        for combo in itertools.product(*per_block):
            lab = [0] * (t + 2)
            lab[self.mark] = self.mark
            for part in combo:
                for old, new in part:
                    lab[old] = new
            out.append(lab)
        return out

    # -- vertex canonical form --------------------------------------------

    def key(self, cells: bytes, marked: int = -1) -> bytes:
        """Canonical key of a cell string; ``marked`` is an optional edge index
        treated as a distinguished colour no permutation may move."""
        if marked >= 0:
            tmp = bytearray(cells)
            tmp[marked] = self.mark
            cells = bytes(tmp)
        n = self.n
        best = None
        for lab in self._relabelings(cells):
            M = [[0] * n for _ in range(n)]
            for (u, v), c in zip(self.geom.edges, cells):
                if c:
                    M[u][v] = M[v][u] = lab[c]
            s = self._vertex_canon(M)
            if best is None or s < best:
                best = s
        return best

    def _vertex_canon(self, M: list[list[int]]) -> bytes:
        n = self.n
        width = self.mark + 1
        inv = []
        for v in range(n):
            row = [0] * width
            for c in M[v]:
                row[c] += 1
            row[0] = 0
            inv.append(tuple(row))
        order = sorted(range(n), key=inv.__getitem__)
        cells = [list(g) for _, g in itertools.groupby(order, key=inv.__getitem__)]
        best: list[bytes | None] = [None]
        self._search(M, cells, best)
        return best[0]

    def _refine(self, M: list[list[int]], cells: list[list[int]]) -> list[list[int]]:
        n = self.n
        while True:
            where = [0] * n
            for i, cell in enumerate(cells):
                for v in cell:
                    where[v] = i
            out: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                sig = {}
                for v in cell:
                    row = M[v]
                    sig[v] = tuple(sorted((row[w], where[w]) for w in range(n) if row[w]))
                first = sig[cell[0]]
                if all(sig[v] == first for v in cell):
                    out.append(cell)
                    continue
                split = True
                ordered = sorted(cell, key=sig.__getitem__)
                out.extend(list(g) for _, g in itertools.groupby(ordered, key=sig.__getitem__))
            if not split:
                return out
            cells = out

    def _search(self, M: list[list[int]], cells: list[list[int]], best: list) -> None:
        cells = self._refine(M, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), -1)
        if target < 0:
            order = [c[0] for c in cells]
            s = bytes(M[order[u]][order[v]] for u, v in self._pairs)
            if best[0] is None or s < best[0]:
                best[0] = s
            return
        cell = cells[target]
        reps: list[int] = []
        for v in cell:
            if not any(self._twins(M, v, w) for w in reps):
                reps.append(v)
        for v in reps:
            rest = [w for w in cell if w != v]
            self._search(M, cells[:target] + [[v], rest] + cells[target + 1 :], best)

    def _twins(self, M: list[list[int]], u: int, v: int) -> bool:
        ru, rv = M[u], M[v]
        for w in range(self.n):
            if w != u and w != v and ru[w] != rv[w]:
                return False
        return True

    # -- orbits ------------------------------------------------------------

    def edge_orbits(self, cells: bytes) -> list[list[int]]:
        """Uncoloured edge indices grouped by the automorphisms of the board."""
        groups: dict[bytes, list[int]] = {}
        for i, c in enumerate(cells):
            if not c:
                groups.setdefault(self.key(cells, i), []).append(i)
        return sorted(groups.values())


@lru_cache(maxsize=64)
def canonicalizer(n: int, targets: tuple[int, ...]) -> Canonicalizer:
    return Canonicalizer(n, targets)


def canonical_key(state: BoardState, config: GameConfig) -> bytes:
    return canonicalizer(config.n, config.targets).key(state.cells)


def canonical_edge_orbits(state: BoardState, config: GameConfig) -> list[list[Edge]]:
    edges = state.geom.edges
    orbits = canonicalizer(config.n, config.targets).edge_orbits(state.cells)
    return [[edges[i] for i in orbit] for orbit in orbits]
