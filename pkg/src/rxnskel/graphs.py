"""Dense directed graphs on ``[N]`` with bit-row adjacency."""
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from ._config import DEFAULT_ORACLE_CAP
from .core_sets import (SetFamily, companion_partition, iter_bits, mask_of,
                        popcount)
from .errors import DomainError, ResourceError


@dataclass(frozen=True)
class Digraph:
    """Directed graph; ``rows[v]`` is the out-set of ``v`` as a mask."""

    num_vertices: int
    rows: tuple

    def __post_init__(self):
        n = self.num_vertices
        rows = tuple(self.rows)
        if len(rows) != n:
            raise DomainError(f"expected {n} adjacency rows, got {len(rows)}")
        for v, r in enumerate(rows):
            if r < 0 or r >> n:
                raise DomainError(f"out-set of vertex {v} leaves the vertex set")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) outside vertex set [{n}]")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_out_sets(cls, out_sets):
        out_sets = list(out_sets)
        return cls(len(out_sets), tuple(mask_of(s) for s in out_sets))

    def out_set(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self):
        for u, r in enumerate(self.rows):
            for v in iter_bits(r):
                yield u, v

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows)

    def in_sets(self) -> tuple:
        cols = [0] * self.num_vertices
        for u, r in enumerate(self.rows):
            bit = 1 << u
            for v in iter_bits(r):
                cols[v] |= bit
        return tuple(cols)

    def relabel(self, perm) -> "Digraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.num_vertices
        for u, r in enumerate(self.rows):
            img = 0
            for v in iter_bits(r):
                img |= 1 << perm[v]
            rows[perm[u]] = img
        return Digraph(self.num_vertices, tuple(rows))

    def is_subgraph_of(self, other: "Digraph") -> bool:
        return self.num_vertices == other.num_vertices and all(
            a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def _check_vertex(self, v):
        if not 0 <= v < self.num_vertices:
            raise DomainError(f"vertex {v} outside [{self.num_vertices}]")


@dataclass(frozen=True)
class OneOutGraph:
    num_vertices: int
    successor: tuple

    def __post_init__(self):
        succ = tuple(self.successor)
        if len(succ) != self.num_vertices:
            raise DomainError("successor map must be total")
        for v, w in enumerate(succ):
            if not 0 <= w < self.num_vertices:
                raise DomainError(f"successor of {v} is {w}, outside [{self.num_vertices}]")
        object.__setattr__(self, "successor", succ)

    def to_digraph(self) -> Digraph:
        return Digraph(self.num_vertices, tuple(1 << w for w in self.successor))

    def edges(self):
        return list(enumerate(self.successor))


def in_set(g: Digraph, v: int) -> int:
    g._check_vertex(v)
    bit = 1 << v
    m = 0
    for u, r in enumerate(g.rows):
        if r & bit:
            m |= 1 << u
    return m


def out_family(g: Digraph) -> SetFamily:
    return SetFamily(g.num_vertices, g.rows)


def in_set_partition(g: Digraph) -> list:
    """Blocks of vertices with equal in-sets, ordered by least vertex."""
    groups = {}
    for v, col in enumerate(g.in_sets()):
        groups[col] = groups.get(col, 0) | 1 << v
    return sorted(groups.values(), key=lambda b: b & -b)


def companions_agree_with_insets(g: Digraph) -> bool:
    part = companion_partition(out_family(g))
    return list(part.classes) == in_set_partition(g)


def weak_components(g) -> list:
    """Weakly connected components as vertex masks, ordered by least vertex."""
    if isinstance(g, OneOutGraph):
        g = g.to_digraph()
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    comps = {}
    for v in range(g.num_vertices):
        r = find(v)
        comps[r] = comps.get(r, 0) | 1 << v
    return [comps[r] for r in sorted(comps)]


def is_isomorphism(a: Digraph, b: Digraph, perm) -> bool:
    """True iff ``perm`` maps the edges of ``a`` exactly onto those of ``b``."""
    n = a.num_vertices
    if n != b.num_vertices or sorted(perm) != list(range(n)):
        return False
    return a.relabel(perm).rows == b.rows


def brute_force_isomorphic(a: Digraph, b: Digraph,
                           max_vertices: int = DEFAULT_ORACLE_CAP) -> Optional[tuple]:
    """Lexicographically least isomorphism ``a -> b`` by plain backtracking.

    Only vertices agreeing on (out-degree, in-degree, loop) are paired, and
    every new pair is checked against all earlier pairs in both directions.
    """
    n = a.num_vertices
    if n != b.num_vertices:
        return None
    if n > max_vertices:
        raise ResourceError(f"brute-force isomorphism capped at {max_vertices} vertices, got {n}")

    def profile(g):
        ins = g.in_sets()
        return [(popcount(g.rows[v]), popcount(ins[v]), g.has_edge(v, v)) for v in range(n)]

    pa, pb = profile(a), profile(b)
    if Counter(pa) != Counter(pb):
        return None
    perm = [-1] * n
    used = [False] * n

    def extend(u):
        if u == n:
            return True
        for w in range(n):
            if used[w] or pa[u] != pb[w]:
                continue
            ok = True
            for x in range(u):
                y = perm[x]
                if a.has_edge(u, x) != b.has_edge(w, y) or a.has_edge(x, u) != b.has_edge(y, w):
                    ok = False
                    break
            if not ok:
                continue
            perm[u], used[w] = w, True
            if extend(u + 1):
                return True
            perm[u], used[w] = -1, False
        return False

    return tuple(perm) if extend(0) else None
