"""Skeletons ``(family, representatives, f)`` and the graphs they define.

A skeleton over ``[N]`` assigns every vertex ``x`` a representative ``f(x)``;
the representative indexes one set of the family, which becomes the out-set
of ``x``.  Two skeletons are companions when a vertex bijection extends to a
faithful correspondence of their families that commutes with the
representative maps; companion skeletons define isomorphic graphs and every
isomorphism arises this way.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Optional

from .core_sets import (FaithfulCorrespondence, SetFamily, companion_partition,
                        elements_of, format_mask, intersection_closure,
                        iter_faithful_correspondences, popcount,
                        region_size_signature)
from .errors import DomainError, PreconditionError
from .graphs import Digraph, OneOutGraph, is_isomorphism, out_family


@dataclass(frozen=True)
class Skeleton:
    """``representatives[i]`` is the representative of ``family.members[i]``;
    ``f[x]`` is the representative assigned to vertex ``x``."""

    universe_size: int
    family: SetFamily
    representatives: tuple
    f: tuple

    def __post_init__(self):
        n = self.universe_size
        reps = tuple(self.representatives)
        f = tuple(self.f)
        object.__setattr__(self, "representatives", reps)
        object.__setattr__(self, "f", f)
        if self.family.universe_size != n:
            raise DomainError("family universe differs from skeleton universe")
        if len(reps) != len(self.family):
            raise DomainError("need exactly one representative per family member")
        if len(reps) > n:
            raise DomainError("family has more members than there are vertices")
        if len(set(reps)) != len(reps):
            raise DomainError("representatives must be distinct")
        if any(not 0 <= z < n for z in reps):
            raise DomainError("representative outside the vertex set")
        if len(f) != n:
            raise DomainError(f"f must be defined on all {n} vertices")
        if set(f) != set(reps):
            raise DomainError("f must map onto the representatives")

    @classmethod
    def from_sets(cls, universe_size, sets_by_rep, f):
        """Build from ``{rep: iterable of vertices}`` and a sequence ``f``."""
        masks = {}
        for z, s in sets_by_rep.items():
            m = 0
            for x in s:
                m |= 1 << x
            masks[z] = m
        if len(set(masks.values())) != len(masks):
            raise DomainError("two representatives index the same set")
        family = SetFamily(universe_size, tuple(masks.values()))
        rep_of = {m: z for z, m in masks.items()}
        return cls(universe_size, family, tuple(rep_of[m] for m in family.members), tuple(f))

    def set_of(self, z: int) -> int:
        return self.family.members[self.representatives.index(z)]

    def out_sets(self) -> tuple:
        by_rep = dict(zip(self.representatives, self.family.members))
        return tuple(by_rep[z] for z in self.f)

    def fiber_sizes(self) -> dict:
        """Number of vertices sent to each family member."""
        counts = Counter(self.f)
        return {m: counts[z] for z, m in zip(self.representatives, self.family.members)}


def graph_of_skeleton(s: Skeleton) -> Digraph:
    return Digraph(s.universe_size, s.out_sets())


def one_out_graph(s: Skeleton) -> OneOutGraph:
    return OneOutGraph(s.universe_size, s.f)


def skeleton_of_graph(g: Digraph) -> Skeleton:
    """Skeleton of ``g`` whose representatives are the least vertex with each out-set."""
    family = out_family(g)
    first = {}
    for v, r in enumerate(g.rows):
        first.setdefault(r, v)
    reps = tuple(first[m] for m in family.members)
    return Skeleton(g.num_vertices, family, reps, tuple(first[r] for r in g.rows))


def companion_edge_swap(s: Skeleton, x: int, y: int) -> Skeleton:
    n = s.universe_size
    if not (0 <= x < n and 0 <= y < n):
        raise DomainError(f"vertices {x}, {y} outside [{n}]")
    if not companion_partition(s.family).same_class(x, y):
        raise PreconditionError("companions", f"{x} and {y} are not companions")
    f = list(s.f)
    f[x], f[y] = f[y], f[x]
    return Skeleton(n, s.family, s.representatives, tuple(f))


def _cells(s: Skeleton) -> dict:
    """Map (companion block, out-set) to the vertices in that cell."""
    part = companion_partition(s.family)
    outs = s.out_sets()
    cells = defaultdict(list)
    for x in range(s.universe_size):
        cells[part.block_of(x), outs[x]].append(x)
    return cells


def _assemble_vertex_map(a: Skeleton, b: Skeleton, corr: FaithfulCorrespondence):
    """Cell-by-cell vertex bijection for a set-level correspondence, or None.

    Every cell (companion block C, out-set O) of ``a`` must have as many
    vertices as the cell (image of C, image of O) of ``b``.
    """
    eta = corr.as_dict()
    cells_b = _cells(b)
    vmap = [None] * a.universe_size
    matched = 0
    for (block, out), xs in _cells(a).items():
        ys = cells_b.get((corr.map_elements(block), eta[out]), ())
        if len(ys) != len(xs):
            return None
        matched += len(ys)
        for x, y in zip(xs, ys):
            vmap[x] = y
    if matched != b.universe_size:
        return None
    return tuple(vmap)


def companion_witness_problems(a: Skeleton, b: Skeleton, w: FaithfulCorrespondence) -> list:
    """Reasons why ``w`` is not a companion witness for ``(a, b)``."""
    if a.universe_size != b.universe_size:
        return ["universe sizes differ"]
    if w.vertex_map is None:
        return ["witness has no vertex map"]
    if w.source_closure != intersection_closure(a.family):
        return ["source closure is not the closure of the first family"]
    if w.target_closure != intersection_closure(b.family):
        return ["target closure is not the closure of the second family"]
    problems = w.violations()
    if problems:
        return problems
    outs_a, outs_b = a.out_sets(), b.out_sets()
    for x in range(a.universe_size):
        if w.image(outs_a[x]) != outs_b[w.vertex_map[x]]:
            problems.append(f"image of out-set {format_mask(outs_a[x])} of vertex {x} "
                            f"is not the out-set of vertex {w.vertex_map[x]}")
    return problems


def iter_companion_witnesses(a: Skeleton, b: Skeleton):
    if a.universe_size != b.universe_size:
        return
    fib_a, fib_b = a.fiber_sizes(), b.fiber_sizes()

    def pair_ok(x, y):
        in_a, in_b = x in fib_a, y in fib_b
        return in_a == in_b and (not in_a or fib_a[x] == fib_b[y])

    for corr in iter_faithful_correspondences(a.family, b.family, pair_ok):
        vmap = _assemble_vertex_map(a, b, corr)
        if vmap is not None:
            yield FaithfulCorrespondence(corr.source_closure, corr.target_closure,
                                         corr.set_map, vmap)


def are_companions(a: Skeleton, b: Skeleton) -> Optional[FaithfulCorrespondence]:
    """First companion witness in canonical search order, or None."""
    return next(iter_companion_witnesses(a, b), None)


def build_isomorphism(a: Skeleton, b: Skeleton, w: FaithfulCorrespondence) -> tuple:
    """Isomorphism ``G_a -> G_b`` assembled from the witness cell by cell.

    Vertices of ``a`` are cut into cells ``[x]_f & C`` (same representative,
    same companion block C); each is paired in ascending order with
    ``[eta(x)]_g & eta(C)``.
    """
    problems = companion_witness_problems(a, b, w)
    if problems:
        raise PreconditionError("companion witness", "; ".join(problems[:3]))
    eta = w.vertex_map
    part = companion_partition(a.family)
    n = a.universe_size
    fibers_b = defaultdict(int)
    for y, z in enumerate(b.f):
        fibers_b[z] |= 1 << y
    fibers_a = defaultdict(int)
    for x, z in enumerate(a.f):
        fibers_a[z] |= 1 << x
    psi = [None] * n
    for x in range(n):
        if psi[x] is not None:
            continue
        block = part.block_of(x)
        cell = fibers_a[a.f[x]] & block
        target = fibers_b[b.f[eta[x]]] & w.map_elements(block)
        xs, ys = elements_of(cell), elements_of(target)
        if len(xs) != len(ys):
            raise AssertionError("cell sizes differ for a valid witness")
        for u, v in zip(xs, ys):
            psi[u] = v
    psi = tuple(psi)
    if not is_isomorphism(graph_of_skeleton(a), graph_of_skeleton(b), psi):
        raise AssertionError("constructed map is not an isomorphism")
    return psi


def compose_witnesses(w1: FaithfulCorrespondence, w2: FaithfulCorrespondence) -> FaithfulCorrespondence:
    """Witness for ``(a, c)`` from witnesses for ``(a, b)`` and ``(b, c)``."""
    if w1.target_closure != w2.source_closure:
        raise DomainError("witnesses do not chain")
    set_map = tuple(w2.set_map[j] for j in w1.set_map)
    vmap = None
    if w1.vertex_map is not None and w2.vertex_map is not None:
        vmap = tuple(w2.vertex_map[y] for y in w1.vertex_map)
    return FaithfulCorrespondence(w1.source_closure, w2.target_closure, set_map, vmap)


def _invariants(g: Digraph):
    fam = out_family(g)
    part = companion_partition(fam)
    return (g.num_vertices,
            sorted(popcount(r) for r in g.rows),
            sorted(part.sizes()),
            region_size_signature(fam))


def certify_isomorphic(g1: Digraph, g2: Digraph) -> Optional[tuple]:
    """Isomorphism ``g1 -> g2`` certified by companion skeletons, or None."""
    if _invariants(g1) != _invariants(g2):
        return None
    s1, s2 = skeleton_of_graph(g1), skeleton_of_graph(g2)
    w = are_companions(s1, s2)
    if w is None:
        return None
    psi = build_isomorphism(s1, s2, w)
    if not is_isomorphism(g1, g2, psi):
        raise AssertionError("certificate produced an invalid isomorphism")
    return psi


def cell_counts_match(a: Skeleton, b: Skeleton, w: FaithfulCorrespondence) -> bool:
    """|[x]_f & C| == |[eta x]_g & eta(C)| for every vertex x and every block C."""
    eta = w.vertex_map
    part = companion_partition(a.family)
    part_b = companion_partition(b.family)
    for x in range(a.universe_size):
        fib_a = sum(1 << u for u in range(a.universe_size) if a.f[u] == a.f[x])
        fib_b = sum(1 << v for v in range(b.universe_size) if b.f[v] == b.f[eta[x]])
        for block in part.classes:
            image = w.map_elements(block)
            if image not in part_b.classes:
                return False
            if popcount(fib_a & block) != popcount(fib_b & image):
                return False
    return True


__all__ = [
    "Skeleton", "graph_of_skeleton", "one_out_graph", "skeleton_of_graph",
    "companion_edge_swap", "are_companions", "iter_companion_witnesses",
    "companion_witness_problems", "build_isomorphism", "compose_witnesses",
    "certify_isomorphic", "cell_counts_match",
]
