"""The powerset poset ``(2^S, ⊆)`` with ``S = [n]``, its upper cones and main skeletons.

Points are ints ``0 .. 2^n - 1`` read as subsets of ``S``.  A set of points
(an upper cone, say) is again a mask, now over the ``2^n`` points.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from ._config import table_cap, transition_cap
from .core_sets import (FaithfulCorrespondence, SetFamily, lift_to_elements,
                        companion_partition, intersection_closure,
                        iter_closure_matchings, popcount)
from .errors import DomainError, ResourceError
from .graphs import Digraph, out_family
from .skeletons import Skeleton


@lru_cache(maxsize=None)
def _bit_patterns(n):
    """``patterns[i]`` has bit ``p`` set iff point ``p`` contains element ``i``."""
    size = 1 << n
    patterns = []
    for i in range(n):
        half = 1 << i
        period = half << 1
        unit = ((1 << half) - 1) << half
        reps = size // period
        patterns.append(unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1)))
    return tuple(patterns)


@dataclass(frozen=True)
class PowersetPoset:
    ground_size: int
    cap: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.ground_size < 0:
            raise DomainError("ground size must be non-negative")
        cap = table_cap() if self.cap is None else self.cap
        if self.ground_size > cap:
            raise ResourceError(f"powerset of a {self.ground_size}-element set exceeds cap n <= {cap}")

    @property
    def num_points(self) -> int:
        return 1 << self.ground_size

    @property
    def top(self) -> int:
        return self.num_points - 1

    def points(self):
        return range(self.num_points)

    def check_point(self, x):
        if not 0 <= x < self.num_points:
            raise DomainError(f"point {x} is not a subset of a {self.ground_size}-element set")


def up_cone(p: PowersetPoset, x: int) -> int:
    """All supersets of ``x``, as a mask over the points of ``p``."""
    p.check_point(x)
    m = (1 << p.num_points) - 1
    for i, pattern in enumerate(_bit_patterns(p.ground_size)):
        if x >> i & 1:
            m &= pattern
    return m


def cone_family(p: PowersetPoset, r) -> SetFamily:
    r = list(r)
    if len(set(r)) != len(r):
        raise DomainError("cone base points must be distinct")
    return SetFamily(p.num_points, tuple(up_cone(p, x) for x in r))


def cone_companions(p: PowersetPoset, r):
    return companion_partition(cone_family(p, r))


def cone_base(cone: int) -> int:
    """Least point of a cone, i.e. its base."""
    return (cone & -cone).bit_length() - 1


@dataclass(frozen=True)
class MainSkeleton:
    """A function on the points; the out-set of ``x`` is ``Up(f[x])``."""

    poset: PowersetPoset
    f: tuple

    def __post_init__(self):
        f = tuple(self.f)
        if len(f) != self.poset.num_points:
            raise DomainError(f"function must have {self.poset.num_points} values")
        for v in f:
            self.poset.check_point(v)
        object.__setattr__(self, "f", f)

    @property
    def range(self) -> tuple:
        return tuple(sorted(set(self.f)))

    def skeleton(self) -> Skeleton:
        """``(Up[R], R, f)`` with each cone represented by its base."""
        family = cone_family(self.poset, self.range)
        reps = tuple(cone_base(c) for c in family.members)
        return Skeleton(self.poset.num_points, family, reps, self.f)


def main_skeleton_graph(m: MainSkeleton) -> Digraph:
    cap = transition_cap()
    if m.poset.ground_size > cap:
        raise ResourceError(f"materializing a graph on 2^{m.poset.ground_size} points exceeds cap n <= {cap}")
    cones = {z: up_cone(m.poset, z) for z in m.range}
    return Digraph(m.poset.num_points, tuple(cones[z] for z in m.f))


@dataclass(frozen=True)
class ConeEmbedding:
    """Result of :func:`embed_as_cone_graph`.

    ``vertex_map[v]`` is the point assigned to vertex ``v``; ``function`` is
    the main-skeleton function on points, so ``vertex_map`` is an
    isomorphism from the input graph onto ``main_skeleton_graph``.
    """

    ground_size: int
    base_points: tuple
    vertex_map: tuple
    function: tuple
    correspondence: FaithfulCorrespondence

    def main_skeleton(self) -> MainSkeleton:
        return MainSkeleton(PowersetPoset(self.ground_size), self.function)


def embed_as_cone_graph(g: Digraph) -> Optional[ConeEmbedding]:
    """Find base points R with a faithful correspondence ``O(g) <-> Up[R]``.

    Closure sets of the out-family are assigned, largest first, to cones of
    equal size (a set of size ``2^k`` needs a base of ``n - k`` elements);
    intersections are forced onto the cone of the union of the bases.
    """
    size = g.num_vertices
    if size == 0 or size & (size - 1):
        return None
    n = size.bit_length() - 1
    poset = PowersetPoset(n)
    closure = intersection_closure(out_family(g))
    if any(m == 0 or m & (m - 1) for m in map(popcount, closure)):
        return None
    pool = [up_cone(poset, z) for z in poset.points()]
    eta = next(iter_closure_matchings(closure, pool), None)
    if eta is None:
        return None
    fam = out_family(g)
    base_of = {m: cone_base(eta[m]) for m in fam.members}
    image = SetFamily(size, tuple(eta.values()))
    vmap = lift_to_elements(closure, image, eta)
    function = [0] * size
    for v, row in enumerate(g.rows):
        function[vmap[v]] = base_of[row]
    corr = FaithfulCorrespondence(closure, image,
                                  tuple(image.index(eta[m]) for m in closure.members), vmap)
    return ConeEmbedding(n, tuple(sorted(set(base_of.values()))), vmap, tuple(function), corr)
