"""Set algebra over a finite universe ``[n] = {0, ..., n-1}``.

Subsets are plain Python ints used as bit masks: bit ``x`` is set iff element
``x`` is in the subset.  Families of subsets, their Venn regions (companion
classes), intersection closures and faithful correspondences live here.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from ._config import MAX_UNIVERSE
from .errors import DomainError

Mask = int


def mask_of(elements: Iterable[int]) -> Mask:
    m = 0
    for x in elements:
        if x < 0:
            raise DomainError(f"negative element {x}")
        m |= 1 << x
    return m


def iter_bits(m: Mask) -> Iterator[int]:
    """Yield the elements of ``m`` in ascending order."""
    s = bin(m)[:1:-1]
    i = s.find("1")
    while i >= 0:
        yield i
        i = s.find("1", i + 1)


def elements_of(m: Mask) -> list:
    return list(iter_bits(m))


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def popcount(m: Mask) -> int:
    return m.bit_count()


def is_subset(a: Mask, b: Mask) -> bool:
    return a & ~b == 0


def complement(m: Mask, n: int) -> Mask:
    return full_mask(n) & ~m


def format_mask(m: Mask, labels=None) -> str:
    if labels is None:
        return "{" + ",".join(str(x) for x in iter_bits(m)) + "}"
    return "{" + ",".join(str(labels[x]) for x in iter_bits(m)) + "}"


def _check_width(m: Mask, n: int) -> None:
    if m < 0 or m >> n:
        raise DomainError(f"mask {m:#x} has bits outside a universe of size {n}")


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets of ``[universe_size]``.

    Members are kept in canonical order (ascending mask value) whatever order
    they were given in, so every derived structure is deterministic.
    """

    universe_size: int
    members: tuple = ()

    def __post_init__(self):
        n = self.universe_size
        if not 0 <= n <= MAX_UNIVERSE:
            raise DomainError(f"universe size {n} outside 0..{MAX_UNIVERSE}")
        members = tuple(sorted(set(self.members)))
        for m in members:
            _check_width(m, n)
        object.__setattr__(self, "members", members)

    @classmethod
    def from_sets(cls, universe_size, sets):
        return cls(universe_size, tuple(mask_of(s) for s in sets))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, m):
        return m in self.members

    def index(self, m: Mask) -> int:
        return self.members.index(m)

    def union(self) -> Mask:
        u = 0
        for m in self.members:
            u |= m
        return u

    def as_sets(self) -> list:
        return [elements_of(m) for m in self.members]

    def is_subfamily(self, other: "SetFamily") -> bool:
        return set(self.members) <= set(other.members)


@dataclass(frozen=True)
class CompanionPartition:
    """Partition of the universe into companion classes (Venn regions).

    ``classes`` are ordered by their least element; ``class_of[x]`` is the
    index of the block holding ``x`` and ``neighborhoods[i]`` the subfamily
    of sets containing block ``i``.
    """

    universe_size: int
    classes: tuple
    class_of: tuple
    neighborhoods: tuple

    def block_of(self, x: int) -> Mask:
        return self.classes[self.class_of[x]]

    def sizes(self) -> list:
        return [popcount(b) for b in self.classes]

    def same_class(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]


def neighborhood(x: int, fam: SetFamily) -> SetFamily:
    """Members of ``fam`` containing ``x``."""
    if not 0 <= x < fam.universe_size:
        raise DomainError(f"element {x} outside universe of size {fam.universe_size}")
    bit = 1 << x
    return SetFamily(fam.universe_size, tuple(m for m in fam.members if m & bit))


def _membership_signatures(members, n):
    sig = [0] * n
    for i, m in enumerate(members):
        bit = 1 << i
        for x in iter_bits(m):
            sig[x] |= bit
    return sig


def companion_partition(fam: SetFamily) -> CompanionPartition:
    n = fam.universe_size
    sig = _membership_signatures(fam.members, n)
    block_index = {}
    blocks = []
    class_of = []
    for x in range(n):
        i = block_index.get(sig[x])
        if i is None:
            i = block_index[sig[x]] = len(blocks)
            blocks.append(0)
        blocks[i] |= 1 << x
        class_of.append(i)
    neighborhoods = [None] * len(blocks)
    for s, i in block_index.items():
        neighborhoods[i] = SetFamily(
            n, tuple(m for j, m in enumerate(fam.members) if s >> j & 1))
    return CompanionPartition(n, tuple(blocks), tuple(class_of), tuple(neighborhoods))


def intersection_closure(fam: SetFamily) -> SetFamily:
    """Smallest superfamily closed under non-empty pairwise intersection.

    The empty set is a member only if it already was one: disjointness is
    tracked by faithful correspondences directly, not through an explicit
    empty member.
    """
    closure = set(fam.members)
    frontier = list(fam.members)
    while frontier:
        fresh = []
        snapshot = list(closure)
        for a in frontier:
            for b in snapshot:
                c = a & b
                if c and c not in closure:
                    closure.add(c)
                    fresh.append(c)
        frontier = fresh
    return SetFamily(fam.universe_size, tuple(closure))


def region_size_signature(fam: SetFamily) -> tuple:
    """Canonical multiset of ``(fingerprint, block size)`` over companion blocks.

    The fingerprint of a block is the sorted tuple of sizes of the closure
    sets containing it.  Faithful correspondences between families over
    equally sized universes preserve this multiset.
    """
    closure = intersection_closure(fam)
    part = companion_partition(closure)
    sig = []
    for block, nb in zip(part.classes, part.neighborhoods):
        sig.append((tuple(sorted(popcount(m) for m in nb.members)), popcount(block)))
    return tuple(sorted(sig))


@dataclass(frozen=True)
class FaithfulCorrespondence:
    """Size- and intersection-preserving bijection between two closures.

    ``set_map[i]`` is the index in ``target_closure`` of the image of
    ``source_closure.members[i]``.  ``vertex_map`` (when universes have equal
    size) is a bijection of elements whose pointwise image of every source
    closure set is its ``set_map`` image.
    """

    source_closure: SetFamily
    target_closure: SetFamily
    set_map: tuple
    vertex_map: Optional[tuple] = None

    def image(self, m: Mask) -> Mask:
        return self.target_closure.members[self.set_map[self.source_closure.index(m)]]

    def as_dict(self) -> dict:
        tgt = self.target_closure.members
        return {m: tgt[j] for m, j in zip(self.source_closure.members, self.set_map)}

    def map_elements(self, m: Mask) -> Mask:
        if self.vertex_map is None:
            raise DomainError("correspondence carries no vertex map")
        out = 0
        for x in iter_bits(m):
            out |= 1 << self.vertex_map[x]
        return out

    def inverse(self) -> "FaithfulCorrespondence":
        inv_set = [0] * len(self.set_map)
        for i, j in enumerate(self.set_map):
            inv_set[j] = i
        inv_vertex = None
        if self.vertex_map is not None:
            inv = [0] * len(self.vertex_map)
            for x, y in enumerate(self.vertex_map):
                inv[y] = x
            inv_vertex = tuple(inv)
        return FaithfulCorrespondence(self.target_closure, self.source_closure,
                                      tuple(inv_set), inv_vertex)

    def violations(self) -> list:
        """Return the list of broken invariants (empty when valid)."""
        problems = []
        src, tgt = self.source_closure.members, self.target_closure.members
        if len(src) != len(tgt) or sorted(self.set_map) != list(range(len(tgt))):
            return ["set_map is not a bijection between the closures"]
        eta = self.as_dict()
        for x, y in eta.items():
            if popcount(x) != popcount(y):
                problems.append(f"size not preserved for {format_mask(x)}")
        for i, a in enumerate(src):
            for b in src[i:]:
                meet = a & b
                expected = 0 if meet == 0 and meet not in eta else eta.get(meet)
                if expected != eta[a] & eta[b]:
                    problems.append(
                        f"intersection of {format_mask(a)} and {format_mask(b)} not preserved")
        if self.vertex_map is not None:
            n = self.source_closure.universe_size
            if sorted(self.vertex_map) != list(range(self.target_closure.universe_size)) \
                    or len(self.vertex_map) != n:
                problems.append("vertex_map is not a bijection")
            else:
                for a in src:
                    if self.map_elements(a) != eta[a]:
                        problems.append(f"vertex_map disagrees with set_map on {format_mask(a)}")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()


def iter_closure_matchings(sources: SetFamily, pool: Iterable[Mask],
                           pair_ok: Optional[Callable[[Mask, Mask], bool]] = None,
                           ) -> Iterator[dict]:
    """Yield injective maps from an intersection-closed family into ``pool``.

    Each yielded dict maps every member of ``sources`` to a pool member of
    the same size such that ``map(A & B) == map(A) & map(B)``.  ``pool`` must
    be closed under non-empty intersection; disjoint sources must map to
    disjoint targets.  Sources are assigned in decreasing size
    (ties in canonical order); candidates are tried in ascending mask order,
    so the enumeration order is deterministic.  Assigning a set forces the
    images of its intersections with already-assigned sets, which are
    propagated immediately.  ``pair_ok`` can veto individual pairs.
    """
    src_set = set(sources.members)
    order = sorted(src_set, key=lambda m: (-popcount(m), m))
    pool = sorted(set(pool))
    pool_set = set(pool)
    by_size = defaultdict(list)
    for m in pool:
        by_size[popcount(m)].append(m)

    fwd = {}
    bwd = {}

    def force(a, b, trail):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            if not a or not b:
                if a != b:
                    return False
                if a not in src_set:
                    continue
            if a in fwd:
                if fwd[a] != b:
                    return False
                continue
            if (b in bwd or a not in src_set or b not in pool_set
                    or popcount(a) != popcount(b)
                    or (pair_ok is not None and not pair_ok(a, b))):
                return False
            assigned = list(fwd.items())
            fwd[a] = b
            bwd[b] = a
            trail.append(a)
            for a2, b2 in assigned:
                queue.append((a & a2, b & b2))
        return True

    def undo(trail):
        for a in trail:
            del bwd[fwd.pop(a)]

    def next_open(i):
        while i < len(order) and order[i] in fwd:
            i += 1
        return i

    i = next_open(0)
    if i == len(order):
        yield {}
        return
    stack = [[i, iter(by_size[popcount(order[i])]), None]]
    while stack:
        frame = stack[-1]
        if frame[2] is not None:
            undo(frame[2])
            frame[2] = None
        descended = False
        for b in frame[1]:
            if b in bwd:
                continue
            trail = []
            if not force(order[frame[0]], b, trail):
                undo(trail)
                continue
            j = next_open(frame[0] + 1)
            if j == len(order):
                yield dict(fwd)
                undo(trail)
                continue
            frame[2] = trail
            stack.append([j, iter(by_size[popcount(order[j])]), None])
            descended = True
            break
        if not descended:
            stack.pop()


def lift_to_elements(src: SetFamily, tgt: SetFamily, eta: dict) -> tuple:
    """Element bijection inducing ``eta``; blocks are paired in ascending order."""
    sp = companion_partition(src)
    tp = companion_partition(tgt)
    target_block = {frozenset(nb.members): blk
                    for blk, nb in zip(tp.classes, tp.neighborhoods)}
    vmap = [None] * src.universe_size
    for blk, nb in zip(sp.classes, sp.neighborhoods):
        image = target_block.get(frozenset(eta[m] for m in nb.members), 0)
        xs, ys = elements_of(blk), elements_of(image)
        if len(xs) != len(ys):
            raise AssertionError("companion block sizes differ under a faithful correspondence")
        for x, y in zip(xs, ys):
            vmap[x] = y
    return tuple(vmap)


def _correspondence(src, tgt, eta, with_vertices):
    set_map = tuple(tgt.index(eta[m]) for m in src.members)
    vmap = lift_to_elements(src, tgt, eta) if with_vertices else None
    return FaithfulCorrespondence(src, tgt, set_map, vmap)


def iter_faithful_correspondences(a: SetFamily, b: SetFamily,
                                  pair_ok=None) -> Iterator[FaithfulCorrespondence]:
    """All faithful correspondences between ``a`` and ``b`` in canonical order."""
    ca, cb = intersection_closure(a), intersection_closure(b)
    if len(ca) != len(cb):
        return
    if sorted(map(popcount, ca)) != sorted(map(popcount, cb)):
        return
    same_universe = a.universe_size == b.universe_size
    if same_universe and region_size_signature(ca) != region_size_signature(cb):
        return
    for eta in iter_closure_matchings(ca, cb.members, pair_ok):
        yield _correspondence(ca, cb, eta, same_universe)


def find_faithful_correspondence(a: SetFamily, b: SetFamily) -> Optional[FaithfulCorrespondence]:
    return next(iter_faithful_correspondences(a, b), None)
