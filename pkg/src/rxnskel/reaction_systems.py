"""Reaction systems over a background set ``S = [n]`` and their dynamics.

States are masks over ``S``; the state space ``2^S`` is the powerset poset
of :mod:`rxnskel.lattice`, so graphs on states are graphs on ``2^n`` points.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from ._config import table_cap
from .core_sets import (FaithfulCorrespondence, SetFamily, companion_partition,
                        format_mask, full_mask)
from .errors import DomainError, PreconditionError, ResourceError, SynthesisError
from .graphs import Digraph, OneOutGraph, is_isomorphism, out_family
from .lattice import (MainSkeleton, PowersetPoset, cone_companions,
                      embed_as_cone_graph, main_skeleton_graph)
from .skeletons import are_companions, build_isomorphism

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reaction:
    reactants: int
    inhibitors: int
    products: int

    def __post_init__(self):
        if self.reactants == 0:
            raise DomainError("reactant set must be non-empty")
        if self.inhibitors == 0:
            raise DomainError("inhibitor set must be non-empty")
        if min(self.reactants, self.inhibitors, self.products) < 0:
            raise DomainError("masks must be non-negative")

    def width(self) -> int:
        return max(self.reactants, self.inhibitors, self.products).bit_length()


@dataclass(frozen=True)
class ReactionSystem:
    """Background size ``n`` and reactions; duplicate reactions are dropped.

    ``labels`` optionally names the background elements for I/O.
    """

    background_size: int
    reactions: tuple = ()
    labels: Optional[tuple] = None

    def __post_init__(self):
        n = self.background_size
        if n < 1:
            raise DomainError("background set must be non-empty")
        reactions = tuple(dict.fromkeys(self.reactions))
        for a in reactions:
            if a.width() > n:
                raise DomainError(f"reaction {a} mentions elements outside a background of size {n}")
        object.__setattr__(self, "reactions", reactions)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n or len(set(labels)) != n:
                raise DomainError("labels must name each background element exactly once")
            object.__setattr__(self, "labels", labels)
        for msg in lint(self):
            log.warning(msg)

    @property
    def top(self) -> int:
        return full_mask(self.background_size)

    def check_state(self, x: int):
        if x < 0 or x >> self.background_size:
            raise DomainError(f"state {x:#x} is not a subset of the background set")


def lint(rs: ReactionSystem) -> list:
    """Reactions that can never fire (reactants meet inhibitors)."""
    return [f"reaction {i} is never enabled: reactants and inhibitors overlap"
            for i, a in enumerate(rs.reactions) if a.reactants & a.inhibitors]


def enabled(a: Reaction, x: int, width: Optional[int] = None) -> bool:
    if width is not None and (x < 0 or x >> width or a.width() > width):
        raise DomainError("reaction and state widths differ")
    return a.reactants & x == a.reactants and not a.inhibitors & x


def result(rs: ReactionSystem, x: int) -> int:
    rs.check_state(x)
    out = 0
    for a in rs.reactions:
        if a.reactants & x == a.reactants and not a.inhibitors & x:
            out |= a.products
    return out


@lru_cache(maxsize=64)
def res_table(rs: ReactionSystem) -> tuple:
    """``res`` on every state, indexed by state."""
    n = rs.background_size
    cap = table_cap()
    if n > cap:
        raise ResourceError(f"result table over 2^{n} states exceeds cap n <= {cap}")
    states = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(states)
    for a in rs.reactions:
        on = ((states & a.reactants) == a.reactants) & ((states & a.inhibitors) == 0)
        out[on] |= a.products
    return tuple(int(v) for v in out)


@dataclass(frozen=True)
class ResultFamily:
    table: tuple
    family: SetFamily


def result_family(rs: ReactionSystem) -> ResultFamily:
    table = res_table(rs)
    return ResultFamily(table, SetFamily(rs.background_size, tuple(set(table))))


def main_skeleton(rs: ReactionSystem) -> MainSkeleton:
    return MainSkeleton(PowersetPoset(rs.background_size), res_table(rs))


def zero_context_graph(rs: ReactionSystem) -> OneOutGraph:
    table = res_table(rs)
    return OneOutGraph(len(table), table)


def transition_graph(rs: ReactionSystem) -> Digraph:
    return main_skeleton_graph(main_skeleton(rs))


def validate_state_sequence(rs: ReactionSystem, seq) -> bool:
    seq = list(seq)
    if not seq:
        raise DomainError("state sequence must be non-empty")
    for w in seq:
        rs.check_state(w)
    return all(result(rs, w) & ~nxt == 0 for w, nxt in zip(seq, seq[1:]))


def rs_from_one_out_graph(g: OneOutGraph, labels=None) -> ReactionSystem:
    """Reaction system whose 0-context graph is ``g``.

    One reaction per state ``X`` other than the empty and full state:
    reactants ``X``, inhibitors the complement of ``X``, products the
    successor of ``X``.  Such a reaction is enabled in ``X`` alone.
    """
    size = g.num_vertices
    if size < 2 or size & (size - 1):
        raise DomainError(f"vertex count {size} is not 2^n with n >= 1")
    n = size.bit_length() - 1
    top = size - 1
    if g.successor[0] != 0:
        raise SynthesisError("empty state", f"vertex {format_mask(0)} must map to the empty state")
    if g.successor[top] != 0:
        raise SynthesisError("full state",
                             f"vertex {format_mask(top)} must map to the empty state, "
                             f"not {format_mask(g.successor[top])}")
    reactions = tuple(Reaction(x, top ^ x, g.successor[x]) for x in range(1, top))
    return ReactionSystem(n, reactions, labels)


def res_companions(rs: ReactionSystem):
    """Companion partition of the states w.r.t. the cones based at RES."""
    return cone_companions(PowersetPoset(rs.background_size), result_family(rs).family.members)


def swap_states(rs: ReactionSystem, x: int, y: int) -> ReactionSystem:
    """Exchange the 0-context successors of two companion states."""
    rs.check_state(x)
    rs.check_state(y)
    for s in (x, y):
        if s in (0, rs.top):
            raise PreconditionError("non-extremal", f"cannot swap the successor of {format_mask(s, rs.labels)}")
    if not res_companions(rs).same_class(x, y):
        raise PreconditionError("companions",
                                f"{format_mask(x, rs.labels)} and {format_mask(y, rs.labels)} are not companions w.r.t. RES")
    table = list(res_table(rs))
    table[x], table[y] = table[y], table[x]
    return rs_from_one_out_graph(OneOutGraph(len(table), table), rs.labels)


@dataclass(frozen=True)
class Equivalence:
    """Outcome of :func:`equivalent`; truthy iff the systems are equivalent."""

    equivalent: bool
    reason: str
    witness: Optional[FaithfulCorrespondence] = None
    skeletons: Optional[tuple] = None

    def __bool__(self):
        return self.equivalent

    def isomorphism(self) -> tuple:
        """State bijection between the transition graphs (requires a witness)."""
        if self.witness is None:
            raise DomainError("no witness: the systems are not equivalent")
        return build_isomorphism(*self.skeletons, self.witness)


def equivalent(a: ReactionSystem, b: ReactionSystem) -> Equivalence:
    """Decide isomorphism of transition graphs from the main skeletons of ``res``.

    The transition graphs themselves are never built.
    """
    if a.background_size != b.background_size:
        return Equivalence(False, "background sizes differ")
    sa, sb = main_skeleton(a).skeleton(), main_skeleton(b).skeleton()
    w = are_companions(sa, sb)
    if w is None:
        return Equivalence(False, "0-context graphs are not companions", None, (sa, sb))
    return Equivalence(True, "0-context graphs are companions", w, (sa, sb))


@dataclass(frozen=True)
class Characterization:
    """``vertex_map`` is an isomorphism from the input onto ``transition_graph(rs)``."""

    rs: ReactionSystem
    vertex_map: tuple
    bottom: int
    top: int


def extremal_vertices(g: Digraph):
    """A pair ``(v_bottom, v_top)`` that can play the empty and full state, or None.

    ``v_bottom`` has a loop and lies only in the full out-set; ``v_top`` lies
    in every out-set and points at ``v_bottom``.  Distinct pairs are preferred.
    """
    full = full_mask(g.num_vertices)
    fam = out_family(g)
    inner = full
    others = 0
    for m in fam.members:
        inner &= m
        if m != full:
            others |= m
    bottoms = [v for v in range(g.num_vertices) if not others >> v & 1 and g.has_edge(v, v)]
    tops = [v for v in range(g.num_vertices) if inner >> v & 1]
    for distinct in (True, False):
        for vb in bottoms:
            for vt in tops:
                if (vb != vt) == distinct and g.has_edge(vt, vb):
                    return vb, vt
    return None


def is_transition_graph(g: Digraph) -> Optional[Characterization]:
    """Reaction system whose transition graph is isomorphic to ``g``, or None."""
    size = g.num_vertices
    if size < 2 or size & (size - 1):
        return None
    emb = embed_as_cone_graph(g)
    if emb is None:
        return None
    ends = extremal_vertices(g)
    if ends is None:
        return None
    vb, vt = ends
    blocks = companion_partition(emb.correspondence.source_closure).class_of
    phi = list(emb.vertex_map)
    top = size - 1
    pins = [(vb, 0)] if vb == vt else [(vb, 0), (vt, top)]
    for v, point in pins:
        holder = phi.index(point)
        if blocks[holder] != blocks[v]:
            raise AssertionError("pinned vertex and point holder lie in different companion blocks")
        phi[v], phi[holder] = phi[holder], phi[v]
    function = [0] * size
    for v in range(size):
        function[phi[v]] = emb.function[emb.vertex_map[v]]
    if function[0] != 0 or function[top] != 0:
        raise AssertionError("pinned extremal states do not map to the empty state")
    rs = rs_from_one_out_graph(OneOutGraph(size, function))
    phi = tuple(phi)
    if not is_isomorphism(g, transition_graph(rs), phi):
        raise AssertionError("synthesized reaction system does not reproduce the graph")
    return Characterization(rs, phi, vb, vt)

