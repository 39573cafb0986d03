"""Worked examples with known answers: regions, the six-reaction system and its swap."""
from rxnskel import io
from rxnskel.core_sets import SetFamily, companion_partition, intersection_closure
from rxnskel.graphs import out_family, weak_components
from rxnskel.lattice import embed_as_cone_graph
from rxnskel.reaction_systems import (equivalent, res_companions, swap_states,
                                      transition_graph, zero_context_graph)

from gen import m1, tour_rs

# 0-context graph of the six-reaction system, state -> result
TOUR_G0 = {
    (): (), (1,): (2,), (2,): (1, 3), (3,): (1, 2, 4), (4,): (1, 2),
    (1, 2): (2, 3), (1, 3): (2, 3), (1, 4): (1, 2), (2, 3): (1,), (2, 4): (1, 2, 3),
    (3, 4): (1, 2, 4), (1, 2, 3): (), (1, 2, 4): (1, 2, 3), (1, 3, 4): (),
    (2, 3, 4): (1,), (1, 2, 3, 4): (),
}
SWAPPED_G0 = dict(TOUR_G0)
SWAPPED_G0[(1, 3)] = ()
SWAPPED_G0[(1, 3, 4)] = (2, 3)


def as_edges(table):
    return {(m1(*x), m1(*y)) for x, y in table.items()}


def test_fixture_graphs_have_sixteen_edges():
    assert len(as_edges(TOUR_G0)) == 16 and len(as_edges(SWAPPED_G0)) == 16


def test_zero_context_graph_edge_for_edge():
    g = zero_context_graph(tour_rs())
    assert set(g.edges()) == as_edges(TOUR_G0)


def test_swapped_zero_context_graph():
    rs = swap_states(tour_rs(), m1(1, 3), m1(1, 3, 4))
    g = zero_context_graph(rs)
    assert set(g.edges()) == as_edges(SWAPPED_G0)
    assert len(weak_components(g)) == 1
    # the only cycle left is the loop at the empty state
    succ = g.successor
    for x in range(1, 16):
        seen = set()
        while x not in seen and x != 0:
            seen.add(x)
            x = succ[x]
        assert x == 0


def test_res_family_matches_targets_of_edges():
    rs = tour_rs()
    targets = {y for _, y in zero_context_graph(rs).edges()}
    part = res_companions(rs)
    assert part.same_class(m1(1, 3), m1(1, 3, 4))
    assert targets == {m1(*y) for y in TOUR_G0.values()}


def test_swap_is_equivalence():
    a = tour_rs()
    b = swap_states(a, m1(1, 3), m1(1, 3, 4))
    eq = equivalent(a, b)
    assert eq
    psi = eq.isomorphism()
    ga, gb = transition_graph(a), transition_graph(b)
    assert all(gb.has_edge(psi[u], psi[v]) for u, v in ga.edges())
    assert ga.num_edges() == gb.num_edges()


def test_regions_example():
    fam = SetFamily(8, (m1(1, 2, 3, 4), m1(4, 5), m1(5)))
    assert companion_partition(fam).classes == (m1(1, 2, 3), m1(4), m1(5), m1(6, 7, 8))
    assert set(intersection_closure(fam).members) == set(fam.members) | {m1(4)}


def test_embedding_example(data_dir):
    g, _ = io.parse_graph((data_dir / "embedding.graph").read_text())
    fam = out_family(g)
    assert set(fam.members) == {0xFF, m1(1, 2, 3, 4), m1(4, 5)}
    assert companion_partition(fam).classes == (m1(1, 2, 3), m1(4), m1(5), m1(6, 7, 8))
    emb = embed_as_cone_graph(g)
    # bases {}, {a}, {b,c} with a, b, c the bits 0, 1, 2
    assert emb.base_points == (0, 0b001, 0b110)
    # vertex v goes to the state listed at position v (1-based vertices)
    assert emb.vertex_map == (0b001, 0b011, 0b101, 0b111, 0b110, 0b000, 0b010, 0b100)
    bc, a = 0b110, 0b001
    assert [emb.function[p] for p in emb.vertex_map] == [bc, a, 0, bc, a, 0, bc, a]
