import networkx as nx
import pytest
from hypothesis import given, strategies as st

from rxnskel.core_sets import companion_partition, iter_bits
from rxnskel.errors import DomainError, ResourceError
from rxnskel.graphs import (Digraph, OneOutGraph, brute_force_isomorphic,
                            companions_agree_with_insets, in_set, in_set_partition,
                            is_isomorphism, out_family, weak_components)

from gen import digraphs


def to_nx(g):
    h = nx.DiGraph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges())
    return h


def test_construction_and_queries():
    g = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 2)])
    assert g.has_edge(0, 1) and not g.has_edge(1, 0)
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 2)]
    assert g.num_edges() == 3
    assert in_set(g, 2) == 0b110
    assert g.out_set(2) == 0b100
    assert Digraph.from_out_sets([{1}, {2}, {2}]) == g


def test_construction_rejects_bad_input():
    with pytest.raises(DomainError):
        Digraph.from_edges(2, [(0, 2)])
    with pytest.raises(DomainError):
        Digraph(2, (0,))
    with pytest.raises(DomainError):
        Digraph(2, (0b100, 0))
    with pytest.raises(DomainError):
        OneOutGraph(2, (0, 5))
    with pytest.raises(DomainError):
        Digraph(2, (0, 0)).out_set(2)


def test_out_family_dedupes_rows():
    g = Digraph(4, (0b11, 0b11, 0b1000, 0))
    assert out_family(g).members == (0, 0b11, 0b1000)


def test_one_out_graph_edges():
    h = OneOutGraph(3, (1, 2, 2))
    assert h.edges() == [(0, 1), (1, 2), (2, 2)]
    assert h.to_digraph() == Digraph.from_edges(3, h.edges())


@given(digraphs(max_n=8))
def test_insets_give_companion_classes(g):
    # vertices share an in-set exactly when they lie in the same out-sets
    assert companions_agree_with_insets(g)
    part = companion_partition(out_family(g))
    preds = {v: frozenset(u for u, w in g.edges() if w == v) for v in range(g.num_vertices)}
    for x in range(g.num_vertices):
        for y in range(g.num_vertices):
            assert part.same_class(x, y) == (preds[x] == preds[y])
    assert [sorted(iter_bits(b)) for b in in_set_partition(g)] == \
        [sorted(iter_bits(b)) for b in part.classes]


@given(digraphs(max_n=9))
def test_weak_components_match_networkx(g):
    ours = sorted(sorted(iter_bits(c)) for c in weak_components(g))
    theirs = sorted(sorted(c) for c in nx.weakly_connected_components(to_nx(g)))
    assert ours == theirs


def test_weak_components_of_one_out_graph():
    h = OneOutGraph(5, (1, 0, 3, 3, 4))
    assert sorted(sorted(iter_bits(c)) for c in weak_components(h)) == [[0, 1], [2, 3], [4]]


@given(digraphs(max_n=7), st.data())
def test_relabel_is_an_isomorphism(g, data):
    perm = tuple(data.draw(st.permutations(list(range(g.num_vertices)))))
    h = g.relabel(perm)
    assert is_isomorphism(g, h, perm)
    assert nx.is_isomorphic(to_nx(g), to_nx(h))


def test_is_isomorphism_rejects_non_bijection():
    g = Digraph(2, (0b10, 0))
    assert not is_isomorphism(g, g, (0, 0))
    assert not is_isomorphism(g, Digraph(3, (0, 0, 0)), (0, 1))


@given(digraphs(max_n=6), digraphs(max_n=6))
def test_brute_force_agrees_with_networkx(a, b):
    found = brute_force_isomorphic(a, b)
    same = a.num_vertices == b.num_vertices and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (found is not None) == same
    if found is not None:
        assert is_isomorphism(a, b, found)


def test_brute_force_is_lexicographically_least():
    # a directed 3-cycle: every rotation is an isomorphism, identity is least
    g = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert brute_force_isomorphic(g, g) == (0, 1, 2)


def test_brute_force_cap():
    g = Digraph(9, (0,) * 9)
    with pytest.raises(ResourceError):
        brute_force_isomorphic(g, g)
    assert brute_force_isomorphic(g, g, max_vertices=9) == tuple(range(9))
