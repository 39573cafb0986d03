"""Skeletons, companion edge swaps and certified isomorphism."""
import random

from rxnskel import (Digraph, are_companions, build_isomorphism, certify_isomorphic,
                     companion_edge_swap, companion_partition, graph_of_skeleton,
                     skeleton_of_graph)
from rxnskel.core_sets import iter_bits

rng = random.Random(3)

g = Digraph.from_out_sets([{3, 4}, {0, 1, 2, 3}, range(8), {3, 4}, {0, 1, 2, 3}, range(8),
                           {3, 4}, {0, 1, 2, 3}])
s = skeleton_of_graph(g)
print("representatives:", s.representatives)
print("f:", s.f)

# vertices in one region can trade their out-sets without changing the graph's shape
block = companion_partition(s.family).classes[0]
x, y = list(iter_bits(block))[:2]
t = companion_edge_swap(s, x, y)
w = are_companions(s, t)
psi = build_isomorphism(s, t, w)
print(f"swap {x}<->{y}: isomorphism", psi)

# certify a random relabelling
perm = list(range(8))
rng.shuffle(perm)
h = g.relabel(perm)
print("certificate:", certify_isomorphic(g, h))
print("matches the skeleton graph:", graph_of_skeleton(s) == g)
