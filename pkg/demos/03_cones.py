"""Embedding a graph into the powerset poset as a graph of upper cones."""
from rxnskel import Digraph, embed_as_cone_graph, main_skeleton_graph, is_isomorphism
from rxnskel.io import format_mask

names = "abc"

rows = [{3, 4}, {0, 1, 2, 3}, range(8)] * 3
g = Digraph.from_out_sets(rows[:8])

emb = embed_as_cone_graph(g)
print("base points:", [format_mask(z, names) for z in emb.base_points])
for v, point in enumerate(emb.vertex_map):
    print(f"vertex {v + 1} -> {format_mask(point, names):8} successor base {format_mask(emb.function[point], names)}")

m = emb.main_skeleton()
print("isomorphic to its main skeleton graph:",
      is_isomorphism(g, main_skeleton_graph(m), emb.vertex_map))

# a 6-vertex graph cannot live on a powerset
print(embed_as_cone_graph(Digraph(6, (0,) * 6)))
