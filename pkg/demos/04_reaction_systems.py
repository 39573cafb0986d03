"""Dynamics of a small reaction system and an equivalence-preserving swap."""
from rxnskel import (equivalent, is_transition_graph, result, swap_states,
                     transition_graph, weak_components, zero_context_graph)
from rxnskel.io import format_mask, format_rs, parse_rs
from rxnskel.reaction_systems import res_companions

rs = parse_rs("""
background 1,2,3,4
a1: {1} ! {3} -> {2}
a2: {2} ! {1} -> {1}
a3: {2} ! {3} -> {3}
a4: {3} ! {1,2} -> {1,2,4}
a5: {4} ! {3} -> {1,2}
a6: {1,3} ! {2,4} -> {2,3}
""")
lab = rs.labels
state = lambda *xs: sum(1 << (x - 1) for x in xs)  # noqa: E731

for x in (state(2, 3, 4), state(1, 2, 3), state(1, 2, 4)):
    print(f"res{format_mask(x, lab)} = {format_mask(result(rs, x), lab)}")

g0 = zero_context_graph(rs)
print("components of the 0-context graph:", len(weak_components(g0)))

part = res_companions(rs)
print("{1,3} and {1,3,4} companions:", part.same_class(state(1, 3), state(1, 3, 4)))

swapped = swap_states(rs, state(1, 3), state(1, 3, 4))
print("after the swap:", len(weak_components(zero_context_graph(swapped))), "component")
print(format_rs(swapped))

eq = equivalent(rs, swapped)
print("equivalent:", bool(eq), "-", eq.reason)

# a relabelled transition graph still betrays its reaction system
tg = transition_graph(swapped)
c = is_transition_graph(tg.relabel(list(reversed(range(16)))))
print("recovered a system with", len(c.rs.reactions), "reactions")
