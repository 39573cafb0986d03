"""Venn regions of a set family and its intersection closure."""
from rxnskel import SetFamily, companion_partition, intersection_closure
from rxnskel.io import default_labels, format_mask

labels = default_labels(8)
sets = [{0, 1, 2, 3}, {3, 4}, {4}]          # {1,2,3,4}, {4,5}, {5} in 1-based names
fam = SetFamily.from_sets(8, sets)

part = companion_partition(fam)
print("regions:")
for block in part.classes:
    print("  ", format_mask(block, labels))

# element 4 sits in two members, so their meet {4} joins the closure
closure = intersection_closure(fam)
print("closure:", [format_mask(m, labels) for m in closure])

# elements 6,7,8 are in no member at all; they form the outer region
print("6 and 8 companions?", part.same_class(5, 7))
