# six-reaction system over four entities
background 1,2,3,4
a1: {1} ! {3} -> {2}
a2: {2} ! {1} -> {1}
a3: {2} ! {3} -> {3}
a4: {3} ! {1,2} -> {1,2,4}
a5: {4} ! {3} -> {1,2}
a6: {1,3} ! {2,4} -> {2,3}
