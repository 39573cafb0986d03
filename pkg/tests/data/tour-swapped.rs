background 1,2,3,4
a1: {1} ! {2,3,4} -> {2}
a2: {2} ! {1,3,4} -> {1,3}
a3: {1,2} ! {3,4} -> {2,3}
a4: {3} ! {1,2,4} -> {1,2,4}
a5: {1,3} ! {2,4} -> {}
a6: {2,3} ! {1,4} -> {1}
a7: {1,2,3} ! {4} -> {}
a8: {4} ! {1,2,3} -> {1,2}
a9: {1,4} ! {2,3} -> {1,2}
a10: {2,4} ! {1,3} -> {1,2,3}
a11: {1,2,4} ! {3} -> {1,2,3}
a12: {3,4} ! {1,2} -> {1,2,4}
a13: {1,3,4} ! {2} -> {2,3}
a14: {2,3,4} ! {1} -> {1}
