"""Generators of the double-shuffle Lie algebra at level 4, degrees 1 to 4.

Builds v1 and v2 by hand, brackets them with the Ihara bracket, and checks
where the results land inside the solution spaces of the linearized
relations (with the octahedral rows included).

Run: python3 demos/02_lie_generators.py
"""

from mpvrel.lie import V1, V2, dmrd_kernel, generator_tower_check, ihara_bracket, lyndon_coordinates
from mpvrel.words import word_str


def show(name, u, limit=6):
    coords = lyndon_coordinates(u)
    items = sorted(coords.items())[:limit]
    body = ", ".join(f"{c}*P({word_str(w)})" for w, c in items)
    more = "" if len(coords) <= limit else f", ... ({len(coords)} Lyndon terms)"
    print(f"{name} = {body}{more}")


show("v1", V1)
show("v2", V2)
show("{v1,v2}", ihara_bracket(V1, V2, 4))

for w in (1, 2, 3, 4):
    print(f"degree {w}: kernel {len(dmrd_kernel(w, 4))}, with octahedral rows {len(dmrd_kernel(w, 4, True))}")

rep = generator_tower_check()
print()
for name, ok in rep["checks"].items():
    print(f"  [{'ok' if ok else 'FAIL'}] {name}")
