"""Numerical sanity: two independent evaluators, and residuals of every
relation family at level 4.

Run: python3 demos/04_numerics.py
"""

import numpy as np

from mpvrel.numeric import eval_composition, eval_composition_lincomb, path_evaluator
from mpvrel.octahedral import derive_conj, extract_octahedral_rows
from mpvrel.relations import rows_dihedral, standard_rows
from mpvrel.words import composition_str, enumerate_compositions

comps = enumerate_compositions(3, 4, convergent_only=True)[:12]
path = np.array([eval_composition(c, 4).value for c in comps])
series = np.array([eval_composition(c, 4, method="series").value for c in comps])
for c, v in zip(comps[:4], path):
    print(f"{composition_str(c, 4):24s} {v.real:+.15f} {v.imag:+.15f}i")
print(f"path vs series, {len(comps)} symbols: max |diff| = {np.abs(path - series).max():.1e}")

ev = path_evaluator(4, 4)
by_family = {}
for w in (2, 3, 4):
    rows = standard_rows(w, 4) + rows_dihedral(w, 4)
    if w >= 3:
        rows += extract_octahedral_rows(w)
    for r in rows:
        res = abs(sum(complex(v) * ev.value(x) for x, v in r.entries.items()))
        by_family.setdefault(r.family, []).append(res)
for fam, res in sorted(by_family.items()):
    print(f"{fam:5s} {len(res):5d} rows, max residual {max(res):.1e}")

print(f"weight-3 octahedral relation: residual {abs(eval_composition_lincomb(derive_conj(), 4)):.1e}")
