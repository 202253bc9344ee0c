"""Level 4, weights 3 and 4: how far the standard relations get, and what
the order-3 symmetry of the six-punctured sphere adds.

Run: python3 demos/01_level_four.py
"""

from mpvrel.bounds import dg_bound
from mpvrel.linalg import rank
from mpvrel.octahedral import conj_coefficients, derive_conj, octahedral_rank_gain
from mpvrel.relations import NINE_BASIS, assemble_standard_matrix, standard_bound
from mpvrel.words import composition_str

# The upper bound from mixed Tate motives is 2^w at level 4.
print("D(w, 4):", [dg_bound(w, 4) for w in range(1, 7)])

# Lie-level matrix of shuffle, stuffle and distribution rows at weight 3.
M = assemble_standard_matrix(3, 4)
r = rank(M)
print(f"weight 3 Lie matrix: {M.shape[0]} x {M.shape[1]}, rank {r}, kernel {M.shape[1] - r}")

# Value level: convergent words modulo the standard relations.
for w in (3, 4):
    print(f"standard relations give d({w},4) <= {standard_bound(w, 4)}, target {2**w}")

# The octahedral identity closes the gap at weight 3 with a single relation.
rel = derive_conj()
a, b = conj_coefficients(rel)
print(f"\n{a} * {composition_str(NINE_BASIS[0], 4)} =")
for coeff, sym in zip(b, NINE_BASIS[1:]):
    print(f"    {coeff:+4d} * {composition_str(sym, 4)}")
gain, bound = octahedral_rank_gain(3)
print(f"rank gain {gain}, new bound d(3,4) <= {bound}")

# At weight 4, every coefficient of the identity together reaches 2^4.
gain, bound = octahedral_rank_gain(4, "all", mode="modular")
print(f"weight 4, all coefficients: +{gain}, d(4,4) <= {bound} (certified by a modular rank)")
