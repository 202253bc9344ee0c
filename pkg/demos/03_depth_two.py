"""Depth two, weight two: the wedge bracket map and its kernel.

At a prime level p the kernel has dimension (p^2 - 1)/24, which lowers the
weight-2 bound from (p+1)^2/4 to (5p+7)(p+1)/24.  At level p^2 an explicit
element with h p^2 terms (h = (p-3)/2) lies in the kernel.

Run: python3 demos/03_depth_two.py
"""

import numpy as np

from mpvrel.bounds import dg_bound, improved_prime_bound, kernel_beta_formula
from mpvrel.lie import beta_kernel, level_p2_generators, verify_claim
from mpvrel.relations import standard_bound

print(" p  D(2,p)  ker  improved  standard-relations")
for p in (5, 7, 11, 13):
    k, _ = beta_kernel(p)
    assert k == kernel_beta_formula(p)
    std = standard_bound(2, p, mode="modular")
    print(f"{p:2d}  {dg_bound(2, p):6d}  {k:3d}  {improved_prime_bound(p):8d}  {std:6d}")

for p in (5, 7):
    gens = level_p2_generators(p)
    k, basis = beta_kernel(p * p)
    # size of the kernel vectors: how many wedge pairs each one touches
    support = np.array([len(b) for b in basis])
    print(f"level {p*p}: {len(gens)} generators, kernel {k}, support sizes min/median/max "
          f"{support.min()}/{int(np.median(support))}/{support.max()}")

for p in (5, 7, 11, 13):
    zero, terms = verify_claim(p)
    print(f"p={p}: six-sum element is {'zero' if zero else 'NONZERO'} under beta, {terms} terms")
