"""Urschel profile of the star's repeated eigenvalue 1.

Every eigenvector for eigenvalue 1 vanishes at the centre. Choosing the
centre's sign merges it with one side, so the minimum over signings is one
plus the size of the smaller side.
"""
from itertools import product

import numpy as np

from nodalpert.families import star
from nodalpert.nodal import pattern_str, urschel_profile
from nodalpert.spectral import eig_sym, group_eigenvalues

n = 6
inst = star(n)
spec = eig_sym(inst.M)
print("spectrum:", np.round(spec.values, 10))
for grp in group_eigenvalues(spec):
    print(f"  group k={grp.k} m={grp.m} value={grp.value:.6f}")

print("\nleaf split     UN  1+min(m+,m-)")
for leaves in product((1, -1), repeat=n - 1):
    mp, mm = leaves.count(1), leaves.count(-1)
    if not mp or not mm or leaves[0] < 0:
        continue
    p = np.array((0,) + leaves, dtype=np.int8)
    print(f"  {pattern_str(p)}   {urschel_profile(inst.g, p).un}   {1 + min(mp, mm)}")
