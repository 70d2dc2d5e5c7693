"""Splitting a repeated eigenvalue with a diagonal perturbation.

For the ladder, eigenvalue 1 has a two-dimensional eigenspace. A diagonal
perturbation separates it, and the split basis is the pair of vectors that
live on one side each. Each split vector respects the shifted bound.
"""
import numpy as np

from nodalpert.families import ladder, star
from nodalpert.perturb_multi import first_order_split_errors, split_group, verify_multi_bounds
from nodalpert.spectral import eig_sym, group_of, group_eigenvalues

for inst, k in [(ladder(9), 3), (star(7), 2)]:
    spec = eig_sym(inst.M)
    grp = group_of(group_eigenvalues(spec), k)
    sb = split_group(inst.g, inst.M, grp, spec)
    print(f"{inst.name} {inst.params}: group k={grp.k} m={grp.m}")
    print("  splitting diagonal:", sb.d)
    print("  first-order values:", np.round(sb.lambda_prime, 6), " gap", round(sb.gap, 6))
    for j in range(sb.m):
        print("   ", np.round(sb.vector(j), 4))
    for e in verify_multi_bounds(inst.g, inst.M, sb).entries:
        print(f"  j={e.j}: UN={e.un} bound={e.bound} {e.status}")
    eps = 1e-3 / np.abs(sb.d).max()
    print(f"  eigenvector error at eps={eps:.1e}: {first_order_split_errors(inst.M, sb, eps):.2e}\n")
