"""Why 2^s signings is the right count.

Two copies of a path joined through s heavy vertices u_i, plus pendant
vertices on u_1. The second eigenvector is +1 on one copy and -1 on the
other, so every u and w vanishes. Only the u's are shallow: at most 2^s
signings keep two strong domains, and the next one needs three.
"""
import numpy as np

from nodalpert.families import shallow_deep_blocks, shallow_deep_family
from nodalpert.nodal import sign_pattern, urschel_profile
from nodalpert.spectral import eig_sym
from nodalpert.urschel import classify_vector

for s, ell, k in [(1, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2)]:
    inst = shallow_deep_family(s, k, ell)
    spec = eig_sym(inst.M)
    f2 = spec.vector(2)
    cls = classify_vector(inst.g, f2, inst.zero_tol)
    prof = urschel_profile(inst.g, sign_pattern(f2, inst.zero_tol))
    print(f"s={s} ell={ell} k={k}: lambda_2={spec.value(2):.1e} shallow={cls.shallow} deep={cls.deep}")
    print(f"  UN_(2^s)={prof.un_i(2 ** s)}  UN_(2^s+1)={prof.un_i(2 ** s + 1)}  sorted={[int(x) for x in prof.snd_sorted[:12]]}")

# large mu separates the u block from the rest at rate 1/mu
print("\nmu       top dev    bottom dev")
for mu in (1e2, 1e3, 1e4):
    inst = shallow_deep_family(2, 2, 2, mu)
    a, d = shallow_deep_blocks(inst)
    vals = eig_sym(inst.M).values
    top = np.abs(vals[-2:] - mu - np.sort(np.linalg.eigvalsh(a))).max()
    bot = np.abs(vals[:-2] - np.sort(np.linalg.eigvalsh(d))).max()
    print(f"{mu:7.0e}  {top:.3e}  {bot:.3e}")
