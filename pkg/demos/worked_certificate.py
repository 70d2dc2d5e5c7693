"""First-order perturbation of a zero eigenvalue with two vanishing vertices.

The four-vertex example has eigenvalue 0 at index 3 with eigenvector
(0, 0, 1, -1). Perturbing the diagonal pushes mass onto the zero vertices,
and the certificate records the resulting signing and its nodal count.
"""
import numpy as np

from nodalpert.families import worked_example
from nodalpert.nodal import pattern_str, sign_pattern, snd
from nodalpert.perturb_simple import certify_simple, first_order_correction, perturbation_image_basis
from nodalpert.spectral import eig_sym, shifted_pseudoinverse

inst = worked_example()
m = inst.M.m
print("labels:", inst.labels)
print(m)
spec = eig_sym(inst.M)
print("eigenvalues:", np.round(spec.values, 8))
f3 = spec.vector(3)
print("f3:", np.round(f3, 8), " snd:", snd(inst.g, sign_pattern(f3)))

print("\npseudoinverse of M at 0:")
print(np.round(shifted_pseudoinverse(m, 0.0, spec=spec), 8))
f1 = first_order_correction(m, 0.0, np.diag([0, 0, 0, 1.0]), [0, 0, 1, -1])
print("correction for diag(0,0,0,1):", f1)

ctx = perturbation_image_basis(inst.g, inst.M, 3)
print("\nshallow:", ctx.classification.shallow, " deep:", ctx.classification.deep, " free:", ctx.free)
for c in certify_simple(inst.g, inst.M, 3):
    last = c.chain[-1]
    print(f"target {c.target} -> signing {pattern_str(c.signing)}  snd={c.snd_value}  "
          f"eps={last.eps:.3g}  holds={c.holds}")
