"""Strong and weak nodal domains of a small sign pattern.

Walks through the five-vertex fixture: one zero vertex, two positive and two
negative ones. Zeros split strong domains but are shared by weak domains.
"""
import numpy as np

from nodalpert.families import nodal_fixture
from nodalpert.nodal import pattern_str, snd, urschel_profile, wnd

g, p = nodal_fixture()
print("edges:", g.edges)
print("pattern:", pattern_str(p))

# vertex 0 is zero, so +{1,2} and -{3,4} only talk through it
print("strong nodal domains:", snd(g, p))
print("weak nodal domains:  ", wnd(g, p))

# flipping the zero either way gives the two signings
prof = urschel_profile(g, p)
for value, sig in sorted(prof.witnesses.items()):
    print(f"  signing {pattern_str(sig)} -> {value} strong domains")
print("Urschel number:", prof.un, " max over signings:", prof.un_max)

# the same counts on a random Laplacian eigenvector
rng = np.random.default_rng(0)
f = rng.normal(size=g.n)
print("\nrandom vector", np.round(f, 3), "snd", snd(g, np.sign(f).astype(int)))
