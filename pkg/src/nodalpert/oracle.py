"""Brute-force checks of the nodal-domain bounds on whole spectra.

For each eigenvector f of eigenvalue group (k, m):

* WND(f) <= k
* SND(f) <= k + m - 1
* SND(f) <= k when f has no zeros
* WND(f) <= UN(f) <= SND(f)
* for simple eigenvalues: UN_2(f) <= k, UN_(2^s)(f) <= k with s the number
  of shallow Urschel vertices, and UN_max(f) <= k when no Urschel vertex is deep.
"""

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .graph import Graph
from .nodal import MAX_ZEROS, EnumerationBudgetError, sign_pattern, snd, urschel_profile, wnd
from .spectral import (ZERO_TOL, GeneralizedLaplacian, default_group_tol, eig_sym, group_eigenvalues,
                       group_of)
from .urschel import classify_vector

DEFAULT_SEED = 20240611


@dataclass
class VectorRecord:
    k: int
    group_k: int
    m: int
    eigenvalue: float
    pattern: np.ndarray
    snd: int
    wnd: int
    classification: object
    profile: object = None
    checks: dict = field(default_factory=dict)
    skipped: bool = False

    @property
    def failures(self):
        return [name for name, ok in self.checks.items() if ok is False]


@dataclass
class VerificationReport:
    records: list
    group_tol: float
    seed: int = None

    @property
    def failures(self):
        return [(r.k, name) for r in self.records for name in r.failures]

    @property
    def passed(self):
        return not self.failures


def check_vector(g, f, k, m, zero_tol=ZERO_TOL, max_zeros=MAX_ZEROS, eigenvalue=np.nan, index=None):
    """Evaluate every applicable bound for one eigenvector of group (k, m)."""
    p = sign_pattern(f, zero_tol)
    cls = classify_vector(g, f, zero_tol)
    rec = VectorRecord(index or k, k, m, float(eigenvalue), p, snd(g, p), wnd(g, p), cls)
    c = rec.checks
    c["wnd<=k"] = rec.wnd <= k
    c["snd<=k+m-1"] = rec.snd <= k + m - 1
    nowhere_zero = not np.any(p == 0)
    if nowhere_zero:
        c["nowhere-zero snd<=k"] = rec.snd <= k
    try:
        prof = urschel_profile(g, p, max_zeros)
    except EnumerationBudgetError:
        rec.skipped = True
        return rec
    except ValueError:
        # vanishes on a whole component, UN is undefined
        rec.skipped = True
        return rec
    rec.profile = prof
    c["wnd<=un<=snd"] = rec.wnd <= prof.un <= rec.snd
    if m == 1 and not nowhere_zero:
        c["un_2<=k"] = prof.un_i(2) <= k
        s = len(cls.shallow)
        c["un_2^s<=k"] = prof.un_i(2 ** s) <= k
        if not cls.deep:
            c["un_max<=k"] = prof.un_max <= k
    return rec


def verify_instance(g, M, group_tol=None, zero_tol=ZERO_TOL, max_zeros=MAX_ZEROS, seed=None):
    m = M.m if isinstance(M, GeneralizedLaplacian) else np.asarray(M, dtype=float)
    spec = eig_sym(m)
    tol = default_group_tol(spec) if group_tol is None else group_tol
    groups = group_eigenvalues(spec, tol)
    records = []
    for idx in range(1, g.n + 1):
        grp = group_of(groups, idx)
        records.append(check_vector(g, spec.vector(idx), grp.k, grp.m, zero_tol, max_zeros,
                                    spec.value(idx), idx))
    return VerificationReport(records, tol, seed)


def random_instance(n, rng, p=0.4):
    """Connected G(n, p) with edge weights in [-2, -0.1] and diagonal in [-1, 3]."""
    while True:
        iu = np.triu_indices(n, 1)
        mask = rng.random(len(iu[0])) < p
        edges = list(zip(iu[0][mask].tolist(), iu[1][mask].tolist()))
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        if n == 1 or nx.is_connected(h):
            break
    g = Graph(n, tuple(edges))
    m = np.diag(rng.uniform(-1, 3, n))
    for u, v in edges:
        m[u, v] = m[v, u] = rng.uniform(-2, -0.1)
    return GeneralizedLaplacian(g, m)


def random_instances(count, seed=DEFAULT_SEED, n_min=2, n_max=10):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield random_instance(n, rng)


def certificate_sandwich(profile, certificates):
    """Every certified SND lies between UN(f) and k."""
    return all(profile.un <= c.snd_value <= c.k for c in certificates)
