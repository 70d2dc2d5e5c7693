"""Sign patterns, nodal-domain counts and Urschel numbers.

A sign pattern is an int8 vector over {+1, 0, -1}. A signing is a pattern
without zeros. The Urschel profile of a pattern lists the strong nodal-domain
counts of all its signings in ascending order.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import UnionFind, connected_components
from .spectral import ZERO_TOL

POS, ZERO, NEG = 1, 0, -1
MAX_ZEROS = 22
_BATCH = 1 << 15


class EnumerationBudgetError(ValueError):
    def __init__(self, ell, max_zeros):
        super().__init__(
            f"pattern has {ell} zeros; enumerating 2^{ell} signings exceeds max_zeros={max_zeros}")
        self.ell = ell
        self.max_zeros = max_zeros


def sign_pattern(f, zero_tol=ZERO_TOL):
    """Signs of ``f`` with entries at most ``zero_tol * max|f|`` treated as zero."""
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    f = np.asarray(f, dtype=float)
    scale = np.abs(f).max() if f.size else 0.0
    if scale == 0:
        raise ValueError("nodal invariants are undefined for the zero vector")
    p = np.sign(f).astype(np.int8)
    p[np.abs(f) <= zero_tol * scale] = ZERO
    return p


def as_pattern(p):
    p = np.asarray(p)
    if p.dtype.kind in "US" or p.dtype == object:
        lookup = {"+": POS, "0": ZERO, "-": NEG}
        p = np.array([lookup[str(x)] for x in p])
    p = np.asarray(p).astype(np.int8)
    if not np.isin(p, (POS, ZERO, NEG)).all():
        raise ValueError("sign pattern entries must be +1, 0 or -1")
    return p


def pattern_str(p):
    return "".join("+" if x > 0 else "-" if x < 0 else "0" for x in as_pattern(p))


def _check(g, p):
    p = as_pattern(p)
    if len(p) != g.n:
        raise ValueError(f"pattern has length {len(p)} but graph has {g.n} vertices")
    return p


def snd(g, p):
    """Number of strong nodal domains."""
    p = _check(g, p)
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if p[u] != ZERO and p[u] == p[v]:
            uf.union(u, v)
    return len({uf.find(v) for v in range(g.n) if p[v] != ZERO})


def wnd(g, p):
    """Number of weak nodal domains."""
    p = _check(g, p)
    total = 0
    for s in (POS, NEG):
        keep = np.flatnonzero((p == s) | (p == ZERO))
        for part in connected_components(g, keep):
            if np.any(p[part] == s):
                total += 1
    return total


def is_signing_of(signing, p):
    signing, p = as_pattern(signing), as_pattern(p)
    return bool(np.all(signing != ZERO) and np.all((p == ZERO) | (p == signing)))


def _snd_batch(g, signs):
    """SND for each row of a (B, n) array of signings.

    Labels are propagated edge by edge until stable; each vertex ends with
    the smallest index in its component.
    """
    b, n = signs.shape
    labels = np.tile(np.arange(n, dtype=np.int32), (b, 1))
    edges = g.edge_array
    keep = signs[:, edges[:, 0]] == signs[:, edges[:, 1]]
    changed = True
    while changed:
        changed = False
        for e, (u, v) in enumerate(edges):
            k = keep[:, e]
            lu, lv = labels[:, u], labels[:, v]
            lo = np.minimum(lu, lv)
            upd = k & (lu != lv)
            if upd.any():
                changed = True
                labels[upd, u] = lo[upd]
                labels[upd, v] = lo[upd]
    return (labels == np.arange(n)).sum(axis=1)


@dataclass(frozen=True, eq=False)
class UrschelProfile:
    """Sorted SND values over all signings of a pattern, plus one witness per value."""

    ell: int
    zeros: tuple
    snd_sorted: np.ndarray
    witnesses: dict = field(default_factory=dict)

    @property
    def un(self):
        return int(self.snd_sorted[0])

    @property
    def un_max(self):
        return int(self.snd_sorted[-1])

    def un_i(self, i):
        """The i-th smallest SND over signings, 1-based."""
        return int(self.snd_sorted[i - 1])


def signing_from_index(p, zeros, index):
    """Signing number ``index`` in enumeration order (bit j set means zero j is +)."""
    s = as_pattern(p).copy()
    for j, v in enumerate(zeros):
        s[v] = POS if (index >> j) & 1 else NEG
    return s


def urschel_profile(g, p, max_zeros=MAX_ZEROS):
    """Enumerate all 2^ell signings of ``p`` and sort their SND values."""
    p = _check(g, p)
    for part in connected_components(g, range(g.n)):
        if np.all(p[part] == ZERO):
            raise ValueError(f"pattern vanishes on the whole component containing vertex {part[0]}")
    zeros = tuple(int(v) for v in np.flatnonzero(p == ZERO))
    ell = len(zeros)
    if ell > max_zeros:
        raise EnumerationBudgetError(ell, max_zeros)
    total = 1 << ell
    values = np.empty(total, dtype=np.int32)
    zpos = np.array(zeros, dtype=np.int64)
    shifts = np.arange(ell, dtype=np.int64)
    for start in range(0, total, _BATCH):
        idx = np.arange(start, min(total, start + _BATCH), dtype=np.int64)
        signs = np.tile(p, (len(idx), 1))
        if ell:
            bits = (idx[:, None] >> shifts) & 1
            signs[:, zpos] = np.where(bits == 1, POS, NEG)
        values[start:start + len(idx)] = _snd_batch(g, signs)
    uniq, first = np.unique(values, return_index=True)
    witnesses = {int(u): signing_from_index(p, zeros, int(i)) for u, i in zip(uniq, first)}
    return UrschelProfile(ell, zeros, np.sort(values), witnesses)
