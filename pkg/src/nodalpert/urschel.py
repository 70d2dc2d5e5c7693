"""Classification of vertices into non-Urschel, shallow and deep Urschel vertices.

A vertex is Urschel for a subspace E when every vector in E vanishes there.
Shallow Urschel vertices touch at least one non-Urschel vertex; deep ones
touch none.
"""

from dataclasses import dataclass

import numpy as np

from .spectral import RANK_TOL, ZERO_TOL


@dataclass(frozen=True)
class UrschelClassification:
    non_urschel: tuple
    shallow: tuple
    deep: tuple

    @property
    def urschel(self):
        return tuple(sorted(self.shallow + self.deep))

    def as_dict(self):
        return {"non_urschel": list(self.non_urschel), "shallow": list(self.shallow),
                "deep": list(self.deep)}


def orthonormalize(basis, rank_tol=RANK_TOL):
    """Gram-Schmidt with one re-orthogonalization pass; columns of the result.

    Raises ValueError when a vector is (numerically) in the span of the
    earlier ones.
    """
    vecs = [np.asarray(b, dtype=float) for b in basis]
    if not vecs:
        raise ValueError("basis is empty")
    out = []
    for i, v in enumerate(vecs):
        norm0 = np.linalg.norm(v)
        w = v.copy()
        for _ in range(2):
            for q in out:
                w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if norm0 == 0 or norm <= rank_tol * norm0:
            raise ValueError(f"basis vector {i} is linearly dependent on the others")
        out.append(w / norm)
    return np.column_stack(out)


def _split(g, urschel_mask):
    non = tuple(int(v) for v in np.flatnonzero(~urschel_mask))
    shallow, deep = [], []
    for v in np.flatnonzero(urschel_mask):
        if any(not urschel_mask[u] for u in g.adjacency[v]):
            shallow.append(int(v))
        else:
            deep.append(int(v))
    return UrschelClassification(non, tuple(shallow), tuple(deep))


def classify_subspace(g, basis, zero_tol=ZERO_TOL, rank_tol=RANK_TOL):
    """Classify vertices for the span of ``basis`` (a list of n-vectors).

    The test uses row norms of an orthonormal basis, which do not depend on
    the basis chosen for the subspace.
    """
    q = orthonormalize(basis, rank_tol)
    if q.shape[0] != g.n:
        raise ValueError(f"basis vectors have length {q.shape[0]} but graph has {g.n} vertices")
    rows = np.linalg.norm(q, axis=1)
    return _split(g, rows <= zero_tol * rows.max())


def classify_vector(g, f, zero_tol=ZERO_TOL):
    f = np.asarray(f, dtype=float)
    scale = np.abs(f).max()
    if scale == 0:
        raise ValueError("cannot classify the zero vector")
    return _split(g, np.abs(f) <= zero_tol * scale)
