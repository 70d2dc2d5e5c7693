"""Dense symmetric matrices, generalized Laplacians and their spectra.

The eigensolver is a plain cyclic Jacobi iteration. It is slow compared with
LAPACK but fully deterministic and accurate to a few ulps on the small dense
problems this package deals with.
"""

from dataclasses import dataclass

import numpy as np

from .graph import Graph

SYM_TOL = 1e-10
RANK_TOL = 1e-9
ZERO_TOL = 1e-7
MAX_SWEEPS = 100


class NotGeneralizedLaplacian(ValueError):
    """Raised when a matrix is not symmetric or not supported on the graph."""

    def __init__(self, message, entry=None, value=None):
        super().__init__(message)
        self.entry = entry
        self.value = value


class ConvergenceError(ArithmeticError):
    def __init__(self, message, off_norm=None):
        super().__init__(message)
        self.off_norm = off_norm


def sym_matrix(a, sym_tol=SYM_TOL):
    """Validate symmetry and return a read-only symmetrized float copy."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    diff = np.abs(a - a.T)
    if a.size and diff.max() > sym_tol:
        i, j = np.unravel_index(np.argmax(diff), diff.shape)
        raise NotGeneralizedLaplacian(
            f"matrix not symmetric at ({i}, {j}): {a[i, j]!r} vs {a[j, i]!r}",
            entry=(int(i), int(j)), value=float(a[i, j]))
    a = 0.5 * (a + a.T)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GeneralizedLaplacian:
    """Symmetric matrix supported on ``g`` with negative entries on edges."""

    g: Graph
    m: np.ndarray

    def __post_init__(self):
        m = sym_matrix(self.m)
        if m.shape[0] != self.g.n:
            raise ValueError(f"matrix is {m.shape[0]}x{m.shape[0]} but graph has {self.g.n} vertices")
        n = self.g.n
        adj = np.zeros((n, n), dtype=bool)
        for u, v in self.g.edges:
            adj[u, v] = adj[v, u] = True
        off = ~adj & ~np.eye(n, dtype=bool)
        bad = np.argwhere(off & (m != 0))
        if len(bad):
            i, j = bad[0]
            raise NotGeneralizedLaplacian(
                f"nonzero entry {m[i, j]!r} at ({i}, {j}) which is not an edge",
                entry=(int(i), int(j)), value=float(m[i, j]))
        bad = np.argwhere(adj & (m >= 0))
        if len(bad):
            i, j = bad[0]
            raise NotGeneralizedLaplacian(
                f"edge ({i}, {j}) has non-negative entry {m[i, j]!r}",
                entry=(int(i), int(j)), value=float(m[i, j]))
        object.__setattr__(self, "m", m)

    @property
    def n(self):
        return self.g.n

    def min_edge_magnitude(self):
        if not self.g.edges:
            return 1.0
        e = self.g.edge_array
        return float(np.abs(self.m[e[:, 0], e[:, 1]]).min())


def classical_laplacian(g):
    """Degree matrix minus adjacency matrix."""
    m = np.zeros((g.n, g.n))
    for u, v in g.edges:
        m[u, v] = m[v, u] = -1.0
        m[u, u] += 1.0
        m[v, v] += 1.0
    return GeneralizedLaplacian(g, m)


def _as_array(m):
    return m.m if isinstance(m, GeneralizedLaplacian) else np.asarray(m, dtype=float)


def first_nonzero_positive(v, zero_tol=ZERO_TOL):
    """Flip ``v`` so its first entry above ``zero_tol * max|v|`` is positive."""
    v = np.asarray(v, dtype=float)
    scale = np.abs(v).max() if v.size else 0.0
    if scale == 0:
        return v.copy()
    idx = np.flatnonzero(np.abs(v) > zero_tol * scale)[0]
    return -v if v[idx] < 0 else v.copy()


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    @property
    def n(self):
        return len(self.values)

    def value(self, k):
        """Eigenvalue with 1-based index ``k``."""
        return float(self.values[k - 1])

    def vector(self, k):
        """Unit eigenvector with 1-based index ``k``."""
        return self.vectors[:, k - 1]

    def residuals(self, m):
        m = _as_array(m)
        return np.abs(m @ self.vectors - self.vectors * self.values).max(axis=0)

    def orthogonality_error(self):
        q = self.vectors
        return float(np.abs(q.T @ q - np.eye(self.n)).max()) if self.n else 0.0

    def spectral_radius(self):
        return float(np.abs(self.values).max()) if self.n else 0.0


def eig_sym(m, max_sweeps=MAX_SWEEPS):
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Converges when the off-diagonal Frobenius norm drops to 1e-12 of the full
    Frobenius norm. Eigenvectors are normalized so their first nonzero entry
    is positive.
    """
    a = np.array(_as_array(m), dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    total = np.linalg.norm(a)
    target = 1e-12 * total
    sweeps = 0
    iu = np.triu_indices(n, 1)

    def off_norm():
        return np.sqrt(2.0) * np.linalg.norm(a[iu])

    while off_norm() > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off_norm():.3e})",
                off_norm=off_norm())
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    v = v[:, order]
    for j in range(n):
        v[:, j] = first_nonzero_positive(v[:, j])
    vals.setflags(write=False)
    v.setflags(write=False)
    return Spectrum(vals, v, sweeps)


def default_group_tol(spec):
    return 1e-7 * (1.0 + spec.spectral_radius())


@dataclass(frozen=True)
class EigGroup:
    """Run of numerically equal eigenvalues starting at 1-based index ``k``."""

    k: int
    m: int
    value: float
    ambiguous: bool = False

    @property
    def indices(self):
        return list(range(self.k, self.k + self.m))


def group_eigenvalues(spec, group_tol=None):
    """Cluster consecutive eigenvalues whose gaps are at most ``group_tol``.

    A gap that lands in (group_tol, 2*group_tol] marks both neighbouring groups
    as ambiguous instead of failing.
    """
    if group_tol is None:
        group_tol = default_group_tol(spec)
    if group_tol <= 0:
        raise ValueError("group_tol must be positive")
    vals = np.asarray(spec.values)
    n = len(vals)
    if n == 0:
        return []
    gaps = np.diff(vals)
    starts = [0] + [i + 1 for i in range(n - 1) if gaps[i] > group_tol]
    ends = starts[1:] + [n]
    groups = []
    for s, e in zip(starts, ends):
        left = gaps[s - 1] if s > 0 else np.inf
        right = gaps[e - 1] if e < n else np.inf
        amb = bool(left <= 2 * group_tol or right <= 2 * group_tol)
        groups.append(EigGroup(s + 1, e - s, float(vals[s:e].mean()), amb))
    return groups


def group_of(groups, k):
    for grp in groups:
        if grp.k <= k < grp.k + grp.m:
            return grp
    raise IndexError(f"index {k} not in any group")


def shifted_pseudoinverse(m, lam, rank_tol=RANK_TOL, spec=None):
    """Moore-Penrose pseudoinverse of ``M - lam*I`` from its eigendecomposition.

    Eigenvalues of the shifted matrix with magnitude at most
    ``rank_tol * ||M||_inf`` count as kernel. ``spec`` may pass a precomputed
    spectrum of M itself to avoid another decomposition.
    """
    a = _as_array(m)
    n = a.shape[0]
    if spec is None:
        spec = eig_sym(a)
    mu = np.asarray(spec.values) - lam
    scale = np.abs(a).sum(axis=1).max() if n else 0.0
    keep = np.abs(mu) > rank_tol * scale
    q = spec.vectors[:, keep]
    return (q / mu[keep]) @ q.T


def parse_matrix(text):
    """Read n whitespace-separated rows of n reals."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                rows.append([float(x) for x in line.split()])
            except ValueError:
                raise ValueError(f"non-numeric entry in row {line!r}") from None
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix file must contain n rows of n numbers")
    return np.array(rows)


def format_matrix(m):
    a = _as_array(m)
    return "\n".join(" ".join(repr(float(x)) for x in row) for row in a) + "\n"
