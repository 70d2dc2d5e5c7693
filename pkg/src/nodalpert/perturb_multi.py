"""Splitting a multiple eigenvalue with a diagonal perturbation.

For an eigenvalue of multiplicity m with orthonormal eigenbasis Q, the
perturbed eigenvalues of M + eps*D are lam + eps*mu_j + O(eps^2), where mu_j
are the eigenvalues of Q^T D Q. A diagonal D with geometrically spread
entries on m well-chosen coordinates makes the mu_j distinct, which picks out
a distinguished eigenbasis. The j-th vector of that basis (0-based, ascending
mu) has Urschel number at most k + min(j, m-1-j).
"""

from dataclasses import dataclass, field

import numpy as np

from .nodal import MAX_ZEROS, EnumerationBudgetError, sign_pattern, urschel_profile
from .spectral import (ZERO_TOL, GeneralizedLaplacian, eig_sym, first_nonzero_positive,
                       group_eigenvalues)

MAX_DOUBLINGS = 60


class SplitError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class SplitBasis:
    k: int
    m: int
    d: np.ndarray
    basis: np.ndarray
    lambda_prime: np.ndarray
    gap: float

    def vector(self, j):
        return self.basis[:, j]


def reduce_to_small(e_basis, m1):
    """Q^T M1 Q for an n x m matrix Q with orthonormal columns."""
    q = np.asarray(e_basis, dtype=float)
    return q.T @ np.asarray(m1, dtype=float) @ q


def pivot_coordinates(e_basis):
    """Pick m rows of Q forming an invertible m x m block by pivoted elimination."""
    a = np.array(e_basis, dtype=float).T
    m, n = a.shape
    chosen = []
    for i in range(m):
        scores = np.abs(a[i])
        scores[chosen] = -1.0
        c = int(np.argmax(scores))
        if scores[c] <= 1e-12:
            raise SplitError("basis is rank deficient")
        chosen.append(c)
        a[i + 1:] -= np.outer(a[i + 1:, c] / a[i, c], a[i])
    return chosen


def _split_tol(d):
    return 1e-6 * (1.0 + np.abs(d).max())


def splitting_diagonal(e_basis, g=None):
    """Diagonal d with r^0, ..., r^(m-1) on pivot coordinates, r doubled until Q^T D Q splits."""
    q = np.asarray(e_basis, dtype=float)
    n, m = q.shape
    if m < 2:
        raise ValueError("splitting needs a group of multiplicity at least 2")
    coords = pivot_coordinates(q)
    r = 2.0
    for _ in range(MAX_DOUBLINGS + 1):
        d = np.zeros(n)
        d[coords] = r ** np.arange(m)
        mu = np.linalg.eigvalsh(reduce_to_small(q, np.diag(d)))
        if np.diff(mu).min() > _split_tol(d):
            return d
        r *= 2
    raise SplitError(f"no splitting diagonal found after {MAX_DOUBLINGS} doublings")


def split_group(g, M, group, spec=None):
    """Distinguished eigenbasis of a group, ordered by ascending first-order shift."""
    m = M.m if isinstance(M, GeneralizedLaplacian) else np.asarray(M, dtype=float)
    if spec is None:
        spec = eig_sym(m)
    q = np.array(spec.vectors[:, group.k - 1:group.k - 1 + group.m])
    if group.m == 1:
        return SplitBasis(group.k, 1, np.zeros(len(q)), q, np.zeros(1), np.inf)
    d = splitting_diagonal(q, g)
    small = eig_sym(reduce_to_small(q, np.diag(d)))
    basis = q @ small.vectors
    for j in range(group.m):
        basis[:, j] = first_nonzero_positive(basis[:, j])
    lp = np.array(small.values)
    return SplitBasis(group.k, group.m, d, basis, lp, float(np.diff(lp).min()))


def multi_bound(k, m, j):
    return k + min(j, m - 1 - j)


@dataclass
class MultiBoundEntry:
    j: int
    bound: int
    un: int = None
    status: str = "unverified"
    note: str = ""


@dataclass
class MultiBoundReport:
    k: int
    m: int
    entries: list = field(default_factory=list)

    @property
    def passed(self):
        return all(e.status != "fail" for e in self.entries)


def verify_multi_bounds(g, M, sb, max_zeros=MAX_ZEROS, zero_tol=ZERO_TOL):
    """Brute-force Urschel numbers of the split basis against k + min(j, m-1-j).

    With eps > 0 the j-th vector is the eigenvector of index k+j of M + eps*D,
    and with eps < 0 it is the eigenvector of index k+m-1-j; the smaller index
    is the bound.
    """
    rep = MultiBoundReport(sb.k, sb.m)
    for j in range(sb.m):
        e = MultiBoundEntry(j, multi_bound(sb.k, sb.m, j),
                            note=f"index {sb.k + j} for eps>0, {sb.k + sb.m - 1 - j} for eps<0")
        try:
            prof = urschel_profile(g, sign_pattern(sb.vector(j), zero_tol), max_zeros)
        except EnumerationBudgetError:
            rep.entries.append(e)
            continue
        e.un = prof.un
        e.status = "pass" if prof.un <= e.bound else "fail"
        rep.entries.append(e)
    return rep


def first_order_split_errors(M, sb, eps):
    """Max |lam_{k+j}(M + eps D) - lam_k - eps*lambda'_j| over j."""
    m = M.m if isinstance(M, GeneralizedLaplacian) else np.asarray(M, dtype=float)
    base = eig_sym(m)
    lam = base.values[sb.k - 1:sb.k - 1 + sb.m].mean()
    pert = eig_sym(m + eps * np.diag(sb.d)).values[sb.k - 1:sb.k - 1 + sb.m]
    return float(np.abs(pert - lam - eps * sb.lambda_prime).max())


def split_all(g, M, group_tol=None):
    """Split every group of multiplicity at least 2."""
    spec = eig_sym(M.m if isinstance(M, GeneralizedLaplacian) else M)
    return [split_group(g, M, grp, spec) for grp in group_eigenvalues(spec, group_tol) if grp.m > 1]
