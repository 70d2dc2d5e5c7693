"""First-order perturbation at a simple eigenvalue and signing certificates.

Given a generalized Laplacian M with a simple eigenvalue lam_k whose
eigenvector f vanishes somewhere, a small perturbation M + eps*M1 moves the
zeros of f to first order by f1 = (M - lam I)^+ (-M1 f). Choosing M1 from a
fixed family of generators (diagonal entries at vertices where f is nonzero,
and edge entries between shallow vertices and their nonzero neighbours)
controls the signs of f1 on a free subset of the zeros. Following this
step by step until no zeros remain produces a signing of f together with a
perturbed matrix whose k-th eigenvector realizes it, so its strong nodal
count is at most k.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .nodal import ZERO, sign_pattern, snd
from .spectral import (RANK_TOL, ZERO_TOL, GeneralizedLaplacian, NotGeneralizedLaplacian,
                       default_group_tol, eig_sym, shifted_pseudoinverse)
from .urschel import classify_vector

PIVOT_TOL = 1e-8
MAX_HALVINGS = 40
PREDICT_FACTOR = 10.0


class CertificationError(RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BudgetError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class PerturbDirection:
    m1: np.ndarray
    f1: np.ndarray
    eps_used: float = 0.0


@dataclass(frozen=True, eq=False)
class ImageBasis:
    """Perturbation generators at (M, k) and their first-order images.

    ``images[:, i]`` is f1 for generator i. ``basis`` holds echelon rows
    spanning the images restricted to the Urschel vertices, and ``free``
    lists the Urschel vertices whose values can be prescribed at will.
    """

    g: object
    m: np.ndarray
    k: int
    lam: float
    f: np.ndarray
    pinv: np.ndarray
    classification: object
    generators: tuple
    images: np.ndarray
    urschel: tuple
    basis: np.ndarray
    free: tuple

    @property
    def rank(self):
        return len(self.free)


def generator_matrix(n, gen):
    """Symmetric matrix for a generator ("diag", v) or ("edge", u, w)."""
    m1 = np.zeros((n, n))
    if gen[0] == "diag":
        m1[gen[1], gen[1]] = 1.0
    else:
        _, u, w = gen
        m1[u, w] = m1[w, u] = 1.0
    return m1


def first_order_correction(m, lam, m1, f, rank_tol=RANK_TOL, pinv=None):
    """f1 = (M - lam I)^+ (-M1 f)."""
    if pinv is None:
        pinv = shifted_pseudoinverse(m, lam, rank_tol)
    return pinv @ (-(np.asarray(m1) @ np.asarray(f, dtype=float)))


def first_order_eigenvalue(m1, f):
    """Rayleigh slope (f, M1 f) / (f, f)."""
    f = np.asarray(f, dtype=float)
    return float(f @ np.asarray(m1) @ f / (f @ f))


def echelon_pivots(a, tol=PIVOT_TOL):
    """Row-reduce ``a`` with partial pivoting; return (echelon rows, pivot columns).

    Columns are scanned left to right; a column becomes a pivot when its
    largest remaining entry exceeds ``tol`` times the largest entry of ``a``.
    """
    a = np.array(a, dtype=float)
    rows, cols = a.shape
    scale = np.abs(a).max() if a.size else 0.0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows or scale == 0:
            break
        i = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[i, c]) <= tol * scale:
            continue
        a[[r, i]] = a[[i, r]]
        a[r] /= a[r, c]
        others = np.arange(rows) != r
        a[others] -= np.outer(a[others, c], a[r])
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _spectrum_and_vector(m, k, spec=None):
    if spec is None:
        spec = eig_sym(m)
    return spec, np.array(spec.vector(k))


def perturbation_image_basis(g, M, k, f_k=None, zero_tol=ZERO_TOL, rank_tol=RANK_TOL, spec=None):
    """Generators, first-order images and the free Urschel coordinates at (M, k)."""
    m = M.m if isinstance(M, GeneralizedLaplacian) else np.asarray(M, dtype=float)
    spec, fk = _spectrum_and_vector(m, k, spec)
    f = fk if f_k is None else np.asarray(f_k, dtype=float)
    lam = spec.value(k)
    cls = classify_vector(g, f, zero_tol)
    non = set(cls.non_urschel)
    gens = [("diag", v) for v in cls.non_urschel]
    gens += [("edge", u, w) for u in cls.shallow for w in g.adjacency[u] if w in non]
    pinv = shifted_pseudoinverse(m, lam, rank_tol, spec=spec)
    n = g.n
    images = np.zeros((n, len(gens)))
    for i, gen in enumerate(gens):
        images[:, i] = pinv @ (-(generator_matrix(n, gen) @ f))
    urs = cls.urschel
    if urs:
        # shallow coordinates are scanned first: their unit vectors are direct
        # generator images, so they make well-conditioned free coordinates
        order = list(cls.shallow) + list(cls.deep)
        basis, piv = echelon_pivots(images[order, :].T)
        free = tuple(sorted(order[c] for c in piv))
        basis = basis[:, np.argsort(order)]
    else:
        basis, free = np.zeros((0, 0)), ()
    return ImageBasis(g, m, k, lam, f, pinv, cls, tuple(gens), images, urs, basis, free)


def realize_urschel_pattern(ctx, target):
    """Combine generators so that f1 takes the values ``target`` on ``ctx.free``.

    ``target`` is a sequence aligned with ``ctx.free`` or a dict keyed by
    vertex. The coefficients are the least-squares solution of the reduced
    system, and the result is rescaled so that ||M1||_inf = 1.
    """
    if isinstance(target, dict):
        target = [target[v] for v in ctx.free]
    target = np.asarray(target, dtype=float)
    if len(target) != len(ctx.free):
        raise ValueError(f"target has {len(target)} entries but the free set has {len(ctx.free)}")
    if not ctx.free:
        raise CertificationError("no free Urschel coordinates to prescribe")
    sub = ctx.images[list(ctx.free), :]
    coef, *_ = np.linalg.lstsq(sub, target, rcond=None)
    resid = np.abs(sub @ coef - target).max()
    if resid > 1e-8 * max(1.0, np.abs(target).max()):
        raise CertificationError("reduced system is singular", {"residual": float(resid)})
    n = ctx.g.n
    m1 = sum(c * generator_matrix(n, gen) for c, gen in zip(coef, ctx.generators))
    f1 = ctx.images @ coef
    scale = np.abs(m1).sum(axis=1).max()
    return PerturbDirection(m1 / scale, f1 / scale, 0.0)


@dataclass(frozen=True, eq=False)
class ChainStep:
    m1: np.ndarray
    eps: float
    zeros_before: int
    zeros_after: int
    eigenvalue: float
    gap: float
    halvings: int


@dataclass(frozen=True, eq=False)
class SigningCertificate:
    k: int
    target: tuple
    signing: np.ndarray
    snd_value: int
    chain: list = field(default_factory=list)
    matrix: np.ndarray = None

    @property
    def holds(self):
        return self.snd_value <= self.k


def _try_step(g, mc, fc, pc, k, d, group_tol, zero_tol, eps):
    """Return (ok, info) for the perturbed matrix mc + eps*m1."""
    me = mc + eps * d.m1
    try:
        GeneralizedLaplacian(g, me)
    except NotGeneralizedLaplacian as exc:
        return False, {"reason": "not a generalized Laplacian", "detail": str(exc)}
    spec = eig_sym(me)
    tol = default_group_tol(spec) if group_tol is None else group_tol
    vals = spec.values
    lo = vals[k - 1] - vals[k - 2] if k > 1 else np.inf
    hi = vals[k] - vals[k - 1] if k < len(vals) else np.inf
    gap = min(lo, hi)
    if gap <= 10 * tol:
        return False, {"reason": "k-th eigenvalue not simple", "gap": float(gap)}
    v = np.array(spec.vector(k))
    if v @ fc < 0:
        v = -v
    pv = sign_pattern(v, zero_tol)
    # a zero counts as predicted when its first-order value clears the zero
    # threshold of the current vector by a safety factor
    f1 = d.f1
    f1_big = eps * np.abs(f1) > PREDICT_FACTOR * zero_tol * np.abs(fc).max()
    predicted = pc.copy()
    newly = (pc == ZERO) & f1_big
    predicted[newly] = np.sign(f1[newly])
    check = (pc != ZERO) | newly
    bad = np.flatnonzero(check & (pv != predicted))
    if len(bad):
        return False, {"reason": "sign mismatch", "vertices": bad.tolist()}
    return True, {"matrix": me, "vector": v, "pattern": pv, "gap": float(gap),
                  "eigenvalue": float(vals[k - 1])}


def _certify_one(g, m, k, f, target, group_tol, zero_tol, rank_tol, max_steps):
    mc, fc = m, f
    pc = sign_pattern(fc, zero_tol)
    chain = []
    first = True
    min_edge = GeneralizedLaplacian(g, m).min_edge_magnitude()
    while np.any(pc == ZERO):
        if len(chain) >= max_steps:
            raise CertificationError("chain did not terminate", {"steps": len(chain)})
        ctx = perturbation_image_basis(g, mc, k, fc, zero_tol, rank_tol)
        tgt = target if first else np.ones(len(ctx.free))
        if first and len(target) != len(ctx.free):
            raise CertificationError("target size changed")
        d = realize_urschel_pattern(ctx, tgt)
        eps = 0.1 * min_edge / (1 + np.abs(d.m1).sum(axis=1).max())
        for halvings in range(MAX_HALVINGS + 1):
            ok, info = _try_step(g, mc, fc, pc, k, d, group_tol, zero_tol, eps)
            if ok:
                break
            eps /= 2
        else:
            raise CertificationError("no admissible step size", {"last": info, "eps": eps})
        zeros_before = int(np.sum(pc == ZERO))
        zeros_after = int(np.sum(info["pattern"] == ZERO))
        if zeros_after >= zeros_before:
            raise CertificationError("step did not reduce the number of zeros",
                                     {"before": zeros_before, "after": zeros_after})
        chain.append(ChainStep(d.m1, float(eps), zeros_before, zeros_after,
                               info["eigenvalue"], info["gap"], halvings))
        mc, fc, pc = info["matrix"], info["vector"], info["pattern"]
        first = False
    return SigningCertificate(k, tuple(int(t) for t in target), pc, snd(g, pc), chain, mc)


def certify_simple(g, M, k, patterns="all", max_patterns=1024, group_tol=None,
                   zero_tol=ZERO_TOL, rank_tol=RANK_TOL, max_steps=None):
    """Certify signings of the k-th eigenvector with at most k strong nodal domains.

    ``patterns="pm"`` runs the two targets +1 and -1 on the free set;
    ``patterns="all"`` runs every sign pattern on the free set, refusing with
    BudgetError when there are more than ``max_patterns`` of them.
    """
    m = M.m if isinstance(M, GeneralizedLaplacian) else np.asarray(M, dtype=float)
    spec = eig_sym(m)
    tol = default_group_tol(spec) if group_tol is None else group_tol
    vals = spec.values
    if (k > 1 and vals[k - 1] - vals[k - 2] <= tol) or (k < len(vals) and vals[k] - vals[k - 1] <= tol):
        raise ValueError(f"eigenvalue {k} is not simple at group_tol={tol:.3g}")
    f = np.array(spec.vector(k))
    if not np.any(sign_pattern(f, zero_tol) == ZERO):
        raise ValueError(f"eigenvector {k} has no zeros; nothing to certify")
    ctx = perturbation_image_basis(g, m, k, f, zero_tol, rank_tol, spec=spec)
    r = len(ctx.free)
    if patterns == "pm":
        targets = [(1,) * r, (-1,) * r]
    elif patterns == "all":
        if 2 ** r > max_patterns:
            raise BudgetError(f"2^{r} patterns on the free set exceed max_patterns={max_patterns}")
        targets = [tuple(1 if b else -1 for b in reversed(bits)) for bits in product((0, 1), repeat=r)]
    else:
        raise ValueError(f"unknown patterns option {patterns!r}")
    if max_steps is None:
        max_steps = g.n
    return [_certify_one(g, m, k, f, np.array(t), group_tol, zero_tol, rank_tol, max_steps)
            for t in targets]


def first_order_errors(m, k, m1, eps_values):
    """Eigenvalue and eigenvector deviations from the first-order model.

    Returns a list of (eps, |lam(eps) - lam - eps*lam1|, ||v(eps) - (f + eps f1)||_inf).
    """
    m = np.asarray(m, dtype=float)
    spec = eig_sym(m)
    lam, f = spec.value(k), np.array(spec.vector(k))
    lam1 = first_order_eigenvalue(m1, f)
    f1 = first_order_correction(m, lam, m1, f, pinv=shifted_pseudoinverse(m, lam, spec=spec))
    out = []
    for eps in eps_values:
        s = eig_sym(m + eps * m1)
        v = np.array(s.vector(k))
        if v @ f < 0:
            v = -v
        out.append((eps, abs(s.value(k) - lam - eps * lam1), float(np.abs(v - f - eps * f1).max())))
    return out
