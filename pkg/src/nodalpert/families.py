"""Example families with closed-form spectral data.

Each generator returns a :class:`FamilyInstance` holding the graph, the
matrix and whatever eigenvalues (and occasionally eigenvectors) are known in
closed form. Partial knowledge is fine: ``expected`` only lists the indices
that have a formula.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, path_graph, star_graph
from .spectral import GeneralizedLaplacian, classical_laplacian


@dataclass(frozen=True)
class Expected:
    """Known eigenpair data at 1-based index ``k``."""

    k: int
    value: float
    formula: str
    vector: np.ndarray = None


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    name: str
    g: Graph
    M: GeneralizedLaplacian
    expected: list = field(default_factory=list)
    notes: str = ""
    params: dict = field(default_factory=dict)
    labels: tuple = ()
    group_tol: float = None
    zero_tol: float = None

    def expected_values(self):
        return np.array([e.value for e in self.expected])

    def expected_indices(self):
        return [e.k for e in self.expected]


def _full(values, formulas):
    order = np.argsort(values, kind="stable")
    return [Expected(i + 1, float(values[j]), formulas[j]) for i, j in enumerate(order)]


def star(n):
    """Star on n vertices (center 0), classical Laplacian."""
    if n < 3:
        raise ValueError("star needs n >= 3")
    g = star_graph(n)
    vals = [0.0] + [1.0] * (n - 2) + [float(n)]
    forms = ["0"] + ["1"] * (n - 2) + ["n"]
    return FamilyInstance("star", g, classical_laplacian(g), _full(np.array(vals), forms),
                          "spectrum 0, 1 (n-2 times), n", {"n": n},
                          ("c",) + tuple(f"l{i}" for i in range(1, n)))


def path_dirichlet(n):
    """Path with 2 on the diagonal and -1 on edges (not the graph Laplacian)."""
    if n < 2:
        raise ValueError("path_dirichlet needs n >= 2")
    g = path_graph(n)
    m = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    j = np.arange(1, n + 1)
    expected = []
    for mm in range(1, n + 1):
        vec = np.sin(np.pi * mm * j / (n + 1))
        expected.append(Expected(mm, 2 - 2 * np.cos(np.pi * mm / (n + 1)),
                                 f"2-2cos(pi*{mm}/{n + 1})", vec / np.linalg.norm(vec)))
    return FamilyInstance("path-dirichlet", g, GeneralizedLaplacian(g, m), expected,
                          "eigenvalues 2-2cos(pi m/(n+1)), eigenvectors sin(pi m j/(n+1))", {"n": n})


def _quadratic_roots(b, c):
    """Roots of x^2 - b x + c in ascending order."""
    disc = np.sqrt(b * b - 4 * c)
    return (b - disc) / 2, (b + disc) / 2


def ladder_graph(n):
    """Two 3-paths v1-v2-v3 and v4-v5-v6 with n-6 middle vertices joined to v2 and v5."""
    edges = [(0, 1), (1, 2), (3, 4), (4, 5)]
    for x in range(6, n):
        edges += [(1, x), (4, x)]
    return Graph(n, tuple(edges))


def ladder(n):
    if n < 7:
        raise ValueError("ladder needs n >= 7")
    j = n - 6
    g = ladder_graph(n)
    p1, p2 = _quadratic_roots(3 + j, j)
    q1, q2 = _quadratic_roots(5 + j, j + 6)
    a_only = np.zeros(n)
    a_only[[0, 2]] = [1, -1]
    b_only = np.zeros(n)
    b_only[[3, 5]] = [1, -1]
    items = [(0.0, "0", None), (p1, "root of x^2-(3+j)x+j", None), (p2, "root of x^2-(3+j)x+j", None),
             (1.0, "1 (a-only vector)", a_only / np.sqrt(2)), (1.0, "1 (b-only vector)", b_only / np.sqrt(2)),
             (q1, "root of x^2-(5+j)x+(j+6)", None), (q2, "root of x^2-(5+j)x+(j+6)", None)]
    items += [(2.0, "2", None)] * (j - 1)
    items.sort(key=lambda t: t[0])
    expected = [Expected(i + 1, float(v), f, vec) for i, (v, f, vec) in enumerate(items)]
    labels = tuple(f"v{i}" for i in range(1, n + 1))
    return FamilyInstance("ladder", g, classical_laplacian(g), expected,
                          "eigenvalue 1 has the a-only and b-only eigenvectors", {"n": n}, labels)


def ladder_p_roots(j):
    return _quadratic_roots(3 + j, j)


def ladder_q_roots(j):
    return _quadratic_roots(5 + j, j + 6)


def double_left_graph(n):
    """Path v1, v3, v4, ..., vn with v2 also attached to v3 (0-based: 0 and 1 hang off 2)."""
    edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)]
    return Graph(n, tuple(edges))


def double_left_index(n):
    """Return (m, multiplicity) so that eigenvalue 1 sits at index m+1."""
    if n % 3 == 1:
        return (n - 1) // 3, 2
    return (n + 2) // 3, 1


def double_left_path(n):
    if n < 4:
        raise ValueError("double_left_path needs n >= 4")
    g = double_left_graph(n)
    m, mult = double_left_index(n)
    f1 = np.zeros(n)
    f1[[0, 1]] = [1, -1]
    expected = [Expected(m + 1, 1.0, "1", f1 / np.sqrt(2))]
    if mult == 2:
        f2 = np.zeros(n)
        f2[[0, 1]] = 1.0
        for i in range(2, n):
            t = i - 2
            if t % 3:
                block = (t + 2) // 3
                f2[i] = 2.0 * (-1) ** block
        expected.append(Expected(m + 2, 1.0, "1 (second vector)", f2 / np.linalg.norm(f2)))
    labels = tuple(f"v{i}" for i in range(1, n + 1))
    return FamilyInstance("double-left", g, classical_laplacian(g), expected,
                          "eigenvalue 1 at index m+1, multiplicity 2 iff n = 1 mod 3",
                          {"n": n}, labels)


def interlacing_path_values(n):
    """Laplacian spectrum of the path on n-1 vertices that remains after removing v2."""
    j = np.arange(1, n)
    return 2 - 2 * np.cos(np.pi * (j - 1) / (n - 1))


def default_mu(s, ell):
    return 1e3 * (1 + s + ell)


def shallow_deep_general(h, u_attach, w_attach, mu):
    """Two copies of a connected graph ``h`` glued through the vertices U.

    Vertex order is U, then H, then the copy H', then W. ``u_attach[i]`` lists
    the H-vertices joined to u_i (and the same vertices in H'), and
    ``w_attach[i]`` lists the indices of the u's joined to w_i. The matrix is
    the graph Laplacian plus ``mu`` on U minus, at every H or H' vertex, its
    number of U-neighbours, so that +1 on H and -1 on H' is in the kernel.
    """
    s, kh, ell = len(u_attach), h.n, len(w_attach)
    if s < 1 or kh < 1:
        raise ValueError("need at least one u vertex and a nonempty H")
    if not h.is_connected():
        raise ValueError("H must be connected")
    if mu <= 0:
        raise ValueError("mu must be positive")
    n = s + 2 * kh + ell
    off_h, off_hp, off_w = s, s + kh, s + 2 * kh
    edges = []
    for a, b in h.edges:
        edges += [(off_h + a, off_h + b), (off_hp + a, off_hp + b)]
    for i, verts in enumerate(u_attach):
        if not verts:
            raise ValueError(f"u_{i + 1} must be attached to H")
        for x in verts:
            edges += [(i, off_h + x), (i, off_hp + x)]
    for i, us in enumerate(w_attach):
        if not us:
            raise ValueError(f"w_{i + 1} must be attached to some u")
        for u in us:
            edges.append((u, off_w + i))
    g = Graph(n, tuple(edges))
    m = classical_laplacian(g).m.copy()
    m[np.arange(s), np.arange(s)] += mu
    for verts in u_attach:
        for x in verts:
            m[off_h + x, off_h + x] -= 1
            m[off_hp + x, off_hp + x] -= 1
    f2 = np.zeros(n)
    f2[off_h:off_hp] = 1.0
    f2[off_hp:off_w] = -1.0
    expected = [Expected(2, 0.0, "0 (+1 on H, -1 on H')", f2 / np.linalg.norm(f2))]
    labels = (tuple(f"u{i}" for i in range(1, s + 1)) + tuple(f"v{i}" for i in range(1, kh + 1))
              + tuple(f"v'{i}" for i in range(1, kh + 1)) + tuple(f"w{i}" for i in range(1, ell + 1)))
    # The lowest eigenvalue sits O(1/mu) below 0 while the spectral radius is
    # about mu, so the default relative grouping tolerance would merge them.
    # Likewise some eigenvectors carry genuine entries of size O(mu^-3) that
    # the default zero tolerance would read as zeros, while roundoff on the
    # structural zeros stays below 1e-12.
    tol = 1e-10 * (1.0 + np.abs(m).sum(axis=1).max())
    return FamilyInstance("shallow-deep", g, GeneralizedLaplacian(g, m), expected,
                          "lambda_2 = 0 for large mu", {"s": s, "k": kh, "ell": ell, "mu": mu}, labels,
                          tol, 2e-12)


def shallow_deep_family(s, k, ell, mu=None):
    """Every u_i joined to v1 and v'1, every w_i joined to u1, paths of length k."""
    if s < 1 or k < 1 or ell < 0:
        raise ValueError("need s >= 1, k >= 1, ell >= 0")
    if mu is None:
        mu = default_mu(s, ell)
    inst = shallow_deep_general(path_graph(k), [[0]] * s, [[0]] * ell, mu)
    return FamilyInstance(inst.name, inst.g, inst.M, inst.expected, inst.notes,
                          {"s": s, "k": k, "ell": ell, "mu": mu}, inst.labels,
                          inst.group_tol, inst.zero_tol)


def shallow_deep_blocks(inst):
    """Return (A, D): the U block without the mu shift, and the complementary block."""
    s = inst.params["s"]
    mu = inst.params["mu"]
    m = inst.M.m
    return m[:s, :s] - mu * np.eye(s), m[s:, s:]


def _depressed_cubic_roots(p, q):
    """Real roots of t^3 + p t + q when all three are real (trigonometric form)."""
    r = 2 * np.sqrt(-p / 3)
    phi = np.arccos(3 * q / (2 * p) * np.sqrt(-3 / p)) / 3
    return np.sort([r * np.cos(phi - 2 * np.pi * i / 3) for i in range(3)])


def worked_example():
    """Four-vertex star with vertex order u1, w1, v1, v1' and an explicit matrix.

    Its characteristic polynomial is x(x^3 - 4x - 2) and the third eigenvalue
    is 0 with eigenvector proportional to (0, 0, 1, -1).
    """
    g = Graph(4, ((0, 1), (0, 2), (0, 3)))
    m0 = np.array([[1.0, -1, -1, -1], [-1, -1, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]])
    vals = np.append(_depressed_cubic_roots(-4.0, -2.0), 0.0)
    forms = ["root of x^3-4x-2"] * 3 + ["0"]
    expected = _full(vals, forms)
    f3 = np.array([0, 0, 1.0, -1.0]) / np.sqrt(2)
    expected[2] = Expected(3, expected[2].value, expected[2].formula, f3)
    return FamilyInstance("worked-example", g, GeneralizedLaplacian(g, m0), expected,
                          "characteristic polynomial x(x^3-4x-2)", {}, ("u1", "w1", "v1", "v1'"))


def worked_example_pinv():
    """Pseudoinverse of the worked example matrix at eigenvalue 0."""
    h = 0.5
    return np.array([[0, 0, -h, -h], [0, -1, h, h], [-h, h, -h, -h], [-h, h, -h, -h]])


def nodal_fixture():
    """Zero centre joined to four leaves (+, +, -, -) with extra edges along the leaves.

    The leaves lie on a segment a-b-c-d; the segment from a to c is read as the
    two edges a-b and b-c. Strong count 3, weak count 2.
    """
    g = Graph(5, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)))
    return g, np.array([0, 1, 1, -1, -1], dtype=np.int8)


def path_fixture():
    """Path 0-1-2 with pattern (+, 0, 0); its Urschel profile is [1, 2, 2, 3]."""
    return path_graph(3), np.array([1, 0, 0], dtype=np.int8)


def schur_det_check(a, b, c, d, cond_tol=1e12):
    """Determinant of [[A, B], [C, D]] via both Schur complements.

    Returns ``(det(A) det(D - C A^-1 B), det(D) det(A - B D^-1 C))``.
    """
    a, b, c, d = (np.atleast_2d(np.asarray(x, dtype=float)) for x in (a, b, c, d))
    for name, blk in (("A", a), ("D", d)):
        if np.linalg.cond(blk) > cond_tol:
            raise np.linalg.LinAlgError(f"block {name} is singular")
    det_ab = np.linalg.det(a) * np.linalg.det(d - c @ np.linalg.solve(a, b))
    det_dc = np.linalg.det(d) * np.linalg.det(a - b @ np.linalg.solve(d, c))
    return float(det_ab), float(det_dc)


FAMILIES = {
    "star": lambda n=5, **_: star(n),
    "path-dirichlet": lambda n=5, **_: path_dirichlet(n),
    "ladder": lambda n=7, **_: ladder(n),
    "double-left": lambda n=7, **_: double_left_path(n),
    "shallow-deep": lambda s=1, k=1, ell=1, mu=None, **_: shallow_deep_family(s, k, ell, mu),
    "worked-example": lambda **_: worked_example(),
}
