"""Finite simple undirected graphs on vertices 0..n-1.

Vertices are dense integer indices so that they double as matrix indices.
Component queries return parts sorted by their smallest member, which keeps
every downstream report reproducible.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n):
        self.parent = np.arange(n)
        self.size = np.ones(n, dtype=int)

    def reset(self):
        self.parent[:] = np.arange(len(self.parent))
        self.size[:] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True, eq=True)
class Graph:
    """Simple undirected graph with a canonical sorted edge tuple."""

    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        canon = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            pair = (min(u, v), max(u, v))
            if pair in canon:
                raise ValueError(f"duplicate edge {pair}")
            canon.add(pair)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, tuple(edges))

    @cached_property
    def adjacency(self):
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_array(self):
        """Edges as an (E, 2) integer array."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    def neighbors(self, v):
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")
        return list(self.adjacency[v])

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_set

    @cached_property
    def _edge_set(self):
        return frozenset(self.edges)

    def degrees(self):
        return np.array([len(a) for a in self.adjacency], dtype=int)

    def is_connected(self):
        return self.n <= 1 or len(connected_components(self, range(self.n))) == 1


def neighbors(g, v):
    return g.neighbors(v)


def connected_components(g, keep):
    """Partition ``keep`` into components of the subgraph induced on it."""
    keep = sorted(set(int(v) for v in keep))
    if not keep:
        return []
    inside = np.zeros(g.n, dtype=bool)
    inside[keep] = True
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if inside[u] and inside[v]:
            uf.union(u, v)
    parts = {}
    for v in keep:
        parts.setdefault(uf.find(v), []).append(v)
    return sorted(parts.values(), key=lambda p: p[0])


def parse_graph(text):
    """Read the text format: first line ``n``, then one ``u v`` per line.

    Lines starting with ``#`` and blank lines are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"edge line must have two indices, got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"non-integer vertex in {line!r}") from None
    return Graph(n, tuple(edges))


def format_graph(g):
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def path_graph(n):
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(n):
    """Star with center 0 and leaves 1..n-1."""
    return Graph(n, tuple((0, i) for i in range(1, n)))
