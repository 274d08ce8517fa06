"""Undirected graphs with hop-distance neighborhoods.

Vertices are dense 0-based integers; labeled edge lists are remapped at
ingestion.  Graphs are validated eagerly (no self-loops, symmetric
adjacency, connected) and immutable afterwards, so every operation here
is read-only and safe to call concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "KNeighborhood",
    "bfs_distances",
    "k_neighborhood",
    "k_path_degree",
    "max_k_path_degree",
    "read_edge_list",
    "path_graph",
    "cycle_graph",
    "ladder_graph",
    "square_lattice",
    "triangular_lattice",
    "hexagonal_lattice",
    "generation_tree",
]


class Graph:
    """Undirected, connected graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("_adj", "_n_edges", "_dist_matrix")

    def __init__(self, n_vertices, edges):
        if n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        adj = [set() for _ in range(n_vertices)]
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range for {n_vertices} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._n_edges = sum(len(a) for a in self._adj) // 2
        self._dist_matrix = None
        self._check_connected()

    def _check_connected(self):
        n = self.n_vertices
        seen = bytearray(n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        if count != n:
            raise ValueError(f"graph is not connected ({count} of {n} vertices reachable)")

    @property
    def n_vertices(self):
        return len(self._adj)

    @property
    def n_edges(self):
        return self._n_edges

    @property
    def vertices(self):
        return range(self.n_vertices)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def edges(self):
        for u in self.vertices:
            for w in self._adj[u]:
                if u < w:
                    yield (u, w)

    def __contains__(self, v):
        return isinstance(v, (int, np.integer)) and 0 <= v < self.n_vertices

    def __repr__(self):
        return f"Graph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"

    def distance_matrix(self):
        """All-pairs shortest-path distances as an int32 array (cached)."""
        if self._dist_matrix is None:
            n = self.n_vertices
            dm = np.empty((n, n), dtype=np.int32)
            for v in self.vertices:
                dist = bfs_distances(self, v)
                row = dm[v]
                for w, d in dist.items():
                    row[w] = d
            self._dist_matrix = dm
            self._dist_matrix.setflags(write=False)
        return self._dist_matrix

    def diameter(self):
        return int(self.distance_matrix().max())


@dataclass(frozen=True)
class KNeighborhood:
    """Vertices at exact hop distance k from a center vertex."""

    center: int
    k: int
    members: tuple

    @property
    def size(self):
        return len(self.members)


def _check_vertex(g, v):
    if v not in g:
        raise ValueError(f"unknown vertex id {v!r}")


def bfs_distances(g: Graph, v: int, kmax=None):
    """Exact shortest-path distances from v, truncated at kmax hops.

    Returns a dict vertex -> distance containing every vertex with
    d(v, w) <= kmax; d(v, v) = 0.  With kmax=None the whole graph is
    traversed.
    """
    _check_vertex(g, v)
    if kmax is not None and kmax < 0:
        raise ValueError("kmax must be nonnegative")
    dist = {v: 0}
    if kmax == 0:
        return dist
    frontier = [v]
    d = 0
    while frontier:
        d += 1
        if kmax is not None and d > kmax:
            break
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def k_neighborhood(g: Graph, v: int, k: int) -> KNeighborhood:
    """The set {w : d(v, w) = k}; its size is the k-hop degree of v."""
    _check_vertex(g, v)
    if k < 1:
        raise ValueError("k must be a positive integer")
    dist = bfs_distances(g, v, kmax=k)
    members = tuple(sorted(w for w, d in dist.items() if d == k))
    return KNeighborhood(center=v, k=k, members=members)


def k_path_degree(g: Graph, v: int, k: int) -> int:
    return k_neighborhood(g, v, k).size


def max_k_path_degree(g: Graph, k: int) -> int:
    """Maximum k-hop degree over all vertices of a finite graph."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return max(k_path_degree(g, v, k) for v in g.vertices)


def read_edge_list(lines) -> Graph:
    """Build a Graph from "u v" pairs, one per line; '#' starts a comment.

    Labels may be arbitrary tokens; they are mapped to dense 0-based ids.
    All-integer label sets sort numerically, anything else lexicographically,
    so the mapping is independent of line order.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    raw_edges = []
    labels = set()
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        raw_edges.append((parts[0], parts[1]))
        labels.update(parts)
    if not labels:
        raise ValueError("edge list is empty")
    try:
        ordered = sorted(labels, key=int)
    except ValueError:
        ordered = sorted(labels)
    index = {lab: i for i, lab in enumerate(ordered)}
    return Graph(len(ordered), [(index[u], index[v]) for u, v in raw_edges])


# ---------------------------------------------------------------------------
# builders


def path_graph(n: int) -> Graph:
    """Path on n vertices 0-1-...-(n-1)."""
    if n < 1:
        raise ValueError("size must be >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def ladder_graph(n: int) -> Graph:
    """2 x n ladder: two rails of length n joined by rungs."""
    if n < 1:
        raise ValueError("size must be >= 1")
    edges = [(i, i + n) for i in range(n)]
    edges += [(i, i + 1) for i in range(n - 1)]
    edges += [(n + i, n + i + 1) for i in range(n - 1)]
    return Graph(2 * n, edges)


def square_lattice(w: int, h: int) -> Graph:
    """w x h window of the square lattice."""
    if w < 1 or h < 1:
        raise ValueError("sizes must be >= 1")
    vid = lambda i, j: i * h + j
    edges = []
    for i in range(w):
        for j in range(h):
            if i + 1 < w:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j + 1 < h:
                edges.append((vid(i, j), vid(i, j + 1)))
    return Graph(w * h, edges)


def triangular_lattice(w: int, h: int) -> Graph:
    """w x h window of the triangular lattice (square grid plus one diagonal).

    Interior vertices have degree 6 and k-hop rings of size 6k.
    """
    if w < 1 or h < 1:
        raise ValueError("sizes must be >= 1")
    vid = lambda i, j: i * h + j
    edges = []
    for i in range(w):
        for j in range(h):
            if i + 1 < w:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j + 1 < h:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < w and j + 1 < h:
                edges.append((vid(i, j), vid(i + 1, j + 1)))
    return Graph(w * h, edges)


def hexagonal_lattice(w: int, h: int) -> Graph:
    """w x h window of the hexagonal (honeycomb) lattice, brick-wall layout.

    Horizontal edges everywhere, vertical edges where i+j is even, so
    interior degree is 3.  Degenerate single-row/column windows reduce
    to paths.
    """
    if w < 1 or h < 1:
        raise ValueError("sizes must be >= 1")
    if w == 1 or h == 1:
        return path_graph(w * h)
    vid = lambda i, j: i * h + j
    edges = []
    for i in range(w):
        for j in range(h):
            if i + 1 < w:
                edges.append((vid(i, j), vid(i + 1, j)))
            if j + 1 < h and (i + j) % 2 == 0:
                edges.append((vid(i, j), vid(i, j + 1)))
    return Graph(w * h, edges)


def generation_tree(depth: int) -> Graph:
    """Tree where each vertex in generation n has n+1 children.

    Generation n then contains n! vertices; `depth` is the index of the
    last generation (depth=0 is the bare root).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    edges = []
    next_id = 1
    generation = [0]
    for n in range(depth):
        nxt = []
        for v in generation:
            for _ in range(n + 1):
                edges.append((v, next_id))
                nxt.append(next_id)
                next_id += 1
        generation = nxt
    return Graph(next_id, edges)
