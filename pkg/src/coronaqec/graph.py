"""Simple undirected graphs, standard families, coronas and distance matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DisconnectedGraphError, GraphSpecError, PreconditionError

__all__ = [
    "Graph",
    "make_family",
    "complete",
    "empty",
    "path",
    "cycle",
    "disjoint_union",
    "distance_matrix",
    "corona",
    "join_k1",
    "corona_distance_matrix",
    "corona_index",
    "read_edge_list",
    "format_edge_list",
]


def _normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphSpecError(f"edge {tuple(e)!r} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphSpecError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphSpecError(f"loop at vertex {u} is not allowed")
        seen.add((u, v) if u < v else (v, u))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on vertices ``0..n-1``.

    Edges are normalized on construction: each unordered pair is stored once
    as ``(u, v)`` with ``u < v``, sorted. Loops and out-of-range endpoints
    raise :class:`GraphSpecError`.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise GraphSpecError(f"vertex count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<Graph{name} n={self.n} m={len(self.edges)}>"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return nbrs

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        deg = self.degrees()
        if not deg or any(d != deg[0] for d in deg):
            return None
        return deg[0]

    def components(self) -> list[list[int]]:
        nbrs = self.neighbors()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in nbrs[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphSpecError("relabeling must be a permutation of the vertices")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges], self.label)

    def with_label(self, label: str) -> "Graph":
        return Graph(self.n, self.edges, label)


# -- families ---------------------------------------------------------------

def _check_size(name: str, n: int, minimum: int = 1) -> int:
    if int(n) != n or n < minimum:
        raise GraphSpecError(f"{name} needs size >= {minimum}, got {n!r}")
    return int(n)


def complete(n: int) -> Graph:
    n = _check_size("complete graph", n)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"K{n}")


def empty(n: int) -> Graph:
    n = _check_size("empty graph", n)
    return Graph(n, (), f"E{n}")


def path(n: int) -> Graph:
    n = _check_size("path", n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> Graph:
    n = _check_size("cycle", n, minimum=3)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def disjoint_union(*graphs: Graph, label: str | None = None) -> Graph:
    if not graphs:
        raise GraphSpecError("disjoint union of zero graphs")
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    if label is None:
        label = "union:" + ",".join(g.label or f"<n={g.n}>" for g in graphs)
    return Graph(offset, edges, label)


def make_family(kind: str, params: Sequence) -> Graph:
    """Build a named graph.

    ``kind`` is one of ``complete``, ``empty``, ``path``, ``cycle`` (one size
    parameter), ``disjoint-union-of-completes`` (``[p, q]`` for pK_q), or
    ``disjoint-union`` (params are :class:`Graph` instances).
    """
    params = list(params)
    simple = {"complete": complete, "empty": empty, "path": path, "cycle": cycle}
    if kind in simple:
        if len(params) != 1:
            raise GraphSpecError(f"{kind} takes exactly one size parameter")
        return simple[kind](params[0])
    if kind == "disjoint-union-of-completes":
        if len(params) != 2:
            raise GraphSpecError("disjoint-union-of-completes takes [p, q]")
        p, q = _check_size("copy count", params[0]), _check_size("complete graph", params[1])
        return disjoint_union(*[complete(q)] * p, label=f"{p}K{q}")
    if kind == "disjoint-union":
        if not params or not all(isinstance(g, Graph) for g in params):
            raise GraphSpecError("disjoint-union takes one or more Graph parameters")
        return disjoint_union(*params)
    raise GraphSpecError(f"unknown graph family {kind!r}")


# -- distances and products --------------------------------------------------

def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances by BFS from every vertex.

    Returns an ``int64`` array. Raises :class:`DisconnectedGraphError`
    naming a vertex that vertex 0 cannot reach.
    """
    if g.n == 0:
        raise PreconditionError("distance matrix of the null graph is undefined")
    nbrs = g.neighbors()
    d = np.full((g.n, g.n), -1, dtype=np.int64)
    for s in range(g.n):
        row = d[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if row[y] < 0:
                    row[y] = row[x] + 1
                    queue.append(y)
        if s == 0 and (row < 0).any():
            raise DisconnectedGraphError(int(np.flatnonzero(row < 0)[0]))
    return d


def corona_index(i: int, x: int | None, h_n: int) -> int:
    """Vertex index of ``(i, x)`` in :func:`corona`; ``x=None`` is the apex."""
    return i * (1 + h_n) + (0 if x is None else 1 + x)


def corona(g: Graph, h: Graph) -> Graph:
    """G ⊙ H: attach a private copy of H to each vertex of G.

    Block ``i`` occupies indices ``i*(1+h.n) .. i*(1+h.n)+h.n``; the copy of
    vertex ``i`` comes first, then the copy of H in its own order.
    """
    if g.n < 1:
        raise PreconditionError("corona needs g.n >= 1")
    b = 1 + h.n
    edges = [(u * b, v * b) for u, v in g.edges]
    for i in range(g.n):
        base = i * b
        edges.extend((base, base + 1 + x) for x in range(h.n))
        edges.extend((base + 1 + x, base + 1 + y) for x, y in h.edges)
    label = None
    if g.label and h.label:
        label = f"({g.label})o({h.label})"
    return Graph(g.n * b, edges, label)


def join_k1(h: Graph) -> Graph:
    """K_1 + H with the apex at index 0 and H shifted to ``1..h.n``."""
    edges = [(0, 1 + x) for x in range(h.n)]
    edges.extend((1 + x, 1 + y) for x, y in h.edges)
    return Graph(1 + h.n, edges, f"K1+({h.label})" if h.label else None)


def corona_distance_matrix(g: Graph, h: Graph) -> np.ndarray:
    """Distance matrix of G ⊙ H assembled from D_G and A_H as a sum of Kronecker products.

    Uses the block ordering of :func:`corona`, so the result equals
    ``distance_matrix(corona(g, h))`` entrywise without running BFS on the
    corona itself.
    """
    if g.n < 2 or h.n < 1:
        raise PreconditionError("corona distance formula needs g.n >= 2 and h.n >= 1")
    dg = distance_matrix(g)
    m = h.n
    b = 1 + m
    ones_b = np.ones((b, b), dtype=np.int64)

    local = np.zeros((b, b), dtype=np.int64)
    local[1:, 1:] = -2 * np.eye(m, dtype=np.int64) - h.adjacency()

    cross = np.zeros((b, b), dtype=np.int64)
    cross[0, 1:] = 1
    cross[1:, 0] = 1
    cross[1:, 1:] = 2

    k = g.n
    return (
        np.kron(dg, ones_b)
        + np.kron(np.eye(k, dtype=np.int64), local)
        + np.kron(np.ones((k, k), dtype=np.int64), cross)
    )


# -- edge-list text format -----------------------------------------------------

def read_edge_list(text: str, label: str | None = None) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines (0-based).

    Blank lines and ``#`` comments are ignored. Errors report the 1-based
    line number.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphSpecError(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphSpecError(f"line {lineno}: vertex count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise GraphSpecError(f"line {lineno}: vertex count must be positive")
            continue
        if len(parts) != 2:
            raise GraphSpecError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphSpecError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphSpecError(f"line {lineno}: vertex index out of range [0, {n}) in {raw!r}")
        if u == v:
            raise GraphSpecError(f"line {lineno}: loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        raise GraphSpecError("edge list is empty (missing 'n <count>' header)")
    return Graph(n, edges, label)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
