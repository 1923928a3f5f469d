"""Immutable simple graphs, generators, and edge-list IO.

Vertices are integers 0..n-1. Edges are undirected, stored once as
(u, v) with u < v, lexicographically sorted. Optional string labels are
display metadata only and never affect structural equality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, inf, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError
from .rng import substream

__all__ = [
    "Graph",
    "build_graph",
    "empty_graph",
    "complete_graph",
    "star_graph",
    "cycle_graph",
    "path_graph",
    "torus_grid",
    "erdos_renyi",
    "two_block",
    "correlated_pair",
    "generate",
    "from_spec",
    "bfs_distances",
    "eccentricity",
    "is_connected",
    "load_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1.

    Attributes
    ----------
    n : int
        Number of vertices (>= 1).
    edges : tuple of (int, int)
        Canonical edge list: each pair has u < v, no duplicates,
        sorted lexicographically.
    labels : tuple of str, optional
        Display names, one per vertex. Excluded from equality and hashing.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        prev = (-1, -1)
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) not canonical for n={self.n}")
            if (u, v) <= prev:
                raise ValueError(f"edge list not sorted/unique at ({u}, {v})")
            prev = (u, v)
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("labels length must equal n")
            if len(set(self.labels)) != self.n:
                raise ValueError("labels must be distinct")

    # -- basic accessors ------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuples, one per vertex."""
        neigh: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(sorted(vs)) for vs in neigh)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(vs) for vs in self.adjacency)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoints as two int64 arrays (empty-safe)."""
        if not self.edges:
            z = np.empty(0, dtype=np.int64)
            return z, z.copy()
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(vs) for vs in self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return v in self.adjacency_sets[u]

    # -- labels ----------------------------------------------------------

    def label_of(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {self.label_of(v): v for v in range(self.n)}

    def index_of(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    # -- distances --------------------------------------------------------

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances, float64 with inf for unreachable.

        Cached; intended for graphs up to a few thousand vertices. Larger
        graphs should use bfs_distances per source.
        """
        mat = np.full((self.n, self.n), inf, dtype=np.float64)
        for s in range(self.n):
            mat[s] = bfs_distances(self, s)
        return mat


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
) -> Graph:
    """Construct a Graph, normalizing the edge list.

    Self-loops are rejected; duplicate edges (in either orientation)
    collapse to one.
    """
    canon: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u} not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        canon.add((u, v) if u < v else (v, u))
    lab = tuple(labels) if labels is not None else None
    return Graph(n=n, edges=tuple(sorted(canon)), labels=lab)


# -- deterministic families ------------------------------------------------


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(n: int) -> Graph:
    """Star with center 0 and leaves 1..n-1. Requires n >= 2."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return build_graph(n, [(0, v) for v in range(1, n)])


def cycle_graph(n: int) -> Graph:
    """Cycle 0-1-...-(n-1)-0. Requires n >= 3."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return build_graph(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    """Path 0-1-...-(n-1)."""
    return build_graph(n, [(v, v + 1) for v in range(n - 1)])


def torus_grid(dims: Sequence[int]) -> Graph:
    """Torus grid: a cycle along every axis (wrap-around). Each dim >= 3.

    Vertices are row-major indices over the coordinate box.
    """
    dims = [int(d) for d in dims]
    if not dims:
        raise ValueError("torus needs at least one dimension")
    if any(d < 3 for d in dims):
        raise ValueError(f"torus dims must all be >= 3, got {dims}")
    n = prod(dims)
    strides = [prod(dims[a + 1 :]) for a in range(len(dims))]

    def coords(v: int) -> list[int]:
        out = []
        for a, d in enumerate(dims):
            out.append((v // strides[a]) % d)
        return out

    edges = []
    for v in range(n):
        cs = coords(v)
        for a, d in enumerate(dims):
            w = v + strides[a] * ((cs[a] + 1) % d - cs[a])
            edges.append((v, w))
    return build_graph(n, edges)


# -- random families --------------------------------------------------------


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each of the C(n,2) pairs is an edge independently."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = substream(seed)
    edges: list[tuple[int, int]] = []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - 1 - u) < p)
        edges.extend((u, u + 1 + int(h)) for h in hits)
    return build_graph(n, edges)


def two_block(n: int, p_in: float, p_out: float, seed: int) -> Graph:
    """Two-block stochastic block model; first ceil(n/2) vertices in block 0."""
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {p}")
    half = (n + 1) // 2
    rng = substream(seed)
    edges: list[tuple[int, int]] = []
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        vs = np.arange(u + 1, n)
        same = (vs < half) == (u < half)
        thresh = np.where(same, p_in, p_out)
        for h in np.flatnonzero(draws < thresh):
            edges.append((u, int(vs[h])))
    return build_graph(n, edges)


def correlated_pair(n: int, p: float, gamma: float, seed: int) -> tuple[Graph, Graph]:
    """Two marginally-G(n,p) graphs with P(edge in both) = gamma * p per pair.

    Requires max(0, 2 - 1/p) <= gamma <= 1 so all four joint cell
    probabilities are valid. gamma = 1 returns identical graphs.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    if p > 0 and gamma < 2.0 - 1.0 / p - 1e-12:
        raise ValueError(f"gamma={gamma} too small for p={p}: pairs with neither edge would have negative probability")
    rng = substream(seed)
    edges0: list[tuple[int, int]] = []
    edges1: list[tuple[int, int]] = []
    both, solo = gamma * p, p - gamma * p
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        for h in np.flatnonzero(draws < both + 2 * solo):
            v = u + 1 + int(h)
            d = draws[h]
            if d < both:
                edges0.append((u, v))
                edges1.append((u, v))
            elif d < both + solo:
                edges0.append((u, v))
            else:
                edges1.append((u, v))
    return build_graph(n, edges0), build_graph(n, edges1)


_FIXED_KINDS = {
    "empty": empty_graph,
    "complete": complete_graph,
    "star": star_graph,
    "cycle": cycle_graph,
    "path": path_graph,
}


def generate(kind: str, *args, **kwargs) -> Graph:
    """Dispatch to a named generator: empty|complete|star|cycle|path|torus|er|two-block."""
    if kind in _FIXED_KINDS:
        return _FIXED_KINDS[kind](*args, **kwargs)
    if kind == "torus":
        return torus_grid(*args, **kwargs)
    if kind == "er":
        return erdos_renyi(*args, **kwargs)
    if kind in ("two-block", "two_block", "sbm"):
        return two_block(*args, **kwargs)
    raise ValueError(f"unknown graph kind {kind!r}")


def from_spec(spec: str) -> Graph:
    """Parse a compact graph spec string.

    Forms: ``empty:N``, ``complete:N``, ``star:N``, ``cycle:N``,
    ``path:N``, ``torus:AxB[xC...]``, ``er:N:P:SEED``,
    ``two-block:N:PIN:POUT:SEED``, ``file:PATH`` (edge-list file).
    """
    kind, _, rest = spec.partition(":")
    try:
        if kind == "file":
            if not rest:
                raise ValueError("file: needs a path")
            with open(rest, "r", encoding="utf-8") as fh:
                return load_edge_list(fh.read())
        if kind in _FIXED_KINDS:
            return _FIXED_KINDS[kind](int(rest))
        if kind == "torus":
            return torus_grid([int(d) for d in rest.split("x")])
        if kind == "er":
            n, p, seed = rest.split(":")
            return erdos_renyi(int(n), float(p), int(seed))
        if kind in ("two-block", "sbm"):
            n, p_in, p_out, seed = rest.split(":")
            return two_block(int(n), float(p_in), float(p_out), int(seed))
    except (ValueError, OSError) as exc:
        if isinstance(exc, ValueError) and "unknown graph kind" in str(exc):
            raise
        raise ParseError(f"bad graph spec {spec!r}: {exc}") from exc
    raise ParseError(f"unknown graph kind {kind!r} in spec {spec!r}")


# -- traversal ---------------------------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distances from source to every vertex; inf when unreachable."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist: list[float] = [inf] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in adj[u]:
            if dist[w] == inf:
                dist[w] = du + 1
                queue.append(w)
    return dist


def eccentricity(g: Graph, v: int) -> float:
    """max_u d(v, u); inf when g is disconnected."""
    return max(bfs_distances(g, v))


def is_connected(g: Graph) -> bool:
    return eccentricity(g, 0) < inf


# -- IO ----------------------------------------------------------------------


def load_edge_list(text: str) -> Graph:
    """Parse an edge-list file: one ``label label`` pair per line.

    Blank lines and lines starting with '#' are skipped. Vertices are
    numbered by first appearance; duplicate edges collapse. Self-loops
    and lines without exactly two tokens raise ParseError with the line
    number.
    """
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two labels, got {len(parts)}")
        a, b = parts
        if a == b:
            raise ParseError(f"line {lineno}: self-loop on {a!r} not allowed")
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(index)
        edges.append((index[a], index[b]))
    if not index:
        raise ParseError("edge list has no edges")
    labels = tuple(sorted(index, key=index.__getitem__))
    return build_graph(len(index), edges, labels=labels)


def expected_edge_count(kind: str, n: int, **params) -> float:
    """Closed-form (expected) edge counts for the named families."""
    if kind == "empty":
        return 0
    if kind == "complete":
        return comb(n, 2)
    if kind == "star":
        return n - 1
    if kind == "cycle":
        return n
    if kind == "path":
        return n - 1
    if kind == "torus":
        dims = params["dims"]
        return prod(dims) * len(dims)
    if kind == "er":
        return params["p"] * comb(n, 2)
    raise ValueError(f"no closed form for kind {kind!r}")
