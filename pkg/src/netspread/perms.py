"""Vertex permutations, permutation groups, and graph automorphisms.

Groups come in two flavors: explicit element lists (small or structured
groups such as a cycle's rotations/reflections) and symbolic forms for
groups too large to materialize (the full symmetric group, the
stabilizer of one vertex). Symbolic forms keep exact big-integer orders
so validity checks stay exact at any n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial
from typing import Iterator

import numpy as np

from .errors import GuardExceededError
from .graphs import Graph, build_graph, is_connected

__all__ = [
    "Permutation",
    "PermGroup",
    "apply_to_infection",
    "apply_to_graph",
    "automorphism_group",
    "product_group_is_full",
    "is_vertex_transitive",
    "orbit",
]

SYMMETRIC = "symmetric"
STABILIZER = "stabilizer"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}, stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        seen = [False] * n
        for w in self.image:
            if not 0 <= w < n or seen[w]:
                raise ValueError(f"image {self.image} is not a bijection of 0..{n - 1}")
            seen[w] = True

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, v: int) -> int:
        return self.image[v]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.image[w] for w in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    @cached_property
    def as_array(self) -> np.ndarray:
        arr = np.asarray(self.image, dtype=np.int64)
        arr.setflags(write=False)
        return arr


def apply_to_infection(pi: Permutation, iv):
    """Relabel an infection snapshot: vertex pi(v) gets v's old status."""
    from .spreading import InfectionVector

    if pi.n != iv.n:
        raise ValueError("permutation size does not match snapshot size")
    new = np.empty(iv.n, dtype=np.int8)
    new[pi.as_array] = iv.status
    return InfectionVector(new)


def apply_to_graph(pi: Permutation, g: Graph) -> Graph:
    """Relabel a graph: edge (u, v) becomes (pi(u), pi(v))."""
    if pi.n != g.n:
        raise ValueError("permutation size does not match graph size")
    labels = None
    if g.labels is not None:
        moved = [""] * g.n
        for v in range(g.n):
            moved[pi(v)] = g.labels[v]
        labels = tuple(moved)
    return build_graph(g.n, [(pi(u), pi(v)) for u, v in g.edges], labels=labels)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on {0..n-1}.

    kind is "explicit" (elements materialized), "symmetric" (all of
    S_n), or "stabilizer" (every permutation fixing one vertex).
    order is always the exact group order as a Python int.
    """

    n: int
    order: int
    kind: str
    elements: tuple[Permutation, ...] | None = field(default=None, compare=False)
    fixed_vertex: int | None = None

    ENUM_CAP = 10**6

    def __post_init__(self) -> None:
        if self.kind == EXPLICIT:
            if self.elements is None or len(self.elements) != self.order:
                raise ValueError("explicit group must carry exactly `order` elements")
        elif self.kind == SYMMETRIC:
            if self.order != factorial(self.n):
                raise ValueError("symmetric group order must be n!")
        elif self.kind == STABILIZER:
            if self.fixed_vertex is None or not 0 <= self.fixed_vertex < self.n:
                raise ValueError("stabilizer needs a fixed vertex in range")
            if self.order != factorial(self.n - 1):
                raise ValueError("stabilizer order must be (n-1)!")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def explicit(cls, n: int, elements) -> "PermGroup":
        elems = tuple(sorted(elements, key=lambda p: p.image))
        return cls(n=n, order=len(elems), kind=EXPLICIT, elements=elems)

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        return cls(n=n, order=factorial(n), kind=SYMMETRIC)

    @classmethod
    def vertex_stabilizer(cls, n: int, v: int) -> "PermGroup":
        return cls(n=n, order=factorial(n - 1), kind=STABILIZER, fixed_vertex=v)

    # -- queries -----------------------------------------------------------

    @property
    def is_full_symmetric(self) -> bool:
        return self.kind == SYMMETRIC or self.order == factorial(self.n)

    @cached_property
    def _image_set(self) -> frozenset[tuple[int, ...]]:
        assert self.elements is not None
        return frozenset(p.image for p in self.elements)

    def contains(self, pi: Permutation) -> bool:
        if pi.n != self.n:
            return False
        if self.kind == SYMMETRIC:
            return True
        if self.kind == STABILIZER:
            return pi(self.fixed_vertex) == self.fixed_vertex
        return pi.image in self._image_set

    def iter_elements(self, cap: int | None = None) -> Iterator[Permutation]:
        """Yield every element; raises GuardExceededError above the cap."""
        limit = self.ENUM_CAP if cap is None else cap
        if self.order > limit:
            raise GuardExceededError(
                f"group of order {self.order} exceeds enumeration cap {limit}"
            )
        if self.kind == EXPLICIT:
            yield from self.elements
        elif self.kind == SYMMETRIC:
            for image in itertools.permutations(range(self.n)):
                yield Permutation(image)
        else:
            v = self.fixed_vertex
            others = [w for w in range(self.n) if w != v]
            for placed in itertools.permutations(others):
                image = [0] * self.n
                image[v] = v
                for w, target in zip(others, placed):
                    image[w] = target
                yield Permutation(tuple(image))

    def orbit_of(self, v: int) -> frozenset[int]:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        if self.kind == SYMMETRIC:
            return frozenset(range(self.n))
        if self.kind == STABILIZER:
            if v == self.fixed_vertex:
                return frozenset({v})
            return frozenset(w for w in range(self.n) if w != self.fixed_vertex)
        # explicit groups are closed, so one sweep gives the full orbit
        return frozenset(p(v) for p in self.elements)


def orbit(group: PermGroup, v: int) -> frozenset[int]:
    """The orbit of vertex v under the group."""
    return group.orbit_of(v)


# -- automorphisms ------------------------------------------------------------


def automorphism_group(g: Graph, n_max: int = 10) -> PermGroup:
    """The full automorphism group of g.

    Structured families (empty, complete, star, cycle) are recognized and
    returned in closed form at any size. Everything else runs an exact
    backtracking search, guarded by n_max.
    """
    n, m = g.n, g.num_edges
    if m == 0 or m == comb(n, 2):
        return PermGroup.symmetric(n)
    degs = g.degrees
    if n >= 3:
        hubs = [v for v in range(n) if degs[v] == n - 1]
        if len(hubs) == 1 and all(degs[v] == 1 for v in range(n) if v != hubs[0]):
            return PermGroup.vertex_stabilizer(n, hubs[0])
        if all(d == 2 for d in degs) and is_connected(g):
            return _dihedral_group(g)
    if n > n_max:
        raise GuardExceededError(
            f"automorphism search guarded at n_max={n_max}, got n={n} "
            "with no recognized structure"
        )
    return PermGroup.explicit(n, _search_automorphisms(g))


def _dihedral_group(g: Graph) -> PermGroup:
    """Rotations and reflections of a single cycle, built along its order."""
    n = g.n
    order = [0, g.adjacency[0][0]]
    while len(order) < n:
        a, b = order[-2], order[-1]
        nxt = [w for w in g.adjacency[b] if w != a]
        order.append(nxt[0])
    pos = order
    elems = []
    for s in range(n):
        rot = [0] * n
        ref = [0] * n
        for i in range(n):
            rot[pos[i]] = pos[(i + s) % n]
            ref[pos[i]] = pos[(s - i) % n]
        elems.append(Permutation(tuple(rot)))
        elems.append(Permutation(tuple(ref)))
    return PermGroup.explicit(n, elems)


def _search_automorphisms(g: Graph) -> list[Permutation]:
    """Exact backtracking over images, pruned by degree and partial adjacency."""
    n = g.n
    degs = g.degrees
    adj = g.adjacency_sets
    image = [-1] * n
    used = [False] * n
    found: list[Permutation] = []

    def extend(v: int) -> None:
        if v == n:
            found.append(Permutation(tuple(image)))
            return
        for w in range(n):
            if used[w] or degs[w] != degs[v]:
                continue
            ok = True
            for u in range(v):
                if (u in adj[v]) != (image[u] in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return found


def is_vertex_transitive(g: Graph, n_max: int = 10) -> bool:
    """True when Aut(g) has a single vertex orbit."""
    return len(orbit(automorphism_group(g, n_max=n_max), 0)) == g.n


# -- validity condition --------------------------------------------------------


def product_group_is_full(p1: PermGroup, p0: PermGroup) -> bool:
    """Whether {a.compose(b)} over a in p1, b in p0 is all of S_n.

    Uses |p1 p0| = |p1| |p0| / |p1 ∩ p0| with exact integers; the
    product set is the whole symmetric group iff that count equals n!.
    """
    if p1.n != p0.n:
        raise ValueError("groups act on different vertex sets")
    n = p1.n
    if p1.is_full_symmetric or p0.is_full_symmetric:
        return True
    inter = _intersection_order(p1, p0)
    num = p1.order * p0.order
    if num % inter:
        raise RuntimeError("intersection does not divide product order")
    return num // inter == factorial(n)


def _intersection_order(a: PermGroup, b: PermGroup) -> int:
    if a.kind == STABILIZER and b.kind == STABILIZER:
        if a.fixed_vertex == b.fixed_vertex:
            return factorial(a.n - 1)
        return factorial(a.n - 2)
    # at least one side is explicit here (symmetric was handled by caller);
    # iterate the explicit side and membership-test the other.
    if a.kind == EXPLICIT and b.kind == EXPLICIT and b.order < a.order:
        a, b = b, a
    if a.kind != EXPLICIT:
        a, b = b, a
    assert a.kind == EXPLICIT
    return sum(1 for p in a.elements if b.contains(p))
