"""Infection snapshots, the sequential spreading model, and censoring.

The spreading process infects one vertex per step: after m infections,
an uninfected vertex v is next with probability proportional to
1 + eta * (number of already-infected neighbors of v). eta = 0 is
uniform growth on any graph; large eta clings to the infected boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial, fsum
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import GuardExceededError, ParseError
from .graphs import Graph
from .rng import as_generator

__all__ = [
    "UNINFECTED",
    "INFECTED",
    "CENSORED",
    "InfectionVector",
    "InfectionPath",
    "SpreadParams",
    "infection_from_infected",
    "simulate_spread",
    "path_probability",
    "censor_uniform",
    "censor_fixed",
    "ising_sample_exact",
    "infection_law_exact",
    "write_status_file",
    "read_status_file",
    "align_to_graph",
]

UNINFECTED, INFECTED, CENSORED = 0, 1, 2
_STATUS_TO_CHAR = {UNINFECTED: "0", INFECTED: "1", CENSORED: "*"}
_CHAR_TO_STATUS = {"0": UNINFECTED, "1": INFECTED, "*": CENSORED}


@dataclass(frozen=True, eq=False)
class InfectionVector:
    """A snapshot of vertex statuses: 0 uninfected, 1 infected, 2 censored."""

    status: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.status, dtype=np.int8)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("status must be a non-empty 1-d array")
        if not np.isin(arr, (UNINFECTED, INFECTED, CENSORED)).all():
            raise ValueError("statuses must be 0, 1, or 2")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "status", arr)

    @property
    def n(self) -> int:
        return int(self.status.size)

    @cached_property
    def k(self) -> int:
        """Number of infected vertices."""
        return int(np.count_nonzero(self.status == INFECTED))

    @cached_property
    def c(self) -> int:
        """Number of censored vertices."""
        return int(np.count_nonzero(self.status == CENSORED))

    @cached_property
    def infected(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self.status == INFECTED))

    @cached_property
    def censored(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self.status == CENSORED))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InfectionVector):
            return NotImplemented
        return self.status.shape == other.status.shape and bool(
            (self.status == other.status).all()
        )

    def __hash__(self) -> int:
        return hash(self.status.tobytes())

    def __repr__(self) -> str:
        body = "".join(_STATUS_TO_CHAR[int(s)] for s in self.status)
        return f"InfectionVector({body!r})"


def infection_from_infected(
    n: int, infected: Iterable[int], censored: Iterable[int] = ()
) -> InfectionVector:
    """Build a snapshot from index sets (must not overlap)."""
    status = np.zeros(n, dtype=np.int8)
    inf_idx = list(infected)
    cen_idx = list(censored)
    status[inf_idx] = INFECTED
    status[cen_idx] = CENSORED
    if len(set(inf_idx) & set(cen_idx)) > 0:
        raise ValueError("a vertex cannot be both infected and censored")
    return InfectionVector(status)


@dataclass(frozen=True)
class InfectionPath:
    """The ordered sequence of infected vertices."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("path vertices must be distinct")
        if not self.order:
            raise ValueError("path must infect at least one vertex")

    @property
    def k(self) -> int:
        return len(self.order)

    def to_infection(self, n: int) -> InfectionVector:
        if any(not 0 <= v < n for v in self.order):
            raise ValueError("path vertex out of range")
        return infection_from_infected(n, self.order)


@dataclass(frozen=True)
class SpreadParams:
    """eta >= 0 is the neighbor-affinity strength; k the infections to draw."""

    eta: float
    k: int

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


def simulate_spread(
    g: Graph, params: SpreadParams, seed_or_rng: int | np.random.Generator
) -> InfectionPath:
    """Draw one infection path of length k from the sequential model.

    Each step draws the next vertex with a single uniform against the
    cumulative weights in fixed vertex order, so results are
    reproducible across platforms.
    """
    n = g.n
    if params.k > n:
        raise ValueError(f"cannot infect k={params.k} of n={n} vertices")
    rng = as_generator(seed_or_rng)
    eta = params.eta
    inf_neighbors = np.zeros(n, dtype=np.float64)
    weights = np.ones(n, dtype=np.float64)
    order: list[int] = []
    for _ in range(params.k):
        cum = np.cumsum(weights)
        u = rng.random() * cum[-1]
        v = int(np.searchsorted(cum, u, side="left"))
        order.append(v)
        weights[v] = 0.0
        for w in g.adjacency[v]:
            inf_neighbors[w] += 1.0
            if weights[w] > 0.0:
                weights[w] = 1.0 + eta * inf_neighbors[w]
    return InfectionPath(tuple(order))


def path_probability(g: Graph, eta: float, path: InfectionPath) -> float:
    """Exact probability of observing this ordered path.

    Step t contributes (1 + eta*a_t) / ((n+1-t) + eta*B_t) where a_t is
    the count of already-infected neighbors of the new vertex and B_t
    the size of the infected/uninfected edge boundary before the step.
    """
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    n = g.n
    if any(not 0 <= v < n for v in path.order):
        raise ValueError("path vertex out of range")
    infected: set[int] = set()
    boundary = 0
    prob = 1.0
    for t, v in enumerate(path.order, start=1):
        a = sum(1 for w in g.adjacency[v] if w in infected)
        prob *= (1.0 + eta * a) / ((n + 1 - t) + eta * boundary)
        infected.add(v)
        boundary += g.degree(v) - 2 * a
    return prob


def censor_uniform(
    iv: InfectionVector, c: int, seed_or_rng: int | np.random.Generator
) -> InfectionVector:
    """Censor c vertices chosen uniformly without replacement."""
    if iv.c:
        raise ValueError("snapshot is already censored")
    if not 0 <= c <= iv.n:
        raise ValueError(f"c={c} out of range for n={iv.n}")
    rng = as_generator(seed_or_rng)
    chosen = rng.permutation(iv.n)[:c]
    status = iv.status.copy()
    status[chosen] = CENSORED
    return InfectionVector(status)


def censor_fixed(iv: InfectionVector, censor_set: Iterable[int]) -> InfectionVector:
    """Censor exactly the given vertices."""
    if iv.c:
        raise ValueError("snapshot is already censored")
    idx = sorted(set(int(v) for v in censor_set))
    if idx and not (0 <= idx[0] and idx[-1] < iv.n):
        raise ValueError("censor vertex out of range")
    status = iv.status.copy()
    status[idx] = CENSORED
    return InfectionVector(status)


def ising_sample_exact(
    g: Graph,
    eta: float,
    k: int,
    seed_or_rng: int | np.random.Generator,
    cap: int = 10**6,
) -> InfectionVector:
    """Sample a k-subset with probability proportional to exp(eta * edges inside).

    Exact enumeration over all C(n, k) subsets (guarded by cap); no
    Markov chain approximation. Weights are computed relative to the
    maximum exponent so large eta cannot overflow.
    """
    n = g.n
    if not 0 < k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    total = comb(n, k)
    if total > cap:
        raise GuardExceededError(
            f"exact sampling needs C({n},{k}) = {total} subset weights, cap is {cap}"
        )
    rng = as_generator(seed_or_rng)
    subsets = list(itertools.combinations(range(n), k))
    eu, ev = g.edge_arrays
    exponents = np.empty(len(subsets), dtype=np.float64)
    member = np.zeros(n, dtype=bool)
    for i, sub in enumerate(subsets):
        member[list(sub)] = True
        exponents[i] = eta * int(np.count_nonzero(member[eu] & member[ev]))
        member[list(sub)] = False
    weights = np.exp(exponents - exponents.max())
    cum = np.cumsum(weights)
    u = rng.random() * cum[-1]
    pick = subsets[int(np.searchsorted(cum, u, side="left"))]
    return infection_from_infected(n, pick)


# -- status file IO -------------------------------------------------------------


def write_status_file(fh: IO[str], iv: InfectionVector, labels: Sequence[str] | None = None) -> None:
    """Write one ``label status`` line per vertex (status in {0, 1, *})."""
    if labels is not None and len(labels) != iv.n:
        raise ValueError("labels length must equal n")
    for v in range(iv.n):
        lab = labels[v] if labels is not None else str(v)
        fh.write(f"{lab} {_STATUS_TO_CHAR[int(iv.status[v])]}\n")


def read_status_file(text: str) -> tuple[tuple[str, ...], np.ndarray]:
    """Parse a status file into (labels, status codes).

    Blank lines and '#' comments are skipped; anything else must be a
    ``label status`` pair with status in {0, 1, *}. Duplicate labels and
    malformed lines raise ParseError with the line number.
    """
    labels: list[str] = []
    codes: list[int] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'label status', got {len(parts)} tokens")
        lab, code = parts
        if code not in _CHAR_TO_STATUS:
            raise ParseError(f"line {lineno}: status must be 0, 1 or *, got {code!r}")
        if lab in seen:
            raise ParseError(f"line {lineno}: duplicate label {lab!r}")
        seen.add(lab)
        labels.append(lab)
        codes.append(_CHAR_TO_STATUS[code])
    if not labels:
        raise ParseError("status file has no entries")
    return tuple(labels), np.asarray(codes, dtype=np.int8)


def align_to_graph(g: Graph, labels: Sequence[str], codes: np.ndarray) -> InfectionVector:
    """Reorder file statuses into the graph's vertex order by label.

    The file must cover exactly the graph's label set.
    """
    if len(labels) != g.n:
        raise ParseError(f"status file has {len(labels)} vertices, graph has {g.n}")
    status = np.zeros(g.n, dtype=np.int8)
    for lab, code in zip(labels, codes):
        try:
            status[g.index_of(lab)] = code
        except KeyError:
            raise ParseError(f"status file label {lab!r} not in graph") from None
    return InfectionVector(status)


def infection_law_exact(g: Graph, eta: float, k: int, cap: int = 10**6):
    """Exact snapshot law: dict mapping infected-set tuple -> probability.

    Sums path probabilities over all k! orderings of each k-subset.
    Guarded by cap on the total number of paths.
    """
    n = g.n
    n_paths = comb(n, k) * factorial(k)
    if n_paths > cap:
        raise GuardExceededError(
            f"exact law needs {n_paths} path evaluations, cap is {cap}"
        )
    law: dict[tuple[int, ...], float] = {}
    for sub in itertools.combinations(range(n), k):
        law[sub] = fsum(
            path_probability(g, eta, InfectionPath(p))
            for p in itertools.permutations(sub)
        )
    return law
