"""Independent brute-force oracles the tests check the package against.

Nothing here imports package internals beyond the Graph container; every
computation re-derives its answer from first principles (recursive
enumeration, subset search, permutation filtering) so agreement with
the package is evidence, not tautology.
"""

from __future__ import annotations

import itertools
from math import comb, fsum


def spread_law(g, eta: float, k: int) -> dict[frozenset, float]:
    """Exact law of the infected set after k sequential infections.

    Recomputes every step probability directly: an uninfected vertex's
    weight is 1 + eta * (infected neighbors), normalized over all
    currently uninfected vertices.
    """
    n = g.n
    adj = [set(g.neighbors(v)) for v in range(n)]
    law: dict[frozenset, float] = {}

    def recurse(infected: tuple, prob: float) -> None:
        if len(infected) == k:
            key = frozenset(infected)
            law[key] = law.get(key, 0.0) + prob
            return
        inside = set(infected)
        weights = {}
        for v in range(n):
            if v not in inside:
                weights[v] = 1.0 + eta * sum(1 for u in adj[v] if u in inside)
        total = fsum(weights.values())
        for v, w in weights.items():
            recurse(infected + (v,), prob * (w / total))

    recurse((), 1.0)
    return law


def uniform_subset_law(n: int, k: int) -> dict[frozenset, float]:
    """Uniform law over k-subsets (what uniform relabeling induces)."""
    p = 1.0 / comb(n, k)
    return {frozenset(s): p for s in itertools.combinations(range(n), k)}


def statistic_law(law: dict[frozenset, float], stat_fn) -> dict[float, float]:
    """Push a set-law through a statistic of the infected set."""
    out: dict[float, float] = {}
    for subset, p in law.items():
        v = float(stat_fn(subset))
        out[v] = out.get(v, 0.0) + p
    return out


def total_variation(a: dict[float, float], b: dict[float, float]) -> float:
    keys = set(a) | set(b)
    return 0.5 * sum(abs(a.get(x, 0.0) - b.get(x, 0.0)) for x in keys)


def steiner_optimum(g, terminals) -> int:
    """Exact Steiner weight: smallest connected superset of the terminals.

    Enumerates vertex supersets by size; tree weight is |S| - 1.
    Exponential; intended for n <= 10.
    """
    terms = sorted(set(terminals))
    if len(terms) <= 1:
        return 0
    n = g.n
    others = [v for v in range(n) if v not in terms]
    adj = [set(g.neighbors(v)) for v in range(n)]

    def connected(vertices: set) -> bool:
        start = next(iter(vertices))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u] & vertices:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vertices)

    for extra in range(len(others) + 1):
        for added in itertools.combinations(others, extra):
            candidate = set(terms) | set(added)
            if connected(candidate):
                return len(candidate) - 1
    raise AssertionError("terminals not connected in any superset")


def brute_automorphisms(g) -> set[tuple[int, ...]]:
    """All relabelings preserving the edge set, by filtering S_n."""
    edges = {frozenset(e) for e in g.edges}
    autos = set()
    for image in itertools.permutations(range(g.n)):
        if {frozenset((image[u], image[v])) for u, v in g.edges} == edges:
            autos.add(image)
    return autos


def hypergeometric_pmf(n: int, good: int, draws: int, x: int) -> float:
    """P(X = x) drawing `draws` without replacement from `good` marked of n."""
    if x < 0 or x > draws or x > good or draws - x > n - good:
        return 0.0
    return comb(good, x) * comb(n - good, draws - x) / comb(n, draws)


def cascade_orderings(g, k: int, u: int, v: int) -> int:
    """Growth orderings containing u and v, by direct permutation filtering."""
    if k >= g.n or k < 2:
        return 0
    adj = [set(g.neighbors(w)) for w in range(g.n)]
    count = 0
    for subset in itertools.combinations(range(g.n), k):
        if u not in subset or v not in subset:
            continue
        for order in itertools.permutations(subset):
            ok = True
            placed: set[int] = set()
            for i, w in enumerate(order):
                if i and not (adj[w] & placed):
                    ok = False
                    break
                placed.add(w)
            count += ok
    return count


def path_law_probability(g, eta: float, order: tuple[int, ...]) -> float:
    """Probability of one ordered infection path, recomputed from scratch."""
    n = g.n
    adj = [set(g.neighbors(v)) for v in range(n)]
    inside: set[int] = set()
    prob = 1.0
    for v in order:
        weights = {
            x: 1.0 + eta * sum(1 for u in adj[x] if u in inside)
            for x in range(n)
            if x not in inside
        }
        prob *= weights[v] / fsum(weights.values())
        inside.add(v)
    return prob
