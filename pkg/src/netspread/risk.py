"""Closed-form risk bounds, cascade counting, baseline thresholds, and
the Monte-Carlo risk harness.

A "risk" here is Type I + Type II error. Bound evaluators return the
printed formulas verbatim; when a formula's inner bracket goes negative
(the derivation's positivity assumption fails) they return the trivial
bound alpha + 1 flagged vacuous instead of squaring a negative number
into a fake guarantee.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import exp, log, sqrt
import os

from .errors import GuardExceededError
from .graphs import Graph
from .permtest import MODE_CENSOR_FIXING, TestConfig, TestResult, conditional_mc_test, mc_test
from .rng import substream
from .spreading import SpreadParams, censor_uniform, simulate_spread
from .stats import StatisticSpec

__all__ = [
    "RiskInputs",
    "BoundValue",
    "MultiSpreadBounds",
    "RiskEstimate",
    "h_eta",
    "cascade_count",
    "cascade_count_cycle",
    "min_cascade_count",
    "star_null_risk_bound",
    "center_test_risk_bounds",
    "infection_reach_probability",
    "multi_spread_bounds",
    "line_cycle_bound",
    "tb_threshold",
    "tt_threshold",
    "baseline_diagnosis",
    "RiskCurve",
    "mc_risk",
    "mc_risk_curve",
    "resolve_threads",
]


@dataclass(frozen=True)
class RiskInputs:
    """Shared parameters of the closed-form bounds."""

    n: int
    k: int
    c: int = 0
    eta: float = 0.0
    alpha: float = 0.05
    D: int = 2
    m: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0 <= self.c <= self.n - self.k:
            raise ValueError(f"need 0 <= c <= n-k, got c={self.c}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.D < 1:
            raise ValueError(f"degree must be >= 1, got {self.D}")
        if self.m < 1:
            raise ValueError(f"spread count must be >= 1, got {self.m}")


@dataclass(frozen=True)
class BoundValue:
    """A risk bound; vacuous means the formula's bracket was negative
    and the value is the trivial alpha + 1."""

    value: float
    vacuous: bool = False

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class MultiSpreadBounds:
    """Bounds for the averaged statistics over m independent spreads."""

    avg_edges: BoundValue
    avg_center: BoundValue


def h_eta(n: int, k: int, eta: float, nt_min: float) -> float:
    """prod_{t=1}^{k-1} eta / (n - t + eta * nt_min); 1 when k = 1.

    nt_min lower-bounds the infected/uninfected edge boundary along the
    spread (2 on a cycle). As eta grows the product tends to
    nt_min^(-(k-1)).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = 1.0
    for t in range(1, k):
        out *= eta / (n - t + eta * nt_min)
    return out


# -- cascades ------------------------------------------------------------------


def cascade_count(g: Graph, k: int, u: int, v: int, n_guard: int = 10, k_guard: int = 6) -> int:
    """Number of k-step growth orderings whose vertex set contains u and v.

    An ordering qualifies when every vertex after the first is adjacent
    to some earlier one, and at least one vertex stays out (k < n).
    Brute-force enumeration, guarded.
    """
    n = g.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise ValueError("u, v must be distinct vertices")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n > n_guard or k > k_guard:
        raise GuardExceededError(
            f"cascade enumeration guarded at n <= {n_guard}, k <= {k_guard}"
        )
    if k >= n or k < 2:
        return 0
    adj = g.adjacency_sets
    total = 0
    for subset in itertools.combinations(range(n), k):
        ss = set(subset)
        if u not in ss or v not in ss:
            continue
        total += _orderings_with_growth(adj, subset)
    return total


def _orderings_with_growth(adj, subset: tuple[int, ...]) -> int:
    """Orderings of subset where each later vertex touches an earlier one."""
    members = frozenset(subset)

    @lru_cache(maxsize=None)
    def count(placed: frozenset) -> int:
        if len(placed) == len(members):
            return 1
        total = 0
        for w in members - placed:
            if not placed or any(x in adj[w] for x in placed):
                total += count(placed | {w})
        return total

    result = count(frozenset())
    count.cache_clear()
    return result


def cascade_count_cycle(k: int) -> int:
    """Closed form on a cycle for any adjacent pair: (k-1) * 2^(k-1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (k - 1) * (1 << (k - 1))


def min_cascade_count(g: Graph, k: int, n_guard: int = 10, k_guard: int = 6) -> int:
    """min over edges (u, v) of cascade_count(g, k, u, v)."""
    if g.num_edges == 0:
        raise ValueError("graph has no edges")
    return min(cascade_count(g, k, u, v, n_guard, k_guard) for u, v in g.edges)


# -- closed-form bounds ----------------------------------------------------------


def star_null_risk_bound(
    inputs: RiskInputs, c_k: float, d: int | None = None, nt_min: float = 2.0
) -> BoundValue:
    """Risk bound for the edges-within test against a star-free null on a
    connected vertex-transitive degree-d alternative.

    c_k is the minimum cascade count over edges; nt_min the boundary
    lower bound entering h_eta (2 for the cycle).
    """
    n, k, eta, alpha = inputs.n, inputs.k, inputs.eta, inputs.alpha
    dd = inputs.D if d is None else d
    if n < 2:
        raise ValueError("bound needs n >= 2")
    bracket = (
        (dd / 2.0) * c_k * h_eta(n, k, eta, nt_min)
        - dd * k * (k - 1) / (2.0 * (n - 1))
        - sqrt((k * dd * dd / 2.0) * log(1.0 / alpha))
    )
    if bracket <= 0:
        return BoundValue(alpha + 1.0, vacuous=True)
    return BoundValue(alpha + exp(-(2.0 / (k * dd * dd)) * bracket * bracket))


def center_test_risk_bounds(inputs: RiskInputs) -> tuple[float, float]:
    """(lower, upper) risk of the center-indicator test against a star.

    The upper bound branches at eta >= 1 exactly as printed.
    """
    n, k, eta = inputs.n, inputs.k, inputs.eta
    if k >= n:
        raise ValueError("center-test bounds need k < n")
    strength = k + eta * k * (k - 1) / 2.0
    lower = k / n + exp(-strength / (n - k))
    if eta >= 1.0:
        upper = k / n + exp(-strength / ((n - k + 1) + (k - 1) * eta))
    else:
        upper = k / n + exp(-strength / n)
    return lower, upper


def infection_reach_probability(inputs: RiskInputs) -> float:
    """Chance a star's center is infected under the alternative (lower bound)."""
    n, k, eta = inputs.n, inputs.k, inputs.eta
    strength = k + eta * k * (k - 1) / 2.0
    if eta >= 1.0:
        return 1.0 - exp(-strength / ((n - k + 1) + (k - 1) * eta))
    return 1.0 - exp(-strength / n)


def multi_spread_bounds(
    inputs: RiskInputs, c_k: float, d: int | None = None, nt_min: float = 2.0
) -> MultiSpreadBounds:
    """Risk bounds for the averaged statistics over m independent spreads.

    The averaged edges-within bound reduces exactly to
    star_null_risk_bound at m = 1; the averaged center bound uses the
    center-infection probability with the same eta branches.
    """
    n, k, eta, alpha, m = inputs.n, inputs.k, inputs.eta, inputs.alpha, inputs.m
    dd = inputs.D if d is None else d
    bracket = (
        (dd / 2.0) * c_k * h_eta(n, k, eta, nt_min)
        - dd * k * (k - 1) / (2.0 * (n - 1))
        - sqrt((k * dd * dd / (2.0 * m)) * log(1.0 / alpha))
    )
    if bracket <= 0:
        avg_edges = BoundValue(alpha + 1.0, vacuous=True)
    else:
        avg_edges = BoundValue(
            alpha + exp(-(2.0 * m / (k * dd * dd)) * bracket * bracket)
        )
    gap = infection_reach_probability(inputs) - k / n - sqrt(log(1.0 / alpha) / (2.0 * m))
    if gap <= 0:
        avg_center = BoundValue(alpha + 1.0, vacuous=True)
    else:
        avg_center = BoundValue(alpha + exp(-2.0 * m * gap * gap))
    return MultiSpreadBounds(avg_edges=avg_edges, avg_center=avg_center)


def line_cycle_bound(inputs: RiskInputs) -> BoundValue:
    """Risk bound separating a line alternative from a cycle null.

    Carries the censoring prefactor (n-c)(n-c-1) / (n^2 (n-1)), which
    collapses to 1/n at c = 0, and the extra (n-k+1)/n factor relative
    to the plain cycle bound. Requires k < n/2.
    """
    n, k, c, eta, alpha = inputs.n, inputs.k, inputs.c, inputs.eta, inputs.alpha
    if not k < n / 2.0:
        raise ValueError(f"bound needs k < n/2, got k={k}, n={n}")
    prefactor = (n - c) * (n - c - 1) / (n * n * (n - 1.0))
    lead = prefactor * (k - 1) * (1 << (k - 1)) * ((n - k + 1) / n) * h_eta(n, k, eta, 2.0)
    bracket = lead - k * (k - 1) / (n - 1.0) - sqrt(2.0 * k * log(1.0 / alpha))
    if bracket <= 0:
        return BoundValue(alpha + 1.0, vacuous=True)
    return BoundValue(alpha + exp(-bracket * bracket / (2.0 * k)))


# -- baseline thresholds -----------------------------------------------------------


def _loglog(n: int) -> float:
    if n < 3:
        raise ValueError(f"log(log(n)) needs n >= 3, got {n}")
    return log(log(n))


def tb_threshold(d: int, n: int, k: int, c: int) -> float:
    """Ball-radius baseline threshold: 1.1 d^2 (k n loglog(n)/(n-c))^(1/d)."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if not 0 <= c < n:
        raise ValueError(f"need 0 <= c < n, got c={c}, n={n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 1.1 * d * d * (k * n * _loglog(n) / (n - c)) ** (1.0 / d)


def tt_threshold(n: int, k: int, c: int) -> float:
    """Tree-weight baseline threshold: k n (loglog n)^3 / (n-c)."""
    if not 0 <= c < n:
        raise ValueError(f"need 0 <= c < n, got c={c}, n={n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return k * n * _loglog(n) ** 3 / (n - c)


def baseline_diagnosis(threshold: float, floor: float, ceiling: float) -> str:
    """Classify a reject-if-small rule (statistic <= threshold).

    floor/ceiling bound the attainable statistic values; a threshold at
    or above the ceiling fires on every snapshot, one below the floor on
    none.
    """
    if threshold >= ceiling:
        return "always rejects"
    if threshold < floor:
        return "never rejects"
    return "data-dependent"


# -- Monte-Carlo risk -----------------------------------------------------------


@dataclass(frozen=True)
class RiskEstimate:
    """Rejection frequencies from simulated nulls and alternatives."""

    type_i: float
    type_ii: float
    mean_threshold: float
    reps: int
    rejects_null: int
    rejects_alt: int


@dataclass(frozen=True)
class RiskCurve:
    """Type I once, Type II per eta, from shared null replicates.

    alt_values optionally carries the raw statistic value of every
    alternative snapshot, keyed by eta (boxplot-ready data).
    """

    type_i: float
    mean_threshold: float
    type_ii: dict[float, float]
    reps: int
    alt_values: dict[float, list[float]] | None = None


def resolve_threads(threads: int | None) -> int:
    """None -> serial; 0 -> all cores; n -> n."""
    if threads is None:
        return 1
    if threads == 0:
        return os.cpu_count() or 1
    if threads < 0:
        raise ValueError(f"threads must be >= 0, got {threads}")
    return threads


def _raw_threshold(result: TestResult) -> float:
    thr = result.threshold
    return -thr if result.tail == "lower" else thr


def mc_risk_curve(
    g0: Graph,
    g1: Graph,
    eta0: float,
    etas: list[float],
    k: int,
    c: int,
    cfg: TestConfig,
    reps: int,
    stat: StatisticSpec | None = None,
    threads: int | None = None,
    collect_alt_values: bool = False,
) -> RiskCurve:
    """Estimate Type I and a Type II curve for the configured test.

    Each replicate simulates one spread under the null graph (eta0) and
    one under the alternative per eta, censors c vertices uniformly, and
    runs the test. Every random draw comes from a substream keyed by
    (seed, tag, replicate), so results are identical at any thread
    count. Type II is the miss rate under the alternative;
    mean_threshold averages the null replicates' thresholds on the raw
    statistic scale.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    if not etas:
        raise ValueError("need at least one alternative eta")
    the_stat = StatisticSpec.edges_within(g1) if stat is None else stat
    test_fn = conditional_mc_test if cfg.mode == MODE_CENSOR_FIXING else mc_test
    seed = cfg.seed

    def run_once(g: Graph, eta: float, base: int, rep: int) -> tuple[TestResult, float]:
        path = simulate_spread(g, SpreadParams(eta=eta, k=k), substream(seed, base, rep))
        iv = path.to_infection(g.n)
        if c:
            iv = censor_uniform(iv, c, substream(seed, base + 1, rep))
        res = test_fn(the_stat, iv, cfg, null_graph=g0, rng=substream(seed, base + 2, rep))
        return res, float(the_stat.evaluate(iv))

    def one(rep: int):
        res0, _ = run_once(g0, eta0, 0, rep)
        alt_rejects: list[bool] = []
        alt_vals: list[float] = []
        for i, eta1 in enumerate(etas):
            res1, value = run_once(g1, eta1, 10 * (i + 1), rep)
            alt_rejects.append(res1.reject)
            if collect_alt_values:
                alt_vals.append(value)
        return res0.reject, _raw_threshold(res0), alt_rejects, alt_vals

    workers = resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(reps)))
    else:
        rows = [one(rep) for rep in range(reps)]

    rejects_null = sum(1 for r in rows if r[0])
    type_ii = {
        eta: 1.0 - sum(1 for r in rows if r[2][i]) / reps for i, eta in enumerate(etas)
    }
    alt_values = None
    if collect_alt_values:
        alt_values = {eta: [r[3][i] for r in rows] for i, eta in enumerate(etas)}
    return RiskCurve(
        type_i=rejects_null / reps,
        mean_threshold=sum(r[1] for r in rows) / reps,
        type_ii=type_ii,
        reps=reps,
        alt_values=alt_values,
    )


def mc_risk(
    g0: Graph,
    g1: Graph,
    eta0: float,
    eta1: float,
    k: int,
    c: int,
    cfg: TestConfig,
    reps: int,
    stat: StatisticSpec | None = None,
    threads: int | None = None,
) -> RiskEstimate:
    """Single-eta risk estimate; see mc_risk_curve for the mechanics."""
    curve = mc_risk_curve(
        g0, g1, eta0, [eta1], k, c, cfg, reps, stat=stat, threads=threads
    )
    rejects_alt = round((1.0 - curve.type_ii[eta1]) * reps)
    return RiskEstimate(
        type_i=curve.type_i,
        type_ii=curve.type_ii[eta1],
        mean_threshold=curve.mean_threshold,
        reps=reps,
        rejects_null=round(curve.type_i * reps),
        rejects_alt=rejects_alt,
    )
