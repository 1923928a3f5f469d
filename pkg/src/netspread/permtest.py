"""Permutation tests over infection snapshots.

The null hypothesis is that relabeling vertices uniformly at random
leaves the snapshot law unchanged. Tests score snapshots on an oriented
evidence scale (larger = more clustered; radius and tree statistics are
negated by StatisticSpec.score), estimate the permutation law of that
score, and reject when the observed score strictly exceeds a threshold
calibrated so the mass at or above it stays within alpha.

Thresholds never randomize: when even the top value carries more than
alpha of the permutation mass, the result is flagged saturated and the
threshold sits at the maximum draw, so only an observation strictly
above every draw can still reject. Any B >= ceil(1/alpha) - 1 keeps the
level at alpha; smaller B is degenerate but defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .errors import GuardExceededError
from .graphs import Graph
from .perms import PermGroup, automorphism_group, product_group_is_full
from .rng import substream
from .spreading import CENSORED, InfectionVector
from .stats import StatisticSpec

__all__ = [
    "TestConfig",
    "TestResult",
    "exact_test",
    "mc_test",
    "conditional_mc_test",
    "composite_mc_test",
    "multi_spread_mc_test",
    "check_validity",
]

MODE_FULL = "full-permute"
MODE_CENSOR_FIXING = "censor-fixing"


@dataclass(frozen=True)
class TestConfig:
    """Knobs shared by the Monte-Carlo tests."""

    __test__ = False  # not a pytest collectable despite the name

    alpha: float
    B: int = 1000
    seed: int = 0
    mode: str = MODE_FULL
    validity: str = "checked"

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.B < 1:
            raise ValueError(f"B must be >= 1, got {self.B}")
        if self.mode not in (MODE_FULL, MODE_CENSOR_FIXING):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.validity not in ("checked", "skip"):
            raise ValueError(f"validity must be 'checked' or 'skip', got {self.validity!r}")


@dataclass(frozen=True)
class TestResult:
    """Outcome of one permutation test, on the oriented score scale.

    observed/threshold are scores (for lower-tail statistics the raw
    value is the negation; `tail` records which). The invariant is
    reject == observed > threshold; a saturated threshold equals the
    maximum draw, so rejection then needs a strict full exceedance.
    histogram maps score -> count over the permutation draws. p_value
    uses the add-one rule for Monte-Carlo modes and the plain
    enumeration fraction for the exact test; raw_ge_count is the
    un-adjusted tail count. For composite tests observed/threshold/
    saturated are per-stage tuples and the invariant applies stagewise.
    """

    __test__ = False  # not a pytest collectable despite the name

    observed: float | tuple[float, float]
    threshold: float | tuple[float, float]
    p_value: float
    reject: bool
    histogram: tuple[tuple[float, int], ...]
    raw_ge_count: int
    n_draws: int
    saturated: bool | tuple[bool, bool]
    statistic: str
    tail: str
    mode: str
    validity_warning: str | None = None


def _threshold_rule(
    scores: np.ndarray, alpha_mass: float, total: int
) -> tuple[float, bool]:
    """Minimal distinct score v with #{scores >= v} <= alpha_mass * total.

    Returns (threshold, saturated); saturated means no such v exists and
    the threshold falls back to the maximum score, rejectable only by a
    value strictly above every score.
    """
    values, counts = np.unique(scores, return_counts=True)
    tail_counts = counts[::-1].cumsum()[::-1]
    ok = np.flatnonzero(tail_counts <= alpha_mass * total)
    if ok.size == 0:
        return float(values[-1]), True
    return float(values[ok[0]]), False


def _histogram(scores: np.ndarray) -> tuple[tuple[float, int], ...]:
    values, counts = np.unique(scores, return_counts=True)
    return tuple((float(v), int(c)) for v, c in zip(values, counts))


def _validity_warning(
    cfg: TestConfig, stat: StatisticSpec, null_graph: Graph | None
) -> str | None:
    if cfg.validity == "skip":
        return None
    if null_graph is None:
        return "unverifiable: no null graph provided"
    if stat.graph is None:
        return "unverifiable: statistic carries no alternative graph"
    verdict = check_validity(null_graph, stat.graph)
    if verdict == "valid":
        return None
    if verdict == "invalid":
        return "invalid: automorphism product does not cover all relabelings"
    return "unverifiable: automorphism groups too large to verify"


def check_validity(null_graph: Graph, alt: Graph | PermGroup, n_max: int = 10) -> str:
    """Exchangeability precondition: is Aut(alt) * Aut(null) all of S_n?

    Returns "valid", "invalid", or "unverifiable" (groups beyond the
    computation guard). Either group being fully symmetric settles the
    answer without computing the other, so an empty or complete null
    validates any alternative at any size.
    """

    def group_of(g):
        try:
            return automorphism_group(g, n_max=n_max)
        except GuardExceededError:
            return None

    g0 = group_of(null_graph)
    if g0 is not None and g0.is_full_symmetric:
        return "valid"
    g1 = alt if isinstance(alt, PermGroup) else group_of(alt)
    if g1 is not None and g1.is_full_symmetric:
        return "valid"
    if g0 is None or g1 is None:
        return "unverifiable"
    return "valid" if product_group_is_full(g1, g0) else "invalid"


def exact_test(
    stat: StatisticSpec,
    iv: InfectionVector,
    alpha: float,
    null_graph: Graph | None = None,
    n_guard: int = 8,
    validity: str = "checked",
) -> TestResult:
    """Enumerate all n! relabelings; no Monte-Carlo error.

    Guarded at n_guard because the cost is n! score evaluations.
    p_value is the exact permutation fraction #{score >= observed} / n!.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    n = iv.n
    if n > n_guard:
        raise GuardExceededError(
            f"exact test costs {n}! = {factorial(n)} evaluations; guard is n <= {n_guard}"
        )
    status = iv.status
    scores = np.empty(factorial(n), dtype=np.float64)
    buf = np.empty(n, dtype=status.dtype)
    for i, perm in enumerate(itertools.permutations(range(n))):
        buf[list(perm)] = status
        scores[i] = stat.score(InfectionVector(buf))
    observed = stat.score(iv)
    threshold, saturated = _threshold_rule(scores, alpha, scores.size)
    ge = int(np.count_nonzero(scores >= observed))
    cfg = TestConfig(alpha=alpha, B=1, validity=validity)
    return TestResult(
        observed=observed,
        threshold=threshold,
        p_value=ge / scores.size,
        reject=observed > threshold,
        histogram=_histogram(scores),
        raw_ge_count=ge,
        n_draws=scores.size,
        saturated=saturated,
        statistic=stat.name,
        tail=stat.tail,
        mode="exact",
        validity_warning=_validity_warning(cfg, stat, null_graph),
    )


def _mc_scores(
    stat: StatisticSpec,
    iv: InfectionVector,
    B: int,
    rng: np.random.Generator,
    positions: np.ndarray | None = None,
    on_resample: Callable[[int, np.ndarray], None] | None = None,
) -> np.ndarray:
    """Score B uniformly permuted copies (optionally only over `positions`)."""
    status = iv.status
    scores = np.empty(B, dtype=np.float64)
    for b in range(B):
        if positions is None:
            permuted = status[rng.permutation(status.size)]
        else:
            permuted = status.copy()
            permuted[positions] = status[positions[rng.permutation(positions.size)]]
        if on_resample is not None:
            on_resample(b, permuted)
        scores[b] = stat.score(InfectionVector(permuted))
    return scores


def _mc_result(
    stat: StatisticSpec,
    iv: InfectionVector,
    cfg: TestConfig,
    scores: np.ndarray,
    mode: str,
    null_graph: Graph | None,
) -> TestResult:
    observed = stat.score(iv)
    threshold, saturated = _threshold_rule(scores, cfg.alpha, scores.size)
    ge = int(np.count_nonzero(scores >= observed))
    return TestResult(
        observed=observed,
        threshold=threshold,
        p_value=(ge + 1) / (scores.size + 1),
        reject=observed > threshold,
        histogram=_histogram(scores),
        raw_ge_count=ge,
        n_draws=scores.size,
        saturated=saturated,
        statistic=stat.name,
        tail=stat.tail,
        mode=mode,
        validity_warning=_validity_warning(cfg, stat, null_graph),
    )


def mc_test(
    stat: StatisticSpec,
    iv: InfectionVector,
    cfg: TestConfig,
    null_graph: Graph | None = None,
    rng: np.random.Generator | None = None,
    on_resample: Callable[[int, np.ndarray], None] | None = None,
) -> TestResult:
    """Monte-Carlo permutation test with B uniform relabelings.

    The add-one p-value (#{permuted >= observed} + 1) / (B + 1) is the
    standard unbiased-level estimate; reject still goes through the
    threshold rule so level holds for every B.
    """
    gen = substream(cfg.seed) if rng is None else rng
    scores = _mc_scores(stat, iv, cfg.B, gen, on_resample=on_resample)
    return _mc_result(stat, iv, cfg, scores, MODE_FULL, null_graph)


def conditional_mc_test(
    stat: StatisticSpec,
    iv: InfectionVector,
    cfg: TestConfig,
    null_graph: Graph | None = None,
    rng: np.random.Generator | None = None,
    on_resample: Callable[[int, np.ndarray], None] | None = None,
) -> TestResult:
    """Permutation test conditioned on the censored positions.

    Only uncensored statuses are shuffled; censored vertices keep their
    mark, matching a null where censoring is arbitrary but fixed.
    """
    gen = substream(cfg.seed) if rng is None else rng
    positions = np.flatnonzero(iv.status != CENSORED)
    if positions.size == 0:
        raise ValueError("every vertex is censored; nothing to permute")
    scores = _mc_scores(stat, iv, cfg.B, gen, positions=positions, on_resample=on_resample)
    return _mc_result(stat, iv, cfg, scores, MODE_CENSOR_FIXING, null_graph)


def composite_mc_test(
    stat_first: StatisticSpec,
    stat_second: StatisticSpec,
    iv: InfectionVector,
    cfg: TestConfig,
    null_graph: Graph | None = None,
    rng: np.random.Generator | None = None,
) -> TestResult:
    """Two-stage test against a composite alternative, level alpha overall.

    Stage one spends alpha/2 on the first statistic. Stage two spends
    alpha/2 on the second statistic among draws the first stage left
    alone (first score <= its threshold), so the rejection regions are
    disjoint and masses add. Rejects when either stage fires on the
    observed snapshot. p_value is the Bonferroni combination
    min(1, 2 min(p1, p2)) of the stagewise add-one p-values.
    """
    gen = substream(cfg.seed) if rng is None else rng
    status = iv.status
    B = cfg.B
    s1 = np.empty(B, dtype=np.float64)
    s2 = np.empty(B, dtype=np.float64)
    for b in range(B):
        permuted = InfectionVector(status[gen.permutation(status.size)])
        s1[b] = stat_first.score(permuted)
        s2[b] = stat_second.score(permuted)
    o1 = stat_first.score(iv)
    o2 = stat_second.score(iv)
    half = cfg.alpha / 2.0
    t1, sat1 = _threshold_rule(s1, half, B)
    # a saturated t1 equals max(s1), so the mask below is then all-true
    stage2_mask = s1 <= t1
    t2, sat2 = _threshold_rule(s2[stage2_mask], half, B)
    fire1 = o1 > t1
    fire2 = o1 <= t1 and o2 > t2
    p1 = (int(np.count_nonzero(s1 >= o1)) + 1) / (B + 1)
    p2 = (int(np.count_nonzero(s2[stage2_mask] >= o2)) + 1) / (B + 1)
    return TestResult(
        observed=(o1, o2),
        threshold=(t1, t2),
        p_value=min(1.0, 2.0 * min(p1, p2)),
        reject=fire1 or fire2,
        histogram=_histogram(s1),
        raw_ge_count=int(np.count_nonzero(s1 >= o1)),
        n_draws=B,
        saturated=(sat1, sat2),
        statistic=f"{stat_first.name}+{stat_second.name}",
        tail=f"{stat_first.tail}+{stat_second.tail}",
        mode="composite",
        validity_warning=_validity_warning(cfg, stat_first, null_graph),
    )


def multi_spread_mc_test(
    stat: StatisticSpec,
    ivs: Sequence[InfectionVector],
    cfg: TestConfig,
    null_graph: Graph | None = None,
    rng: np.random.Generator | None = None,
) -> TestResult:
    """Aggregate test over m independent snapshots of the same graph.

    The observed score is the mean of per-snapshot scores; each
    Monte-Carlo draw relabels every snapshot with its own independent
    uniform permutation. With m = 1 this reduces exactly to mc_test.
    """
    if not ivs:
        raise ValueError("need at least one snapshot")
    n = ivs[0].n
    if any(iv.n != n for iv in ivs):
        raise ValueError("snapshots must share one vertex set")
    gen = substream(cfg.seed) if rng is None else rng
    B = cfg.B
    scores = np.empty(B, dtype=np.float64)
    for b in range(B):
        total = 0.0
        for iv in ivs:
            permuted = InfectionVector(iv.status[gen.permutation(n)])
            total += stat.score(permuted)
        scores[b] = total / len(ivs)
    observed = float(np.mean([stat.score(iv) for iv in ivs]))
    threshold, saturated = _threshold_rule(scores, cfg.alpha, B)
    ge = int(np.count_nonzero(scores >= observed))
    return TestResult(
        observed=observed,
        threshold=threshold,
        p_value=(ge + 1) / (B + 1),
        reject=observed > threshold,
        histogram=_histogram(scores),
        raw_ge_count=ge,
        n_draws=B,
        saturated=saturated,
        statistic=f"avg-{stat.name}",
        tail=stat.tail,
        mode="multi-spread",
        validity_warning=_validity_warning(cfg, stat, null_graph),
    )
