"""Adversarial line-removal planners and baselines.

All schemes are pure functions of (grid, k, params, seed): ties are broken
lexicographically by (min endpoint, max endpoint), randomness always flows
from an explicit seed, and every trace records the dominant eigenvalue
before any removal and after each one.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .graphs import Edge, Grid, GraphError, edge_betweenness, remove_edge, remove_edges
from .spectral import SpectralEstimate, leading_eigenpair, log_trace_power

DEFAULT_TRACE_POWER = 20

SCHEMES = ("eigen_iterative", "eigen_single_shot", "trace_greedy", "random",
           "betweenness")

EXHAUSTIVE_BUDGET = 1_000_000


@dataclass(frozen=True)
class AttackTrace:
    """Ordered removals with the eigenvalue trajectory (k+1 values)."""

    scheme: str
    removed: tuple[Edge, ...]
    beta_trajectory: tuple[float, ...]
    params: dict = field(default_factory=dict)
    exhausted: bool = False


def _check_k(grid: Grid, k: int) -> None:
    if not 1 <= k <= grid.edge_count:
        raise GraphError(f"k must lie in 1..{grid.edge_count}, got {k}")


def _beta(grid: Grid) -> float:
    return leading_eigenpair(grid.adjacency()).value


def eigen_perturbation_scores(grid: Grid,
                              estimate: SpectralEstimate | None = None) -> dict[Edge, float]:
    """First-order eigenvalue drop 2*u(i)*u(j) per edge, from the Perron vector."""
    if not grid.edges:
        raise GraphError("grid has no edges")
    if estimate is None:
        estimate = leading_eigenpair(grid.adjacency())
    u = estimate.vector
    return {(i, j): 2.0 * float(u[i]) * float(u[j]) for i, j in grid.edges}


def _argmax_score(edges: tuple[Edge, ...], scores: dict[Edge, float]) -> Edge:
    best = edges[0]
    best_score = scores[best]
    for e in edges[1:]:
        s = scores[e]
        if s > best_score:
            best, best_score = e, s
    return best


def attack_eigen_iterative(grid: Grid, k: int) -> AttackTrace:
    """k rounds of: compute Perron vector, drop the highest-scoring edge."""
    _check_k(grid, k)
    est = leading_eigenpair(grid.adjacency())
    trajectory = [est.value]
    removed: list[Edge] = []
    g = grid
    for _ in range(k):
        scores = eigen_perturbation_scores(g, est)
        pick = _argmax_score(g.edges, scores)
        g = remove_edge(g, pick)
        removed.append(pick)
        est = leading_eigenpair(g.adjacency())
        trajectory.append(est.value)
    return AttackTrace(scheme="eigen_iterative", removed=tuple(removed),
                       beta_trajectory=tuple(trajectory), params={"k": k})


def attack_eigen_single_shot(grid: Grid, k: int) -> AttackTrace:
    """One Perron-vector computation; the top-k edges by score go at once."""
    _check_k(grid, k)
    est = leading_eigenpair(grid.adjacency())
    scores = eigen_perturbation_scores(grid, est)
    order = sorted(grid.edges, key=lambda e: (-scores[e], e))[:k]
    trajectory = [est.value]
    removed: list[Edge] = []
    g = grid
    for e in order:
        g = remove_edge(g, e)
        removed.append(e)
        trajectory.append(_beta(g))
    return AttackTrace(scheme="eigen_single_shot", removed=tuple(removed),
                       beta_trajectory=tuple(trajectory), params={"k": k})


def attack_trace_greedy(grid: Grid, k: int, power: int = DEFAULT_TRACE_POWER) -> AttackTrace:
    """Greedy removal minimizing the closed-walk count of even length ``power``.

    Every remaining edge is evaluated each round by recomputing the full
    spectrum of the candidate adjacency; comparisons happen in log domain.
    """
    if power < 2 or power % 2 != 0:
        raise ValueError(f"power must be an even integer >= 2, got {power}")
    _check_k(grid, k)
    trajectory = [_beta(grid)]
    removed: list[Edge] = []
    g = grid
    for _ in range(k):
        a = g.adjacency()
        if sp.issparse(a):
            a = a.toarray()
        best_edge: Edge | None = None
        best_val = math.inf
        for i, j in g.edges:
            a[i, j] = a[j, i] = 0.0
            val = log_trace_power(a, power).log_value
            a[i, j] = a[j, i] = 1.0
            if val < best_val:
                best_edge, best_val = (i, j), val
        g = remove_edge(g, best_edge)
        removed.append(best_edge)
        trajectory.append(_beta(g))
    return AttackTrace(scheme="trace_greedy", removed=tuple(removed),
                       beta_trajectory=tuple(trajectory),
                       params={"k": k, "power": power})


def attack_random(grid: Grid, k: int, seed: int) -> AttackTrace:
    _check_k(grid, k)
    rng = np.random.default_rng(seed)
    picks = rng.choice(grid.edge_count, size=k, replace=False)
    trajectory = [_beta(grid)]
    removed: list[Edge] = []
    g = grid
    for idx in picks:
        e = grid.edges[int(idx)]
        g = remove_edge(g, e)
        removed.append(e)
        trajectory.append(_beta(g))
    return AttackTrace(scheme="random", removed=tuple(removed),
                       beta_trajectory=tuple(trajectory),
                       params={"k": k, "seed": seed})


def attack_betweenness(grid: Grid, k: int, recompute: bool = False) -> AttackTrace:
    """Remove edges in decreasing betweenness order; optionally re-score per step."""
    _check_k(grid, k)
    trajectory = [_beta(grid)]
    removed: list[Edge] = []
    g = grid
    if recompute:
        for _ in range(k):
            scores = edge_betweenness(g)
            pick = min(g.edges, key=lambda e: (-scores[e], e))
            g = remove_edge(g, pick)
            removed.append(pick)
            trajectory.append(_beta(g))
    else:
        scores = edge_betweenness(grid)
        for e in sorted(grid.edges, key=lambda e: (-scores[e], e))[:k]:
            g = remove_edge(g, e)
            removed.append(e)
            trajectory.append(_beta(g))
    return AttackTrace(scheme="betweenness", removed=tuple(removed),
                       beta_trajectory=tuple(trajectory),
                       params={"k": k, "recompute": recompute})


def exhaustive_optimal_removal(grid: Grid, k: int) -> tuple[tuple[Edge, ...], float]:
    """Exact minimizer of the dominant eigenvalue over all k-edge subsets.

    Small-instance oracle; refuses combinatorial budgets above 10^6 subsets.
    """
    _check_k(grid, k)
    if math.comb(grid.edge_count, k) > EXHAUSTIVE_BUDGET:
        raise GraphError(
            f"C({grid.edge_count},{k}) exceeds the {EXHAUSTIVE_BUDGET} subset budget")
    best_set: tuple[Edge, ...] | None = None
    best_beta = math.inf
    for combo in itertools.combinations(grid.edges, k):
        beta = _beta(remove_edges(grid, combo))
        if beta < best_beta:
            best_set, best_beta = combo, beta
    return best_set, best_beta


def trace_to_csv(trace: AttackTrace) -> str:
    lines = ["step,edge_u,edge_v,beta_after"]
    for step, (e, beta) in enumerate(zip(trace.removed, trace.beta_trajectory[1:]),
                                     start=1):
        lines.append(f"{step},{e[0]},{e[1]},{beta!r}")
    return "\n".join(lines) + "\n"


def trace_to_json(trace: AttackTrace) -> str:
    return json.dumps({
        "scheme": trace.scheme,
        "removed": [list(e) for e in trace.removed],
        "beta_trajectory": list(trace.beta_trajectory),
        "params": trace.params,
        "exhausted": trace.exhausted,
    }, indent=2) + "\n"
