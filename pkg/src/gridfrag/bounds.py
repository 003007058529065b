"""Analytic fragmentation thresholds and failure-count upper bounds.

The two thresholds come from the Perron roots of the bus adjacency and of
the edge-direction adjacency.  The per-direction survival deficit solves
x = p0 + (1 - p0) * (mean of x over continuing directions), with directions
that have no continuation pinned to deficit 1 (an edge into a leaf cannot
connect its tail to anything beyond the leaf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Grid, GraphError
from .nonbacktracking import NonBacktrackingGraph, build_nonbacktracking_graph
from .spectral import ConvergenceError, leading_eigenpair

DEFICIT_TOL = 1e-12
DEFICIT_MAX_ITER = 1_000_000


@dataclass(frozen=True)
class Thresholds:
    """Critical initial-failure probabilities certified by each spectral bound."""

    first: float
    second: float
    beta_a: float
    beta_ae: float


@dataclass(frozen=True)
class EdgeDeficit:
    """Limiting failure-to-connect probability per direction node (in [0,1]).

    ``values`` is aligned with the lexicographic node order of the
    edge-direction graph; zero-out-degree directions are exactly 1.
    """

    values: np.ndarray
    p0: float


@dataclass(frozen=True)
class FailureBoundCurve:
    p0_grid: tuple[float, ...]
    bound: tuple[float, ...]
    thresholds: Thresholds


def _threshold_from_beta(beta: float) -> float:
    if beta <= 1.0:
        return 0.0
    return min(1.0, 1.0 - 1.0 / beta)


def thresholds(grid: Grid) -> Thresholds:
    """Both spectral thresholds; requires at least one edge."""
    beta_a = leading_eigenpair(grid.adjacency()).value
    nbg = build_nonbacktracking_graph(grid)
    beta_ae = leading_eigenpair(nbg.adjacency_sparse()).value
    return Thresholds(first=_threshold_from_beta(beta_a),
                      second=_threshold_from_beta(beta_ae),
                      beta_a=beta_a, beta_ae=beta_ae)


def _check_p0(p0: float) -> float:
    p0 = float(p0)
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0,1], got {p0}")
    return p0


def _deficit_vector(nbg: NonBacktrackingGraph, p0: float) -> np.ndarray:
    """Damped fixed-point solve of the direction-failure system."""
    n = nbg.node_count
    pinned = nbg.out_degree == 0
    inv_deg = np.zeros(n)
    inv_deg[~pinned] = 1.0 / nbg.out_degree[~pinned]
    hop = nbg.adjacency_sparse()
    x = np.zeros(n)
    x[pinned] = 1.0
    for _ in range(DEFICIT_MAX_ITER):
        x_new = p0 + (1.0 - p0) * (hop @ x) * inv_deg
        x_new[pinned] = 1.0
        np.clip(x_new, 0.0, 1.0, out=x_new)
        x_next = 0.5 * (x + x_new)
        change = float(np.abs(x_next - x).max())
        x = x_next
        if change <= DEFICIT_TOL:
            return x
    raise ConvergenceError(
        f"deficit iteration did not settle within {DEFICIT_MAX_ITER} steps at p0={p0}",
        estimate=EdgeDeficit(values=x, p0=p0))


def edge_survival_deficit(grid: Grid, p0: float) -> EdgeDeficit:
    p0 = _check_p0(p0)
    nbg = build_nonbacktracking_graph(grid)
    return EdgeDeficit(values=_deficit_vector(nbg, p0), p0=p0)


def _bound_from_deficit(grid: Grid, nbg: NonBacktrackingGraph,
                        deficit: np.ndarray, p0: float) -> float:
    degrees = grid.degrees
    # Scatter each direction's deficit onto its tail bus.
    tails = np.fromiter((a for a, _ in nbg.node_list), dtype=np.int64,
                        count=nbg.node_count)
    per_node = np.zeros(grid.node_count)
    np.add.at(per_node, tails, deficit)
    connected = degrees > 0
    total = float(np.sum(p0 + (1.0 - p0) * per_node[connected] / degrees[connected]))
    total += float(np.sum(~connected))  # isolated buses count as failed outright
    return min(max(total, 0.0), float(grid.node_count))


def failure_upper_bound(grid: Grid, p0: float) -> float:
    """Upper bound on the expected number of eventual bus failures."""
    p0 = _check_p0(p0)
    if not grid.edges:
        return float(grid.node_count)
    nbg = build_nonbacktracking_graph(grid)
    return _bound_from_deficit(grid, nbg, _deficit_vector(nbg, p0), p0)


def bound_curve(grid: Grid, p0_grid: Sequence[float]) -> FailureBoundCurve:
    """Failure bound evaluated over an ascending p0 grid, plus both thresholds."""
    pts = [_check_p0(p) for p in p0_grid]
    if not pts:
        raise ValueError("p0 grid must contain at least one point")
    if any(pts[i] > pts[i + 1] for i in range(len(pts) - 1)):
        raise ValueError("p0 grid must be ascending")
    if not grid.edges:
        raise GraphError("grid has no edges")
    th = thresholds(grid)
    nbg = build_nonbacktracking_graph(grid)
    bound = tuple(_bound_from_deficit(grid, nbg, _deficit_vector(nbg, p), p)
                  for p in pts)
    return FailureBoundCurve(p0_grid=tuple(pts), bound=bound, thresholds=th)


def load_service_probability(mu: float, sigma: float, group_size: int) -> float:
    """Probability that a group of ``group_size`` buses covers its own load.

    Net capacity per bus is Gaussian(mu, sigma^2), independent across buses,
    so the group average is Gaussian(mu, sigma^2 / group_size) and the
    service probability is Phi(mu * sqrt(group_size) / sigma).
    """
    if mu < 0:
        raise ValueError(f"mean net capacity must be >= 0, got {mu}")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if group_size < 1:
        raise ValueError(f"group_size must be a positive integer, got {group_size}")
    z = mu * math.sqrt(group_size) / sigma
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def curve_to_csv(curve: FailureBoundCurve) -> str:
    lines = ["p0,bound_failures,first_threshold,second_threshold"]
    th = curve.thresholds
    for p0, b in zip(curve.p0_grid, curve.bound):
        lines.append(f"{p0!r},{b!r},{th.first!r},{th.second!r}")
    return "\n".join(lines) + "\n"
