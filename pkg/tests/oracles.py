"""Independent brute-force oracles used only by tests.

Nothing here shares code paths with the package: walk counts are pure-int
dynamic programming, betweenness enumerates shortest paths with Fractions,
the normal CDF is trapezoidal quadrature, and the direction-deficit system
is a dense linear solve built straight from the continuation rule.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

import numpy as np

from gridfrag.graphs import Grid


def closed_walk_count(grid: Grid, length: int) -> int:
    """Exact number of closed walks of ``length`` hops (Python ints)."""
    total = 0
    for start in range(grid.node_count):
        counts: dict[int, int] = {start: 1}
        for _ in range(length):
            nxt: dict[int, int] = defaultdict(int)
            for node, c in counts.items():
                for w in grid.neighbors[node]:
                    nxt[w] += c
            counts = nxt
        total += counts.get(start, 0)
    return total


def brute_edge_betweenness(grid: Grid) -> dict[tuple[int, int], float]:
    """Edge betweenness by explicit shortest-path enumeration (exact Fractions)."""
    scores: dict[tuple[int, int], Fraction] = {e: Fraction(0) for e in grid.edges}
    n = grid.node_count
    for s in range(n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in grid.neighbors[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        for t in range(s + 1, n):
            if t not in dist:
                continue
            paths: list[list[int]] = []

            def extend(node: int, acc: list[int]) -> None:
                if node == s:
                    paths.append(acc + [s])
                    return
                for w in grid.neighbors[node]:
                    if dist.get(w, -1) == dist[node] - 1:
                        extend(w, acc + [node])

            extend(t, [])
            weight = Fraction(1, len(paths))
            for path in paths:
                for a, b in zip(path, path[1:]):
                    scores[(min(a, b), max(a, b))] += weight
    return {e: float(v) for e, v in scores.items()}


def all_pairs_distance_sum(grid: Grid) -> int:
    """Sum of shortest-path lengths over connected unordered pairs."""
    total = 0
    for s in range(grid.node_count):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in grid.neighbors[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        total += sum(d for t, d in dist.items() if t > s)
    return total


def normal_cdf_trapezoid(z: float, steps: int = 400_000) -> float:
    """Phi(z) for z >= 0 by trapezoidal quadrature of the density."""
    if z < 0:
        raise ValueError("oracle defined for z >= 0")
    upper = min(z, 12.0)  # density beyond 12 sigma is < 1e-31
    if upper == 0.0:
        return 0.5
    xs = np.linspace(0.0, upper, steps + 1)
    densities = np.exp(-0.5 * xs * xs) / np.sqrt(2.0 * np.pi)
    return 0.5 + float(np.trapezoid(densities, xs))


def deficit_dense_solve(grid: Grid, p0: float) -> dict[tuple[int, int], float]:
    """Direction deficits via a dense linear solve, built from the raw rule."""
    directions = sorted([(u, v) for u, v in grid.edges] +
                        [(v, u) for u, v in grid.edges])
    pos = {d: i for i, d in enumerate(directions)}
    n = len(directions)
    matrix = np.eye(n)
    rhs = np.zeros(n)
    for (a, b), i in pos.items():
        continuations = [pos[(b, d)] for d in grid.neighbors[b] if d != a]
        if not continuations:
            rhs[i] = 1.0  # no continuation: this direction never connects onward
            continue
        rhs[i] = p0
        share = (1.0 - p0) / len(continuations)
        for j in continuations:
            matrix[i, j] -= share
    x = np.linalg.solve(matrix, rhs)
    return {d: float(x[pos[d]]) for d in directions}


def failure_bound_dense(grid: Grid, p0: float) -> float:
    """Failure-count bound assembled from the dense-solve deficits."""
    deficits = deficit_dense_solve(grid, p0)
    total = 0.0
    for i in range(grid.node_count):
        nbrs = grid.neighbors[i]
        if not nbrs:
            total += 1.0
            continue
        total += p0 + (1.0 - p0) * sum(deficits[(i, j)] for j in nbrs) / len(nbrs)
    return min(total, float(grid.node_count))
