"""Deterministic synthetic power-grid-style graphs for tests and fixtures.

Buses are dropped uniformly in the unit square; lines are the Euclidean
minimum spanning tree plus the shortest remaining near-neighbor pairs until
the edge target is met.  The result is connected, sparse, planar-ish, with
a realistic share of unit-degree buses.

Run as a script to regenerate the committed fixture files:

    python3 tests/synthgrid.py
"""

from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as csgraph_components
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial import cKDTree

from gridfrag.graphs import Grid, serialize_edge_list

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

# (filename, nodes, edges, seed) for the committed fixtures.
FIXTURE_SPECS = (
    ("ieee118_style.edges", 118, 179, 11),
    ("ieee300_style.edges", 300, 409, 13),
    ("ucte_style.edges", 1254, 1811, 17),
)

MAX_DEGREE = 9


def synth_grid_graph(n: int, m: int, seed: int, k_neighbors: int = 12) -> Grid:
    """Connected graph with ``n`` buses and exactly ``m`` lines."""
    if m < n - 1:
        raise ValueError("need at least n-1 edges for connectivity")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    tree = cKDTree(pts)
    dists, idx = tree.query(pts, k=min(k_neighbors + 1, n))
    rows, cols, vals = [], [], []
    for u in range(n):
        for d, v in zip(dists[u][1:], idx[u][1:]):
            rows.append(u)
            cols.append(int(v))
            vals.append(float(d))
    cand = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    cand = cand.maximum(cand.T)
    ncomp, _ = csgraph_components(cand, directed=False)
    if ncomp != 1:
        raise RuntimeError("near-neighbor graph disconnected; raise k_neighbors")
    mst = minimum_spanning_tree(cand).tocoo()
    edges = {(min(int(u), int(v)), max(int(u), int(v)))
             for u, v in zip(mst.row, mst.col)}
    degree = np.zeros(n, dtype=int)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    # Reinforce with the shortest unused near-neighbor pairs.
    coo = sp.triu(cand, k=1).tocoo()
    order = sorted(zip(coo.data, coo.row, coo.col))
    for _, u, v in order:
        if len(edges) >= m:
            break
        e = (min(int(u), int(v)), max(int(u), int(v)))
        if e in edges or degree[e[0]] >= MAX_DEGREE or degree[e[1]] >= MAX_DEGREE:
            continue
        edges.add(e)
        degree[e[0]] += 1
        degree[e[1]] += 1
    if len(edges) != m:
        raise RuntimeError(f"could only place {len(edges)} of {m} edges")
    return Grid(node_count=n, edges=tuple(sorted(edges)))


def random_connected_grid(n: int, extra_edge_prob: float, seed: int) -> Grid:
    """Random tree plus independent extra edges; always connected."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        u, v = int(perm[i]), int(perm[j])
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return Grid(node_count=n, edges=tuple(sorted(edges)))


def main() -> None:
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    for name, n, m, seed in FIXTURE_SPECS:
        grid = synth_grid_graph(n, m, seed)
        path = os.path.join(FIXTURE_DIR, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize_edge_list(grid))
        print(f"{name}: {grid.node_count} nodes, {grid.edge_count} edges")


if __name__ == "__main__":
    main()
