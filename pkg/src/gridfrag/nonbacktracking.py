"""Directed edge-direction graph: one node per orientation of each grid edge.

An arc runs v_ab -> v_cd exactly when b == c and a != d, i.e. a walk entering
node b along (a,b) may continue along any incident edge except straight back.
Unlike a plain line graph, v_ab and v_ba are never adjacent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .graphs import Grid, GraphError

# Dense adjacency only up to this many direction nodes; iterate sparsely above.
DENSE_DIRECTION_LIMIT = 8_000


@dataclass(frozen=True)
class NonBacktrackingGraph:
    """Edge-direction graph with deterministic lexicographic node ordering."""

    node_list: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[int, int], ...]
    out_degree: np.ndarray

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        """Map (tail, head) direction pair to its node position."""
        return {pair: pos for pos, pair in enumerate(self.node_list)}

    @property
    def node_count(self) -> int:
        return len(self.node_list)

    def adjacency_sparse(self) -> sp.csr_matrix:
        n = self.node_count
        if not self.arcs:
            return sp.csr_matrix((n, n), dtype=np.float64)
        rows = np.fromiter((a for a, _ in self.arcs), dtype=np.int64, count=len(self.arcs))
        cols = np.fromiter((b for _, b in self.arcs), dtype=np.int64, count=len(self.arcs))
        data = np.ones(len(self.arcs), dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    def debug_json(self) -> str:
        return json.dumps({"nodes": [list(p) for p in self.node_list],
                           "arcs": [list(a) for a in self.arcs]}) + "\n"


def build_nonbacktracking_graph(grid: Grid) -> NonBacktrackingGraph:
    """Edge-direction graph of ``grid``; requires at least one edge."""
    if not grid.edges:
        raise GraphError("grid has no edges; edge-direction graph is undefined")
    node_list: list[tuple[int, int]] = []
    for u, v in grid.edges:
        node_list.append((u, v))
        node_list.append((v, u))
    node_list.sort()
    index = {pair: pos for pos, pair in enumerate(node_list)}
    neighbors = grid.neighbors
    arcs: list[tuple[int, int]] = []
    out_degree = np.zeros(len(node_list), dtype=np.int64)
    for pos, (a, b) in enumerate(node_list):
        for d in neighbors[b]:
            if d != a:
                arcs.append((pos, index[(b, d)]))
        out_degree[pos] = len(neighbors[b]) - 1
    return NonBacktrackingGraph(node_list=tuple(node_list), arcs=tuple(arcs),
                                out_degree=out_degree)


def modified_adjacency(nbg: NonBacktrackingGraph):
    """Binary arc adjacency; row = arc tail position, column = arc head position.

    Dense ndarray when the direction-node count is at most 8,000, CSR beyond.
    """
    if nbg.node_count <= DENSE_DIRECTION_LIMIT:
        a = np.zeros((nbg.node_count, nbg.node_count), dtype=np.float64)
        for i, j in nbg.arcs:
            a[i, j] = 1.0
        return a
    return nbg.adjacency_sparse()
