"""Canonical undirected-graph representation, ingestion, connectivity and betweenness.

Grids are immutable once built: every mutating operation (edge removal)
returns a fresh ``Grid``.  All node indices are canonical 0-based integers;
one-based input files are normalized at parse time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

# Dense adjacency below this node count, CSR above (large grids need sparse traversal).
DENSE_NODE_LIMIT = 2_000

Edge = tuple[int, int]

# Per-node survival flags for one sampled disaster outcome (length == node_count).
AliveMask = np.ndarray


class GraphParseError(ValueError):
    """Malformed graph input (bad token, self-loop, inconsistent header...)."""


class GraphError(ValueError):
    """Domain error on a structurally valid graph (missing edge, no edges...)."""


def _canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Grid:
    """Undirected simple graph of buses and lines.

    ``edges`` is a lexicographically sorted tuple of (min, max) pairs; the
    adjacency operator is materialized lazily as dense or CSR depending on
    size.  Isolated nodes are legal.
    """

    node_count: int
    edges: tuple[Edge, ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.node_count <= 0:
            raise GraphError("grid must have at least one node")
        seen: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise GraphError(f"edge ({u},{v}) outside node range 0..{self.node_count - 1}")
            if u > v:
                raise GraphError(f"edge ({u},{v}) not in canonical (min,max) order")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if self.labels is not None and len(self.labels) != self.node_count:
            raise GraphError("labels length must equal node_count")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @staticmethod
    def from_edges(node_count: int, edges: Iterable[Sequence[int]],
                   labels: tuple[int, ...] | None = None) -> "Grid":
        canon = sorted({_canonical_edge(int(u), int(v)) for u, v in edges})
        return Grid(node_count=node_count, edges=tuple(canon), labels=labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor lists, one per node."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self):
        """Symmetric binary adjacency: dense ndarray for small grids, CSR otherwise."""
        n = self.node_count
        if n < DENSE_NODE_LIMIT:
            a = np.zeros((n, n), dtype=np.float64)
            for u, v in self.edges:
                a[u, v] = 1.0
                a[v, u] = 1.0
            return a
        if not self.edges:
            return sp.csr_matrix((n, n), dtype=np.float64)
        rows, cols = [], []
        for u, v in self.edges:
            rows += (u, v)
            cols += (v, u)
        data = np.ones(len(rows), dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    def has_edge(self, u: int, v: int) -> bool:
        return _canonical_edge(u, v) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components over alive nodes; dead nodes carry id -1.

    Component ids are contiguous from 0 and ordered by decreasing size
    (ties broken by smallest contained node index).
    """

    component_id: np.ndarray
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(self.sizes[i] < self.sizes[i + 1] for i in range(len(self.sizes) - 1)):
            raise GraphError("component sizes must be descending")


DEAD_COMPONENT = -1


def connected_components(grid: Grid, mask: AliveMask) -> ComponentPartition:
    """BFS partition of the alive subgraph."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (grid.node_count,):
        raise GraphError(f"mask length {mask.shape} does not match node count {grid.node_count}")
    comp = np.full(grid.node_count, DEAD_COMPONENT, dtype=np.int64)
    neighbors = grid.neighbors
    raw: list[tuple[int, int]] = []  # (size, smallest member) per raw component
    next_id = 0
    for start in range(grid.node_count):
        if not mask[start] or comp[start] != DEAD_COMPONENT:
            continue
        size = 0
        comp[start] = next_id
        queue = deque([start])
        while queue:
            u = queue.popleft()
            size += 1
            for w in neighbors[u]:
                if mask[w] and comp[w] == DEAD_COMPONENT:
                    comp[w] = next_id
                    queue.append(w)
        raw.append((size, start))
        next_id += 1
    # Relabel so sizes come out descending, deterministically.
    order = sorted(range(next_id), key=lambda i: (-raw[i][0], raw[i][1]))
    relabel = np.empty(next_id, dtype=np.int64)
    for new_id, old_id in enumerate(order):
        relabel[old_id] = new_id
    alive = comp != DEAD_COMPONENT
    comp[alive] = relabel[comp[alive]]
    sizes = tuple(raw[old_id][0] for old_id in order)
    return ComponentPartition(component_id=comp, sizes=sizes)


def largest_component_size(grid: Grid, mask: AliveMask) -> int:
    """Size of the largest connected component of alive nodes (0 if none alive)."""
    part = connected_components(grid, mask)
    return part.sizes[0] if part.sizes else 0


def remove_edge(grid: Grid, edge: Sequence[int]) -> Grid:
    """New Grid without ``edge``; the node set is unchanged."""
    e = _canonical_edge(int(edge[0]), int(edge[1]))
    if e not in grid._edge_set:
        raise GraphError(f"edge {e} not present")
    return Grid(node_count=grid.node_count,
                edges=tuple(x for x in grid.edges if x != e),
                labels=grid.labels)


def remove_edges(grid: Grid, edges: Iterable[Sequence[int]]) -> Grid:
    """New Grid without all listed edges (each must be present)."""
    drop = set()
    for edge in edges:
        e = _canonical_edge(int(edge[0]), int(edge[1]))
        if e not in grid._edge_set or e in drop:
            raise GraphError(f"edge {e} not present")
        drop.add(e)
    return Grid(node_count=grid.node_count,
                edges=tuple(x for x in grid.edges if x not in drop),
                labels=grid.labels)


def edge_betweenness(grid: Grid) -> dict[Edge, float]:
    """Exact shortest-path edge betweenness (Brandes), unweighted.

    Each unordered node pair is counted once; pairs split their weight
    over the shortest paths that realize them.
    """
    scores: dict[Edge, float] = {e: 0.0 for e in grid.edges}
    neighbors = grid.neighbors
    n = grid.node_count
    for s in range(n):
        # BFS from s with shortest-path counts.
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n, dtype=np.float64)
        dist[s] = 0
        sigma[s] = 1.0
        order: list[int] = []
        queue = deque([s])
        preds: list[list[int]] = [[] for _ in range(n)]
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in neighbors[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        # Dependency accumulation in reverse BFS order.
        delta = np.zeros(n, dtype=np.float64)
        for w in reversed(order):
            for u in preds[w]:
                c = sigma[u] / sigma[w] * (1.0 + delta[w])
                scores[_canonical_edge(u, w)] += c
                delta[u] += c
    # Each unordered pair was visited from both endpoints.
    return {e: v / 2.0 for e, v in scores.items()}


# ---------------------------------------------------------------------------
# Ingestion / serialization
# ---------------------------------------------------------------------------

def parse_edge_list(text: str, indexing: str = "auto") -> Grid:
    """Parse whitespace-separated edge-list text into a canonical Grid.

    Format: one edge per line as two integer tokens; ``#`` starts a comment;
    an optional ``nodes=<N>`` header fixes the node count.  ``indexing`` is
    one of ``zero-based``, ``one-based`` or ``auto`` (input whose minimum
    index is 1 and which never uses 0 is treated as one-based).
    """
    if indexing not in ("zero-based", "one-based", "auto"):
        raise GraphParseError(f"unknown indexing mode {indexing!r}")
    header_nodes: int | None = None
    raw_edges: list[tuple[int, int, int]] = []  # (u, v, line_no)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("nodes="):
            try:
                header_nodes = int(line[len("nodes="):])
            except ValueError:
                raise GraphParseError(f"line {line_no}: bad header {line!r}") from None
            if header_nodes <= 0:
                raise GraphParseError(f"line {line_no}: nodes= must be positive")
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"line {line_no}: expected two integer tokens, got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {line_no}: non-integer token in {line!r}") from None
        if u == v:
            raise GraphParseError(f"line {line_no}: self-loop on node {u}")
        raw_edges.append((u, v, line_no))
    if not raw_edges:
        raise GraphParseError("no edges in input")

    min_idx = min(min(u, v) for u, v, _ in raw_edges)
    if min_idx < 0:
        raise GraphParseError("negative node index")
    one_based = indexing == "one-based" or (indexing == "auto" and min_idx >= 1)
    shift = 1 if one_based else 0
    edges: set[Edge] = set()
    for u, v, line_no in raw_edges:
        if one_based and min(u, v) < 1:
            raise GraphParseError(f"line {line_no}: index 0 in one-based input")
        edges.add(_canonical_edge(u - shift, v - shift))
    max_idx = max(max(e) for e in edges)
    node_count = max_idx + 1
    if header_nodes is not None:
        if header_nodes < node_count:
            raise GraphParseError(
                f"header nodes={header_nodes} smaller than max index + 1 = {node_count}")
        node_count = header_nodes
    labels = tuple(range(shift, node_count + shift)) if one_based else None
    return Grid(node_count=node_count, edges=tuple(sorted(edges)), labels=labels)


def serialize_edge_list(grid: Grid) -> str:
    """Canonical 0-based edge-list text with a nodes= header (round-trips)."""
    lines = [f"nodes={grid.node_count}"]
    lines += [f"{u} {v}" for u, v in grid.edges]
    return "\n".join(lines) + "\n"


def parse_graph_json(text: str) -> Grid:
    """Parse the JSON graph format {"nodes": N, "edges": [[i,j],...]} (0-based)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "nodes" not in obj or "edges" not in obj:
        raise GraphParseError('JSON graph must be an object with "nodes" and "edges"')
    nodes = obj["nodes"]
    if not isinstance(nodes, int) or nodes <= 0:
        raise GraphParseError('"nodes" must be a positive integer')
    edges = []
    for item in obj["edges"]:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise GraphParseError(f"bad edge entry {item!r}")
        u, v = item
        if not isinstance(u, int) or not isinstance(v, int):
            raise GraphParseError(f"bad edge entry {item!r}")
        if u == v:
            raise GraphParseError(f"self-loop on node {u}")
        edges.append((u, v))
    if not edges:
        raise GraphParseError("no edges in input")
    try:
        return Grid.from_edges(nodes, edges)
    except GraphError as exc:
        raise GraphParseError(str(exc)) from None


def serialize_graph_json(grid: Grid) -> str:
    return json.dumps({"nodes": grid.node_count,
                       "edges": [[u, v] for u, v in grid.edges]}) + "\n"
