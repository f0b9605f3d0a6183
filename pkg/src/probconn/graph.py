"""Probabilistic graph model: vertices, unreliable links, support structure.

A graph is a vertex count plus a list of possible undirected edges, each
carrying an independent existence probability.  The *support graph* is the
subgraph of edges with strictly positive probability; it determines which
vertex pairs can ever be connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "GraphValidationError",
    "ProbGraph",
    "add_edge",
    "adjacency_matrix",
    "articulation_points",
    "build_graph",
    "support_components",
    "with_edge_probability",
]


class GraphValidationError(ValueError):
    """A graph description violates a structural constraint."""


@dataclass(frozen=True)
class ProbGraph:
    """Undirected graph on vertices 0..n-1 with independent link probabilities.

    Edges are canonical: endpoints ordered i < j and the tuple sorted by
    (i, j).  That ordering defines the edge indexing used by the state
    enumeration and sampling engines.  Instances are immutable; construct
    them through :func:`build_graph` and derive variants through
    :func:`with_edge_probability` / :func:`add_edge`.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def index_of(self, i: int, j: int) -> int:
        """Canonical index of edge {i, j}.  Raises KeyError if absent."""
        a, b = (i, j) if i < j else (j, i)
        for idx, (u, v, _) in enumerate(self.edges):
            if u == a and v == b:
                return idx
        raise KeyError(f"no edge ({a}, {b})")


def build_graph(n: int, edges: Iterable[tuple[int, int, float]]) -> ProbGraph:
    """Validate and canonicalize a graph description.

    Endpoint order within a pair does not matter; pairs are normalized to
    i < j and the edge list is sorted by (i, j).  Edges with probability 0
    are legal and retained: they are possible links that currently never
    come up, and they contribute nothing to any result.

    Raises GraphValidationError for: n < 1, self-loops, indices outside
    [0, n), probabilities outside [0, 1], or a repeated unordered pair.
    """
    if n < 1:
        raise GraphValidationError(f"vertex count must be >= 1, got {n}")
    seen: set[tuple[int, int]] = set()
    canon: list[tuple[int, int, float]] = []
    for i, j, p in edges:
        i, j = int(i), int(j)
        if i == j:
            raise GraphValidationError(f"self-loop at vertex {i}")
        if not (0 <= i < n) or not (0 <= j < n):
            raise GraphValidationError(
                f"edge ({i}, {j}) has an endpoint outside [0, {n})"
            )
        p = float(p)
        if math.isnan(p) or not (0.0 <= p <= 1.0):
            raise GraphValidationError(
                f"edge ({i}, {j}) probability {p} is outside [0, 1]"
            )
        if i > j:
            i, j = j, i
        if (i, j) in seen:
            raise GraphValidationError(f"duplicate edge ({i}, {j})")
        seen.add((i, j))
        canon.append((i, j, p))
    canon.sort(key=lambda e: (e[0], e[1]))
    return ProbGraph(n=n, edges=tuple(canon))


def with_edge_probability(g: ProbGraph, edge: int, p: float) -> ProbGraph:
    """New graph with the probability of one canonical edge replaced."""
    if not (0 <= edge < g.m):
        raise GraphValidationError(f"edge index {edge} outside [0, {g.m})")
    i, j, _ = g.edges[edge]
    edited = list(g.edges)
    edited[edge] = (i, j, p)
    return build_graph(g.n, edited)


def add_edge(g: ProbGraph, i: int, j: int, p: float) -> ProbGraph:
    """New graph with one additional possible edge."""
    return build_graph(g.n, list(g.edges) + [(i, j, p)])


def adjacency_matrix(g: ProbGraph) -> np.ndarray:
    """Dense symmetric link-probability matrix with unit diagonal."""
    a = np.eye(g.n)
    for i, j, p in g.edges:
        a[i, j] = p
        a[j, i] = p
    return a


def _union_find_labels(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Connected-component labels (smallest member wins) via union-find."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return [find(v) for v in range(n)]


def support_components(g: ProbGraph) -> list[list[int]]:
    """Vertex blocks mutually reachable through positive-probability edges.

    Zero-probability edges never connect anything.  Blocks are sorted
    ascending internally and ordered by their smallest vertex.
    """
    labels = _union_find_labels(g.n, ((i, j) for i, j, p in g.edges if p > 0.0))
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(labels[v], []).append(v)
    return [sorted(groups[root]) for root in sorted(groups)]


def articulation_points(g: ProbGraph) -> list[int]:
    """Vertices whose removal disconnects a support component.

    Standard DFS low-link computation on the support graph, iterative so
    deep paths cannot hit the recursion limit.
    """
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j, p in g.edges:
        if p > 0.0:
            adj[i].append(j)
            adj[j].append(i)
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    is_cut = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack: list[tuple[int, Iterable[int]]] = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)  # type: ignore[arg-type]
            if w is None:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if u != root and low[v] >= disc[u]:
                        is_cut[u] = True
                continue
            if w == parent[v]:
                continue
            if disc[w] != -1:
                if disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, iter(adj[w])))
        if root_children > 1:
            is_cut[root] = True
    return [v for v in range(n) if is_cut[v]]
