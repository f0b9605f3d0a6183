"""Exact connectivity probabilities by exhaustive edge-state enumeration.

Every subset of the possible edges is a state.  A state's probability is
the product of independent per-link factors, and the connectivity it
induces is a plain reachability question on a deterministic graph.  The
path-probability matrix is the state-probability-weighted average of the
per-state connectivity indicators.

States are visited in ascending bitmask order over the canonical edge
indexing and every matrix entry is accumulated with compensated (Kahan)
summation, so a given build produces bit-identical output run after run.
Enumeration runs independently inside each support component; entries
across components are exactly zero by construction.

This is deliberately the brute-force definition: it serves as the trusted
reference the sampling engine and all analyses are checked against.  Cost
is exponential in the largest component's edge count, which is why
:func:`exact_connectivity` enforces a per-component edge limit.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .graph import ProbGraph, _union_find_labels, support_components

__all__ = [
    "DEFAULT_MAX_EDGES",
    "EdgeLimitExceeded",
    "conditional_connectivity",
    "exact_connectivity",
    "state_probability",
]

# 2^22 states per component is the practical ceiling for exhaustive
# enumeration (tens of seconds); past it the Monte Carlo engine takes over.
DEFAULT_MAX_EDGES = 22


class EdgeLimitExceeded(RuntimeError):
    """A support component has too many edges for exhaustive enumeration."""


def _check_state(g: ProbGraph, state: Sequence[int]) -> list[int]:
    if len(state) != g.m:
        raise ValueError(
            f"state length {len(state)} does not match edge count {g.m}"
        )
    bits = []
    for b in state:
        b = int(b)
        if b not in (0, 1):
            raise ValueError(f"state entries must be 0 or 1, got {b}")
        bits.append(b)
    return bits


def conditional_connectivity(g: ProbGraph, state: Sequence[int]) -> np.ndarray:
    """0/1 connectivity matrix of the deterministic graph selected by `state`.

    Entry (i, j) is 1 exactly when i and j fall in the same connected
    component once only the edges flagged 1 are kept.  Diagonal is 1.
    """
    bits = _check_state(g, state)
    active = [(i, j) for (i, j, _), b in zip(g.edges, bits) if b]
    labels = np.array(_union_find_labels(g.n, active))
    return (labels[:, None] == labels[None, :]).astype(float)


def state_probability(g: ProbGraph, state: Sequence[int]) -> float:
    """Probability of one joint edge realization under link independence."""
    bits = _check_state(g, state)
    prob = 1.0
    for (_, _, p), b in zip(g.edges, bits):
        prob *= p if b else 1.0 - p
    return prob


def _state_weights(probs: Sequence[float]) -> np.ndarray:
    """Probabilities of all 2^m states, indexed by edge bitmask."""
    w = np.array([1.0])
    for p in probs:
        w = np.concatenate([w * (1.0 - p), w * p])
    return w


def _enumerate_block(nverts: int, edges: list[tuple[int, int, float]]) -> np.ndarray:
    """Exact connectivity matrix of one component by full state enumeration."""
    m = len(edges)
    eu = [e[0] for e in edges]
    ev = [e[1] for e in edges]
    weights = _state_weights([e[2] for e in edges]).tolist()

    pu: list[int] = []
    pv: list[int] = []
    for u in range(nverts):
        for v in range(u + 1, nverts):
            pu.append(u)
            pv.append(v)
    npairs = len(pu)
    sums = [0.0] * npairs
    comps = [0.0] * npairs

    base = list(range(nverts))
    for mask in range(1 << m):
        w = weights[mask]
        if w == 0.0:
            continue  # zero-weight states cannot move any entry
        parent = base.copy()
        mm = mask
        while mm:
            low = mm & -mm
            mm ^= low
            k = low.bit_length() - 1
            x = eu[k]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = ev[k]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                if x < y:
                    parent[y] = x
                else:
                    parent[x] = y
        roots = [0] * nverts
        for i in range(nverts):
            r = i
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            roots[i] = r
        for idx in range(npairs):
            if roots[pu[idx]] == roots[pv[idx]]:
                s = sums[idx]
                y = w - comps[idx]
                t = s + y
                comps[idx] = (t - s) - y
                sums[idx] = t

    block = np.eye(nverts)
    for idx in range(npairs):
        val = sums[idx]
        if val > 1.0:
            val = 1.0  # compensated sums can overshoot by one ulp
        elif val < 0.0:
            val = 0.0
        block[pu[idx], pv[idx]] = val
        block[pv[idx], pu[idx]] = val
    return block


def exact_connectivity(g: ProbGraph, max_edges: int = DEFAULT_MAX_EDGES) -> np.ndarray:
    """Exact path-probability matrix of `g`.

    Enumerates the 2^m edge states of each support component separately
    and assembles the block-diagonal result; entries between different
    components are exactly 0.

    Raises EdgeLimitExceeded when some component holds more than
    `max_edges` edges; the Monte Carlo engine is the fallback there.
    """
    blocks = support_components(g)
    position: dict[int, tuple[int, int]] = {}
    for b, verts in enumerate(blocks):
        for local, v in enumerate(verts):
            position[v] = (b, local)

    comp_edges: list[list[tuple[int, int, float]]] = [[] for _ in blocks]
    for i, j, p in g.edges:
        bi, li = position[i]
        bj, lj = position[j]
        if bi != bj:
            # endpoints in different support blocks force p == 0; the states
            # where such an edge is active carry zero weight
            continue
        comp_edges[bi].append((li, lj, p))

    for verts, edges in zip(blocks, comp_edges):
        if len(edges) > max_edges:
            raise EdgeLimitExceeded(
                f"component {verts} has {len(edges)} edges, above the "
                f"enumeration limit of {max_edges}; use the Monte Carlo "
                f"engine or raise max_edges"
            )

    q = np.eye(g.n)
    for verts, edges in zip(blocks, comp_edges):
        if len(verts) == 1:
            continue
        idx = np.array(verts)
        q[np.ix_(idx, idx)] = _enumerate_block(len(verts), edges)
    return q
