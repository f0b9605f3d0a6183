"""Walk-probability matrices built with the relay-composition operator.

The composition (A (x) B)_ij = 1 - prod_{l != i,j} (1 - A_il * B_lj)
combines step matrices through intermediate vertices.  Folding a one-step
matrix with itself z-1 times gives a z-step walk-probability matrix.  For
z = 2 the per-relay edge pairs are disjoint, so the independence behind
the product is exact; for longer walks shared edges make it an
approximation and no exactness is claimed.

Walk matrices follow the zero-diagonal convention and are deliberately a
separate type from connectivity matrices so the two cannot be mixed up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import ProbGraph

__all__ = ["WalkMatrix", "otimes", "walk_matrix", "walk_probabilities"]


@dataclass(frozen=True)
class WalkMatrix:
    entries: np.ndarray
    z: int = 1

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _checked(entries: np.ndarray, z: int) -> WalkMatrix:
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"walk matrix must be square, got shape {entries.shape}")
    if np.any(entries < 0.0) or np.any(entries > 1.0):
        raise ValueError("walk matrix entries must lie in [0, 1]")
    return WalkMatrix(entries=entries, z=z)


def walk_matrix(g: ProbGraph) -> WalkMatrix:
    """One-step walk matrix of a graph: link probabilities, zero diagonal."""
    w = np.zeros((g.n, g.n))
    for i, j, p in g.edges:
        w[i, j] = p
        w[j, i] = p
    return WalkMatrix(entries=w, z=1)


def otimes(a: WalkMatrix, b: WalkMatrix) -> WalkMatrix:
    """Relay composition of two walk matrices.

    Entry (i, j) is 1 - prod over l not in {i, j} of (1 - a_il * b_lj);
    the diagonal uses the same formula.
    """
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    # terms[i, l, j] = 1 - a_il * b_lj, with excluded relays neutralized
    terms = 1.0 - a.entries[:, :, None] * b.entries[None, :, :]
    idx = np.arange(n)
    terms[idx, idx, :] = 1.0  # l == i
    terms[:, idx, idx] = 1.0  # l == j
    return _checked(1.0 - np.prod(terms, axis=1), a.z + b.z)


def walk_probabilities(m: WalkMatrix, z: int) -> WalkMatrix:
    """z-step walk matrix: the one-step matrix left-folded z - 1 times."""
    if z < 1:
        raise ValueError(f"walk length must be >= 1, got {z}")
    result = _checked(np.array(m.entries, dtype=float), 1)
    for _ in range(z - 1):
        result = otimes(result, m)
    return result
