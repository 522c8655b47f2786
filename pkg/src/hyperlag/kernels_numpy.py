"""Pure-numpy reference implementations of the hot evaluation kernels.

Each function has an identical twin in kernels_numba; `kernels` picks the
backend at import time.  Edge matrices are 0-based int64 of shape (m, r).
"""
from __future__ import annotations

import numpy as np


def eval_level(edges: np.ndarray, x: np.ndarray) -> float:
    """Sum over edges of the product of the incident coordinates."""
    return float(np.prod(x[edges], axis=1).sum())


def accumulate_grad_level(edges: np.ndarray, x: np.ndarray, coeff: float, out: np.ndarray) -> None:
    """Add coeff * d/dx of the level sum into out."""
    m, r = edges.shape
    vals = x[edges]
    for b in range(r):
        if r == 1:
            others = np.ones(m)
        else:
            others = np.prod(np.delete(vals, b, axis=1), axis=1)
        np.add.at(out, edges[:, b], coeff * others)


def accumulate_hess_level(edges: np.ndarray, x: np.ndarray, coeff: float, out: np.ndarray) -> None:
    """Add coeff * second derivatives of the level sum into out (n, n).

    The diagonal stays zero: edges never repeat a vertex, so the level sum
    is multilinear.
    """
    m, r = edges.shape
    if r < 2:
        return
    vals = x[edges]
    for b in range(r):
        for c in range(b + 1, r):
            rest = [d for d in range(r) if d != b and d != c]
            if rest:
                others = np.prod(vals[:, rest], axis=1)
            else:
                others = np.ones(m)
            np.add.at(out, (edges[:, b], edges[:, c]), coeff * others)
            np.add.at(out, (edges[:, c], edges[:, b]), coeff * others)


def eval_level_batch(edges: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Level sums for a batch of points xs of shape (p, n)."""
    p = xs.shape[0]
    out = np.empty(p)
    # chunked so the (chunk, m, r) intermediate stays small
    chunk = max(1, 4_000_000 // max(1, edges.size))
    for lo in range(0, p, chunk):
        hi = min(p, lo + chunk)
        out[lo:hi] = np.prod(xs[lo:hi][:, edges], axis=2).sum(axis=1)
    return out
