"""numba-compiled twins of the kernels in kernels_numpy."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def eval_level(edges, x):
    m, r = edges.shape
    total = 0.0
    for a in range(m):
        p = 1.0
        for b in range(r):
            p *= x[edges[a, b]]
        total += p
    return total


@njit(cache=True)
def accumulate_grad_level(edges, x, coeff, out):
    m, r = edges.shape
    for a in range(m):
        for b in range(r):
            p = 1.0
            for c in range(r):
                if c != b:
                    p *= x[edges[a, c]]
            out[edges[a, b]] += coeff * p


@njit(cache=True)
def accumulate_hess_level(edges, x, coeff, out):
    m, r = edges.shape
    for a in range(m):
        for b in range(r):
            for c in range(b + 1, r):
                p = 1.0
                for d in range(r):
                    if d != b and d != c:
                        p *= x[edges[a, d]]
                out[edges[a, b], edges[a, c]] += coeff * p
                out[edges[a, c], edges[a, b]] += coeff * p


@njit(cache=True)
def eval_level_batch(edges, xs):
    m, r = edges.shape
    p = xs.shape[0]
    out = np.empty(p)
    for q in range(p):
        total = 0.0
        for a in range(m):
            prod = 1.0
            for b in range(r):
                prod *= xs[q, edges[a, b]]
            total += prod
        out[q] = total
    return out
