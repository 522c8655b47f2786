"""Shared test helpers: independent oracles and seeded instance generators."""

from __future__ import annotations

import itertools
import math

import numpy as np

from hyperlag import Hypergraph, evaluate

# Collected by the acceptance tests; echoed after the run so the per-criterion
# verdict is visible even when pytest captures stdout.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def fd_gradient(H, alpha, x, h=1e-5):
    """Central-difference gradient of the objective, independent of gradient()."""
    x = np.asarray(x, dtype=float)
    g = np.zeros(x.size)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (evaluate(H, alpha, xp) - evaluate(H, alpha, xm)) / (2.0 * h)
    return g


def project_bisect(v, tol=1e-14):
    """Simplex projection via bisection on the shift; independent of the
    sort-based implementation under test."""
    v = np.asarray(v, dtype=float)
    lo = v.max() - 1.0
    hi = v.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        s = np.maximum(v - mid, 0.0).sum()
        if s > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    x = np.maximum(v - 0.5 * (lo + hi), 0.0)
    return x / x.sum()


def random_hypergraph(rng, n_lo=3, n_hi=8, types_pool=(1, 2, 3, 4)):
    """Small random hypergraph with 1-3 cardinality levels, >=1 edge per level."""
    n = int(rng.integers(n_lo, n_hi + 1))
    pool = [r for r in types_pool if r <= n]
    k = int(rng.integers(1, min(len(pool), 3) + 1))
    types = sorted(rng.choice(pool, size=k, replace=False).tolist())
    edges = []
    for r in types:
        all_r = list(itertools.combinations(range(1, n + 1), r))
        cnt = int(rng.integers(1, min(len(all_r), 8) + 1))
        idx = rng.choice(len(all_r), size=cnt, replace=False)
        edges += [all_r[i] for i in idx]
    return Hypergraph(n, edges)


def random_alpha(rng, types, total_cap=1.0):
    """Coefficients for the non-base levels with sum alpha_r/(r-1)! <= total_cap."""
    types = sorted(types)
    rest = [r for r in types if r != types[0]]
    out = {}
    if rest:
        w = rng.uniform(0.1, 1.0, len(rest))
        total = float(rng.uniform(0.2, total_cap))
        w = w / w.sum() * total
        for r, wi in zip(rest, w):
            out[r] = float(wi * math.factorial(r - 1))
    return out


def interior_point(rng, n):
    """Strictly positive random weighting."""
    raw = rng.uniform(0.0, 1.0, n) + 0.05
    return raw / raw.sum()
