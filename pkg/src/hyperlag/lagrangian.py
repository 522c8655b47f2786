"""Parametrized Lagrangians of non-uniform hypergraphs.

For a hypergraph H with edge cardinalities T and nonnegative level
coefficients, the objective on a weighting x in the standard simplex is

    L(H, x) = sum over levels r of  coeff_r * sum over r-edges e of prod_{v in e} x_v

with the convention that the smallest present level carries coefficient 1
unless a coefficient is given explicitly (scaled base coefficients are
allowed so that sub-objectives of larger graphs can be expressed).  The
Lagrangian of H is the maximum of L(H, .) over the simplex.

This module provides evaluation, gradients, a multistart projected
gradient solver with Newton polishing, KKT reporting, support
minimization, and a brute-force oracle for small vertex counts.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .hypergraph import (
    Hypergraph,
    greedy_maximal_cliques,
    max_clique,
)

SIMPLEX_SUM_TOL = 1e-12
SUPPORT_EPS = 1e-9


class AlphaParams(Mapping):
    """Nonnegative objective coefficients keyed by edge cardinality.

    The smallest cardinality present in a hypergraph defaults to
    coefficient 1 when absent here; any other present cardinality must be
    listed explicitly.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d: dict[int, float] = {}
        for r, v in items:
            r = int(r)
            v = float(v)
            if r < 1:
                raise ValueError(f"coefficient level must be positive, got {r}")
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"coefficient for level {r} must be finite and nonnegative")
            if r in d:
                raise ValueError(f"duplicate coefficient for level {r}")
            d[r] = v
        self._coeffs = dict(sorted(d.items()))

    def __getitem__(self, r: int) -> float:
        return self._coeffs[r]

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlphaParams):
            return self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self._coeffs == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{r}: {v}" for r, v in self._coeffs.items())
        return f"AlphaParams({{{inner}}})"


def as_alpha(alpha: AlphaParams | Mapping[int, float] | None) -> AlphaParams:
    if alpha is None:
        return AlphaParams()
    if isinstance(alpha, AlphaParams):
        return alpha
    return AlphaParams(alpha)


def resolve_coeffs(types: Sequence[int], alpha) -> dict[int, float]:
    """Coefficient per present level: explicit values win, the smallest
    level defaults to 1, any other missing level is an error."""
    a = as_alpha(alpha)
    if not types:
        return {}
    base = min(types)
    out: dict[int, float] = {}
    for r in types:
        if r in a:
            out[r] = a[r]
        elif r == base:
            out[r] = 1.0
        else:
            raise ValueError(
                f"missing coefficient for level {r} (only the base level {base} defaults to 1)"
            )
    return out


def reduction_sum(types: Sequence[int], alpha) -> float:
    """Sum of coeff_r / (r-1)! over non-base levels; at most 1 in the
    regime where singleton mass dominates every larger level."""
    coeffs = resolve_coeffs(types, alpha)
    base = min(types)
    return sum(c / math.factorial(r - 1) for r, c in coeffs.items() if r != base)


# ---------------------------------------------------------------------------
# Weightings


def as_weighting(x, n: int | None = None, tol: float = SIMPLEX_SUM_TOL) -> np.ndarray:
    """Validate and copy a point of the standard simplex."""
    w = np.array(x, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weighting must be a nonempty vector")
    if n is not None and w.size != n:
        raise ValueError(f"weighting has length {w.size}, expected {n}")
    if not np.all(np.isfinite(w)) or w.min() < 0:
        raise ValueError("weighting entries must be finite and nonnegative")
    if abs(w.sum() - 1.0) > tol:
        raise ValueError(f"weighting sums to {w.sum()!r}, not 1")
    return w


def support_of(x: np.ndarray, eps: float = SUPPORT_EPS) -> tuple[int, ...]:
    """1-based indices of entries above the support threshold."""
    return tuple(int(i) + 1 for i in np.flatnonzero(np.asarray(x) > eps))


def characteristic_vector(U: Iterable[int], n: int) -> np.ndarray:
    """Uniform weighting on the vertex set U."""
    Us = sorted(set(int(v) for v in U))
    if not Us:
        raise ValueError("characteristic vector of an empty set")
    if Us[0] < 1 or Us[-1] > n:
        raise ValueError(f"vertex set {Us} outside 1..{n}")
    x = np.zeros(n)
    x[np.asarray(Us) - 1] = 1.0 / len(Us)
    return x


def project_to_simplex(v) -> np.ndarray:
    """Euclidean projection onto the standard simplex by the sorting rule."""
    w = np.asarray(v, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("projection input must be a nonempty vector")
    if not np.all(np.isfinite(w)):
        raise ValueError("projection input must be finite")
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, w.size + 1)
    rho = int(np.count_nonzero(u - css / ind > 0))
    theta = css[rho - 1] / rho
    out = np.maximum(w - theta, 0.0)
    s = out.sum()
    # renormalize so downstream simplex checks hold exactly
    if s > 0:
        out /= s
    else:
        out[:] = 1.0 / w.size
    return out


# ---------------------------------------------------------------------------
# Objective


class _Compiled:
    """Hypergraph plus resolved coefficients bound to the active kernels."""

    __slots__ = ("n", "pairs")

    def __init__(self, H: Hypergraph, coeffs: Mapping[int, float]):
        self.n = H.n
        self.pairs = [
            (float(coeffs[r]), H.level_array(r))
            for r in H.edge_types
            if coeffs[r] != 0.0
        ]

    def value(self, x: np.ndarray) -> float:
        total = 0.0
        for c, arr in self.pairs:
            total += c * kernels.eval_level(arr, x)
        return total

    def grad(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n)
        for c, arr in self.pairs:
            kernels.accumulate_grad_level(arr, x, c, out)
        return out

    def hess(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for c, arr in self.pairs:
            kernels.accumulate_hess_level(arr, x, c, out)
        return out

    def value_batch(self, xs: np.ndarray) -> np.ndarray:
        total = np.zeros(xs.shape[0])
        for c, arr in self.pairs:
            total += c * kernels.eval_level_batch(arr, xs)
        return total


def _compiled(H: Hypergraph, alpha) -> _Compiled:
    return _Compiled(H, resolve_coeffs(H.edge_types, alpha))


def evaluate(H: Hypergraph, alpha, x) -> float:
    """Objective value at x; x must have length H.n."""
    w = np.asarray(x, dtype=np.float64)
    if w.ndim != 1 or w.size != H.n:
        raise ValueError(f"x has shape {w.shape}, expected ({H.n},)")
    if not np.all(np.isfinite(w)):
        raise ValueError("x must be finite")
    return _compiled(H, alpha).value(w)


def gradient(H: Hypergraph, alpha, x) -> np.ndarray:
    """Gradient of the objective at x; component i sums the coefficient
    weighted products over the link of vertex i."""
    w = np.asarray(x, dtype=np.float64)
    if w.ndim != 1 or w.size != H.n:
        raise ValueError(f"x has shape {w.shape}, expected ({H.n},)")
    if not np.all(np.isfinite(w)):
        raise ValueError("x must be finite")
    return _compiled(H, alpha).grad(w)


def link_value(H: Hypergraph, alpha, sets_by_level: Mapping[int, Iterable[tuple]], x) -> float:
    """Coefficient-weighted value of a link-style family: for each level r
    of H, sum the products of x over the given (partial) sets, the empty
    tuple contributing 1."""
    coeffs = resolve_coeffs(H.edge_types, alpha)
    w = np.asarray(x, dtype=np.float64)
    total = 0.0
    for r, sets in sets_by_level.items():
        c = coeffs.get(r, 0.0)
        if c == 0.0:
            continue
        for A in sets:
            p = 1.0
            for v in A:
                p *= w[v - 1]
            total += c * p
    return total


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True, eq=False)
class Optimum:
    """A computed maximizer candidate of the objective."""

    value: float
    weighting: np.ndarray
    support: tuple[int, ...]
    kkt_residual: float
    starts_used: int = 0
    converged: bool = True

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "weighting": [float(v) for v in self.weighting],
            "support": list(self.support),
            "kkt_residual": self.kkt_residual,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class KKTReport:
    """First-order conditions at a point: gradient spread over the
    support and support pairs not covered by any edge."""

    stationarity_residual: float
    uncovered_pairs: tuple[tuple[int, int], ...]
    support: tuple[int, ...]
    multiplier: float


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iters: int = 400
    starts: int = 12
    seed: int = 0
    support_threshold: float = SUPPORT_EPS
    value_tol: float = 1e-9

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 0 or self.starts < 0:
            raise ValueError("max_iters and starts must be nonnegative")
        if self.support_threshold <= 0 or self.value_tol < 0:
            raise ValueError("bad threshold configuration")


def kkt_check(H: Hypergraph, alpha, x, eps: float = SUPPORT_EPS) -> KKTReport:
    """Gradient spread across the support and the list of support pairs
    contained together in no edge."""
    w = as_weighting(x, H.n)
    g = gradient(H, alpha, w)
    supp = support_of(w, eps)
    if supp:
        gs = g[np.asarray(supp) - 1]
        residual = float(gs.max() - gs.min()) if len(supp) > 1 else 0.0
        multiplier = float(gs.mean())
    else:
        residual = 0.0
        multiplier = 0.0
    covered: set[tuple[int, int]] = set()
    for e in H.edges():
        for a, b in itertools.combinations(e, 2):
            covered.add((a, b))
    uncovered = tuple(
        (i, j)
        for i, j in itertools.combinations(supp, 2)
        if (i, j) not in covered
    )
    return KKTReport(residual, uncovered, supp, multiplier)


# ---------------------------------------------------------------------------
# Solver


def _tangent_residual(comp: _Compiled, x: np.ndarray, g: np.ndarray | None = None) -> float:
    if g is None:
        g = comp.grad(x)
    return float(np.max(np.abs(project_to_simplex(x + g) - x)))


def _ascend(comp: _Compiled, x0: np.ndarray, tol: float, max_iters: int) -> tuple[np.ndarray, float, bool]:
    """Projected gradient ascent with a backtracking step."""
    x = x0.copy()
    fx = comp.value(x)
    step = 1.0
    converged = False
    for _ in range(max_iters):
        g = comp.grad(x)
        y_unit = project_to_simplex(x + g)
        if np.max(np.abs(y_unit - x)) <= tol:
            converged = True
            break
        s = step
        improved = False
        for _ in range(45):
            y = y_unit if s == 1.0 else project_to_simplex(x + s * g)
            fy = comp.value(y)
            if fy > fx + 1e-15:
                x, fx = y, fy
                step = min(s * 2.0, 1e8)
                improved = True
                break
            s *= 0.5
            if s < 1e-14:
                break
        if not improved:
            break
    return x, fx, converged


def _polish(comp: _Compiled, x0: np.ndarray, idx: np.ndarray, max_iters: int = 40) -> tuple[float, np.ndarray, float, bool]:
    """Damped Newton on the stationarity system restricted to a support.

    Solves grad_i = mu on the support plus the affine constraint; the
    multilinear objective has zero Hessian diagonal, so the bordered
    system is well scaled on generic supports.
    """
    n = comp.n
    x = np.zeros(n)
    x[idx] = x0[idx]
    s = x[idx].sum()
    if s <= 0:
        x[idx] = 1.0 / idx.size
    else:
        x[idx] /= s
    k = idx.size
    if k == 1:
        v = comp.value(x)
        return v, x, 0.0, True
    g = comp.grad(x)
    mu = float(g[idx].mean())
    res = float(np.max(np.abs(g[idx] - mu)))
    prev = math.inf
    stalls = 0
    for _ in range(max_iters):
        if res < 1e-13:
            break
        if res >= prev - 1e-16:
            stalls += 1
            if stalls >= 3:
                break
        else:
            stalls = 0
        prev = res
        Hm = comp.hess(x)[np.ix_(idx, idx)]
        J = np.zeros((k + 1, k + 1))
        J[:k, :k] = Hm
        J[:k, k] = -1.0
        J[k, :k] = 1.0
        R = np.empty(k + 1)
        R[:k] = g[idx] - mu
        R[k] = x[idx].sum() - 1.0
        try:
            delta = np.linalg.solve(J, -R)
        except np.linalg.LinAlgError:
            delta = np.linalg.lstsq(J, -R, rcond=None)[0]
        if not np.all(np.isfinite(delta)):
            break
        lam = 1.0
        dx = delta[:k]
        for _ in range(30):
            if np.min(x[idx] + lam * dx) >= -1e-12:
                break
            lam *= 0.5
        x[idx] = np.maximum(x[idx] + lam * dx, 0.0)
        ssum = x[idx].sum()
        if ssum > 0:
            x[idx] /= ssum
        mu += lam * float(delta[k])
        g = comp.grad(x)
        res = float(np.max(np.abs(g[idx] - mu)))
    value = comp.value(x)
    return value, x, res, res <= 1e-10


@dataclass(frozen=True, eq=False)
class _Candidate:
    value: float
    x: np.ndarray
    converged: bool


def _run_start(comp: _Compiled, x0: np.ndarray, cfg: SolverConfig) -> _Candidate:
    ascend_tol = max(cfg.tol, 1e-8)
    x1, f1, conv1 = _ascend(comp, x0, ascend_tol, cfg.max_iters)
    mask = x1 > cfg.support_threshold
    if not mask.any():
        mask[int(np.argmax(x1))] = True
    idx = np.flatnonzero(mask)
    if idx.size <= 200:
        f2, x2, _, conv2 = _polish(comp, x1, idx)
    else:
        f2, x2, conv2 = f1, x1, False
    if f2 >= f1:
        x, f, conv = x2, f2, conv1 or conv2
    else:
        x, f, conv = x1, f1, conv1
    return _Candidate(f, x, conv)


def _start_points(H: Hypergraph, comp: _Compiled, cfg: SolverConfig) -> list[np.ndarray]:
    n = H.n
    starts: list[np.ndarray] = [np.full(n, 1.0 / n)]
    witnesses: list[tuple[int, ...]] = []
    if n <= 24:
        order, witness = max_clique(H)
        if order >= 1:
            witnesses.append(witness)
    witnesses.extend(greedy_maximal_cliques(H))
    for W in witnesses:
        starts.append(characteristic_vector(W, n))
    if cfg.starts > 0:
        rng = np.random.default_rng(cfg.seed)
        draws = rng.dirichlet(np.ones(n), size=cfg.starts)
        starts.extend(np.ascontiguousarray(row) for row in draws)
    out: list[np.ndarray] = []
    seen = set()
    for s in starts:
        key = np.round(s, 12).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def _select(cands: list[_Candidate], cfg: SolverConfig) -> _Candidate:
    v_star = max(c.value for c in cands)
    eligible = [c for c in cands if c.value >= v_star - cfg.value_tol]
    small = min(len(support_of(c.x, cfg.support_threshold)) for c in eligible)
    eligible = [
        c for c in eligible if len(support_of(c.x, cfg.support_threshold)) == small
    ]
    return max(eligible, key=lambda c: tuple(c.x))


def _finalize(
    comp: _Compiled,
    H: Hypergraph,
    alpha,
    x: np.ndarray,
    starts_used: int,
    converged_hint: bool,
    cfg: SolverConfig,
) -> Optimum:
    x = x.copy()
    x[x <= cfg.support_threshold] = 0.0
    s = x.sum()
    if s <= 0:
        x[:] = 1.0 / x.size
    else:
        x /= s
    value = comp.value(x)
    residual = _tangent_residual(comp, x)
    converged = converged_hint and residual <= cfg.tol * 10
    report = kkt_check(H, alpha, x, cfg.support_threshold)
    x.flags.writeable = False
    return Optimum(
        value=value,
        weighting=x,
        support=report.support,
        kkt_residual=report.stationarity_residual,
        starts_used=starts_used,
        converged=converged,
    )


def _trivial_optimum(H: Hypergraph, cfg: SolverConfig) -> Optimum:
    x = np.full(H.n, 1.0 / H.n)
    x.flags.writeable = False
    return Optimum(
        value=0.0,
        weighting=x,
        support=tuple(range(1, H.n + 1)),
        kkt_residual=0.0,
        starts_used=0,
        converged=True,
    )


def optimize(H: Hypergraph, alpha=None, cfg: SolverConfig | None = None) -> Optimum:
    """Maximize the objective over the simplex by multistart projected
    gradient ascent with Newton polishing.

    Starts are the uniform point, characteristic vectors of greedy and
    exact cliques, and cfg.starts Dirichlet draws from cfg.seed.  Ties
    within cfg.value_tol prefer smaller support, then the
    lexicographically largest weighting.  Deterministic for fixed inputs.
    """
    cfg = cfg or SolverConfig()
    if H.n == 0:
        raise ValueError("hypergraph has no vertices")
    if H.edge_count() == 0:
        return _trivial_optimum(H, cfg)
    comp = _compiled(H, alpha)
    cands = [_run_start(comp, s, cfg) for s in _start_points(H, comp, cfg)]
    best = _select(cands, cfg)
    return _finalize(comp, H, alpha, best.x, len(cands), best.converged, cfg)


def support_minimize(H: Hypergraph, alpha, opt: Optimum, cfg: SolverConfig | None = None) -> Optimum:
    """Merge support pairs covered by no edge (shifting mass onto the
    higher-gradient vertex) and re-polish until every support pair is
    covered.  The merged pair has no joint edge, so each merge preserves
    the value up to the gradient gap it exploits."""
    cfg = cfg or SolverConfig()
    if H.edge_count() == 0:
        return opt
    comp = _compiled(H, alpha)
    x = np.array(opt.weighting, dtype=np.float64)
    covered: set[tuple[int, int]] = set()
    for e in H.edges():
        for a, b in itertools.combinations(e, 2):
            covered.add((a, b))
    converged = opt.converged
    for _ in range(H.n):
        supp = support_of(x, cfg.support_threshold)
        pair = next(
            (
                (i, j)
                for i, j in itertools.combinations(supp, 2)
                if (i, j) not in covered
            ),
            None,
        )
        if pair is None:
            break
        i, j = pair
        g = comp.grad(x)
        # move mass onto the larger gradient; ties keep the smaller index
        if g[j - 1] > g[i - 1]:
            src, dst = i, j
        else:
            src, dst = j, i
        x[dst - 1] += x[src - 1]
        x[src - 1] = 0.0
        merged_value = comp.value(x)
        idx = np.flatnonzero(x > cfg.support_threshold)
        if idx.size:
            v2, x2, _, conv2 = _polish(comp, x, idx)
            if v2 >= merged_value - 1e-12:
                x = x2
                converged = converged or conv2
    return _finalize(comp, H, alpha, x, opt.starts_used, converged, cfg)


# ---------------------------------------------------------------------------
# Brute-force oracle


_ORACLE_MAX_N = 12
_LATTICE_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _lattice_step(k: int) -> int:
    if k <= 4:
        return 32
    if k <= 6:
        return 16
    if k <= 8:
        return 8
    return k + 4


def _lattice(k: int) -> np.ndarray:
    """Interior lattice of the (k-1)-simplex: compositions of the step
    count into k positive parts, scaled.  Boundary points are covered by
    smaller supports."""
    s = _lattice_step(k)
    cached = _LATTICE_CACHE.get((k, s))
    if cached is None:
        cuts = np.array(
            list(itertools.combinations(range(1, s), k - 1)), dtype=np.int64
        )
        full = np.empty((cuts.shape[0], k + 1), dtype=np.int64)
        full[:, 0] = 0
        full[:, 1:k] = cuts
        full[:, k] = s
        parts = np.diff(full, axis=1).astype(np.float64) / s
        parts.flags.writeable = False
        cached = parts
        _LATTICE_CACHE[(k, s)] = cached
    return cached


def exact_oracle(H: Hypergraph, alpha=None, cfg: SolverConfig | None = None) -> Optimum:
    """Independent brute-force maximization for H.n <= 12: enumerate every
    support, scan an interior lattice on it, and Newton-polish the best
    lattice point and the uniform point of the support."""
    cfg = cfg or SolverConfig()
    if H.n > _ORACLE_MAX_N:
        raise ValueError(f"exact_oracle supports at most {_ORACLE_MAX_N} vertices, got {H.n}")
    if H.n == 0:
        raise ValueError("hypergraph has no vertices")
    if H.edge_count() == 0:
        return _trivial_optimum(H, cfg)
    comp = _compiled(H, alpha)
    n = H.n
    edge_masks = []
    for e in H.edges():
        m = 0
        for v in e:
            m |= 1 << (v - 1)
        edge_masks.append(m)

    best_value = -math.inf
    best_x = np.full(n, 1.0 / n)
    polishes = 0
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            covered = 0
            for em in edge_masks:
                if em & mask == em:
                    covered |= em
            if covered != mask:
                continue
            idx = np.asarray(combo, dtype=np.int64)
            if k == 1:
                x = np.zeros(n)
                x[idx] = 1.0
                v = comp.value(x)
                if v > best_value:
                    best_value, best_x = v, x
                continue
            lattice = _lattice(k)
            xs = np.zeros((lattice.shape[0], n))
            xs[:, idx] = lattice
            vals = comp.value_batch(xs)
            top = int(np.argmax(vals))
            seeds = [xs[top]]
            uniform = np.zeros(n)
            uniform[idx] = 1.0 / k
            seeds.append(uniform)
            if float(vals[top]) > best_value:
                best_value = float(vals[top])
                best_x = xs[top].copy()
            for seed in seeds:
                v2, x2, _, _ = _polish(comp, seed, idx)
                polishes += 1
                if v2 > best_value:
                    best_value, best_x = v2, x2
    return _finalize(comp, H, alpha, best_x, polishes, True, cfg)


# ---------------------------------------------------------------------------
# Compression comparison


def compression_monotonicity_check(H: Hypergraph, alpha, x, i: int, j: int) -> bool:
    """For a nonincreasing weighting, compression cannot lower the
    objective; returns the comparison at x with a 1e-12 slack."""
    from .hypergraph import compress_set

    if i >= j:
        raise ValueError(f"compression requires i < j, got i={i}, j={j}")
    w = as_weighting(x, H.n)
    if np.any(np.diff(w) > 1e-12):
        raise ValueError("weighting must be sorted nonincreasing")
    before = evaluate(H, alpha, w)
    after = evaluate(compress_set(H, i, j), alpha, w)
    return after >= before - 1e-12
