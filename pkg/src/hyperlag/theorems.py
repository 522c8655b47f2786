"""Closed forms for Lagrangians of complete and colex-segment hypergraphs,
the isolated-singleton reduction, the composition rule that peels off a
full singleton level, and a verdict runner comparing each prediction
against the numeric solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .hypergraph import (
    Hypergraph,
    colex_first_m,
    complete,
    induced,
    max_clique_order,
    validate_types,
)
from .lagrangian import (
    AlphaParams,
    Optimum,
    SolverConfig,
    as_alpha,
    exact_oracle,
    optimize,
    reduction_sum,
    resolve_coeffs,
)

THEOREM_IDS = ("ms", "th2", "th1r", "th123", "t12", "lemma34", "connection")

_HYP_SLACK = 1e-12


def ms_value(t: int) -> float:
    """Lagrangian of a 2-graph whose largest clique has t vertices."""
    if t < 1:
        raise ValueError("clique order must be at least 1")
    return 0.5 * (1.0 - 1.0 / t)


def th2_value(alpha2: float, t: int) -> float:
    """Lagrangian of the complete {1,2}-graph on t vertices with level-2
    coefficient alpha2, attained by the uniform weighting on it."""
    if t < 1:
        raise ValueError("clique order must be at least 1")
    return 1.0 + alpha2 / 2.0 - alpha2 / (2.0 * t)


def th2_hypothesis(alpha2: float, t: int) -> bool:
    """Validity regime of th2_value: t at least alpha2."""
    return t >= alpha2 - _HYP_SLACK


def th1r_value(alpha_r: float, r: int, t: int) -> float:
    """Lagrangian of the complete {1,r}-graph on t vertices with level-r
    coefficient alpha_r."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if t < 1:
        raise ValueError("clique order must be at least 1")
    prod = 1.0
    for i in range(1, r):
        prod *= t - i
    return 1.0 + alpha_r * prod / (math.factorial(r) * t ** (r - 1))


def th1r_threshold(alpha_r: float, r: int) -> int:
    """Smallest clique order for which th1r_value is proved; 1 when the
    coefficient is small enough that singleton mass always dominates."""
    if r < 2:
        raise ValueError("r must be at least 2")
    f = math.factorial(r - 2)
    if alpha_r <= f + _HYP_SLACK:
        return 1
    value = (alpha_r - f) ** (r - 2) / (f * alpha_r ** (r - 3))
    return max(1, math.ceil(value - 1e-9))


def th1r_hypothesis(alpha_r: float, r: int, t: int) -> bool:
    return t >= th1r_threshold(alpha_r, r)


def th123_value(alpha2: float, alpha3: float, t: int) -> float:
    """Lagrangian of the complete {1,2,3}-graph on t vertices."""
    if t < 1:
        raise ValueError("clique order must be at least 1")
    return (
        1.0
        + alpha2 * (t - 1) / (2.0 * t)
        + alpha3 * (t - 1) * (t - 2) / (6.0 * t * t)
    )


def th123_threshold(alpha2: float, alpha3: float) -> int:
    s = alpha2 + alpha3
    if s <= 0:
        return 1
    return max(1, math.ceil((s * s - alpha3) / s - 1e-9))


def th123_hypothesis(alpha2: float, alpha3: float, t: int) -> bool:
    return t >= th123_threshold(alpha2, alpha3)


def complete_uniform_value(types, alpha, t: int) -> float:
    """Objective of the complete graph of the given type set on t
    vertices at the uniform weighting: sum of coeff_r * C(t,r) / t^r."""
    ts = validate_types(types)
    if t < 1:
        raise ValueError("t must be at least 1")
    coeffs = resolve_coeffs(ts, alpha)
    return sum(coeffs[r] * math.comb(t, r) / t**r for r in ts)


# ---------------------------------------------------------------------------
# Structural reductions


def level1_reduction_hypothesis(H: Hypergraph, alpha) -> bool:
    """Regime in which discarding isolated singleton structure preserves
    the Lagrangian: non-base coefficient sum (scaled by 1/(r-1)!) at
    most 1."""
    if 1 not in H.edge_types:
        return False
    return reduction_sum(H.edge_types, alpha) <= 1.0 + _HYP_SLACK


def reduce_level1(H: Hypergraph, alpha=None) -> Hypergraph | float:
    """Restrict to singleton-carrying vertices and drop those isolated
    there.  Returns the literal 1.0 when nothing remains, since a single
    surviving singleton vertex already achieves value 1."""
    if 1 not in H.edge_types:
        raise ValueError("reduction needs singleton edges")
    v1 = {e[0] for e in H.level(1)}
    # vertices of v1 isolated inside the sub-hypergraph induced on v1
    covered = {
        v
        for r in H.edge_types
        if r >= 2
        for e in H.level(r)
        if v1.issuperset(e)
        for v in e
    }
    keep = sorted(v1 & covered)
    if not keep:
        return 1.0
    sub, _ = induced(H, keep)
    return sub


def colex_range_equal(types, t: int, m: int) -> bool:
    """Range validator for the window in which the colex segment with m
    edges has the same Lagrangian as the complete graph on t vertices."""
    ts = validate_types(types)
    if 1 in ts:
        raise ValueError("the colex window rule applies to types without level 1")
    if t < ts[0]:
        raise ValueError(f"t must be at least {ts[0]}")
    lo = sum(math.comb(t, r) for r in ts)
    hi = lo + sum(math.comb(t - 1, r - 1) for r in ts)
    if not lo <= m <= hi:
        raise ValueError(f"m={m} outside [{lo}, {hi}] for types {ts}, t={t}")
    return True


def connection_window(types, t: int) -> tuple[int, int]:
    """Admissible edge-count window (lo, hi], for composing off a full
    singleton level at clique order t."""
    ts = validate_types(types)
    q = [r for r in ts if r != 1]
    lo = t + sum(math.comb(t, r) for r in q)
    hi = t + 1 + sum(math.comb(t + 1, r) for r in q)
    return lo, hi


def infer_connection_order(types, m: int) -> int:
    """The unique t whose window contains m; errors when none exists."""
    for t in range(1, m + 1):
        lo, hi = connection_window(types, t)
        if lo < m <= hi:
            return t
    raise ValueError(f"no clique order admits m={m} for types {validate_types(types)}")


def connection_compose(types, alpha, m: int, t: int, cfg: SolverConfig | None = None, *, check: bool = True) -> float:
    """Value of the colex segment with m edges, computed as 1 plus the
    Lagrangian of the colex segment with m-t-1 edges of the singleton-free
    type set, keeping each cardinality's coefficient (the sub-objective is
    deliberately not renormalized)."""
    ts = validate_types(types)
    if 1 not in ts or len(ts) < 2:
        raise ValueError("composition needs a type set containing 1 and more")
    if t < 1:
        raise ValueError("t must be at least 1")
    if check:
        rsum = reduction_sum(ts, alpha)
        if rsum > 1.0 + _HYP_SLACK:
            raise ValueError(
                f"coefficient condition violated: sum of alpha_r/(r-1)! = {rsum} > 1"
            )
        lo, hi = connection_window(ts, t)
        if not lo < m <= hi:
            raise ValueError(f"m={m} outside ({lo}, {hi}] for types {ts}, t={t}")
    q = tuple(r for r in ts if r != 1)
    q_m = m - t - 1
    if q_m <= 0:
        return 1.0
    G = colex_first_m(q, q_m)
    return 1.0 + optimize(G, alpha, cfg).value


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True, eq=False)
class TheoremVerdict:
    theorem_id: str
    hypothesis_ok: bool
    predicted: float
    computed: float
    abs_error: float
    witness: Optimum | None

    def passed(self, tol: float = 1e-7) -> bool:
        return (
            self.hypothesis_ok
            and math.isfinite(self.abs_error)
            and self.abs_error <= tol
        )

    def to_json_dict(self) -> dict:
        def _num(v: float):
            return None if not math.isfinite(v) else v

        return {
            "theorem_id": self.theorem_id,
            "hypothesis_ok": self.hypothesis_ok,
            "predicted": _num(self.predicted),
            "computed": _num(self.computed),
            "abs_error": _num(self.abs_error),
            "witness": None if self.witness is None else self.witness.to_json_dict(),
        }


def _complete_up_to(types, t: int) -> Hypergraph:
    """Complete graph on [t] keeping only cardinalities that fit."""
    ts = validate_types(types)
    fitting = [r for r in ts if r <= t]
    if not fitting:
        return Hypergraph(t, [])
    return complete(fitting, t) if t >= max(fitting) else Hypergraph(t, [])


def _best_optimum(H: Hypergraph, alpha, cfg: SolverConfig | None, cross_check: bool) -> Optimum:
    opt = optimize(H, alpha, cfg)
    if cross_check and 1 <= H.n <= 8:
        second = exact_oracle(H, alpha, cfg)
        if second.value > opt.value:
            opt = second
    return opt


def _verdict(theorem_id: str, hyp: bool, predicted: float, opt: Optimum) -> TheoremVerdict:
    err = abs(predicted - opt.value) if math.isfinite(predicted) else math.nan
    return TheoremVerdict(theorem_id, hyp, predicted, opt.value, err, opt)


def _alpha_coeff(alpha, r: int, theorem_id: str) -> float:
    a = as_alpha(alpha)
    if r not in a:
        raise ValueError(f"{theorem_id} needs a coefficient for level {r}")
    return a[r]


def _clique_order_with_singletons(H: Hypergraph, top: int) -> int:
    """Order of the largest clique realizing every level in {1, top},
    falling back to a single singleton vertex when the top level cannot
    be realized."""
    if top in H.edge_types and 1 in H.edge_types:
        order = max_clique_order(H, (1, top))
        if order >= top:
            return order
    if 1 in H.edge_types:
        return min(len({e[0] for e in H.level(1)}), top - 1)
    raise ValueError("hypergraph carries no singleton edges")


def verify_theorem(
    theorem_id: str,
    *,
    hypergraph: Hypergraph | None = None,
    alpha=None,
    t: int | None = None,
    r: int | None = None,
    m: int | None = None,
    types=None,
    cfg: SolverConfig | None = None,
    cross_check: bool = True,
) -> TheoremVerdict:
    """Compare a closed-form or composed prediction with the solver.

    Hypothesis gates are soft: a violated regime is reported through
    hypothesis_ok rather than by refusing to compute.  When no hypergraph
    is supplied, the canonical instance for the chosen check is built
    from t (and r / types / m as applicable).
    """
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem_id!r}, expected one of {THEOREM_IDS}")

    if theorem_id == "ms":
        if hypergraph is None:
            if t is None:
                raise ValueError("ms needs t or a hypergraph")
            H = _complete_up_to((2,), t)
            t_eff = t
        else:
            H = hypergraph
            if any(rr != 2 for rr in H.edge_types):
                raise ValueError("ms applies to 2-uniform hypergraphs")
            t_eff = max_clique_order(H, (2,)) if 2 in H.edge_types else 1
            t_eff = max(t_eff, 1)
        opt = _best_optimum(H, None, cfg, cross_check)
        return _verdict("ms", True, ms_value(t_eff), opt)

    if theorem_id == "th2":
        a2 = _alpha_coeff(alpha, 2, "th2")
        H = hypergraph if hypergraph is not None else _default_mixed((1, 2), t, "th2")
        t_eff = _clique_order_with_singletons(H, 2)
        t_eff = max(t_eff, 1)
        opt = _best_optimum(H, alpha, cfg, cross_check)
        return _verdict("th2", th2_hypothesis(a2, t_eff), th2_value(a2, t_eff), opt)

    if theorem_id == "th1r":
        if r is None:
            raise ValueError("th1r needs r")
        ar = _alpha_coeff(alpha, r, "th1r")
        H = hypergraph if hypergraph is not None else _default_mixed((1, r), t, "th1r")
        t_eff = _clique_order_with_singletons(H, r)
        t_eff = max(t_eff, 1)
        # the proof wants the singleton level to support a clique at least
        # as large as the mixed one
        singles = len({e[0] for e in H.level(1)})
        hyp = th1r_hypothesis(ar, r, t_eff) and singles >= t_eff
        opt = _best_optimum(H, alpha, cfg, cross_check)
        return _verdict("th1r", hyp, th1r_value(ar, r, t_eff), opt)

    if theorem_id == "th123":
        a2 = _alpha_coeff(alpha, 2, "th123")
        a3 = _alpha_coeff(alpha, 3, "th123")
        H = hypergraph if hypergraph is not None else _default_mixed((1, 2, 3), t, "th123")
        t_eff = 1
        if 3 in H.edge_types:
            order = max_clique_order(H, (1, 2, 3))
            t_eff = order if order >= 3 else t_eff
        if t_eff == 1:
            t_eff = _clique_order_with_singletons(H, 2)
        singles = len({e[0] for e in H.level(1)})
        hyp = th123_hypothesis(a2, a3, t_eff) and singles >= t_eff
        opt = _best_optimum(H, alpha, cfg, cross_check)
        return _verdict("th123", hyp, th123_value(a2, a3, t_eff), opt)

    if theorem_id == "t12":
        if hypergraph is None:
            raise ValueError("t12 needs a hypergraph")
        H = hypergraph
        hyp = level1_reduction_hypothesis(H, alpha)
        reduced = reduce_level1(H, alpha)
        if isinstance(reduced, Hypergraph):
            predicted = _best_optimum(reduced, alpha, cfg, cross_check).value
        else:
            predicted = float(reduced)
        opt = _best_optimum(H, alpha, cfg, cross_check)
        return _verdict("t12", hyp, predicted, opt)

    if theorem_id == "lemma34":
        if types is None or t is None or m is None:
            raise ValueError("lemma34 needs types, t and m")
        try:
            in_range = colex_range_equal(types, t, m)
        except ValueError:
            in_range = False
        predicted = complete_uniform_value(types, alpha, t)
        opt = _best_optimum(colex_first_m(types, m), alpha, cfg, cross_check)
        return _verdict("lemma34", in_range, predicted, opt)

    # theorem_id == "connection"
    if types is None or m is None:
        raise ValueError("connection needs types and m")
    ts = validate_types(types)
    if t is None:
        t_eff = infer_connection_order(ts, m)
    else:
        t_eff = t
    lo, hi = connection_window(ts, t_eff)
    hyp = (
        reduction_sum(ts, alpha) <= 1.0 + _HYP_SLACK
        and lo < m <= hi
    )
    if m - t_eff - 1 >= 0:
        predicted = connection_compose(ts, alpha, m, t_eff, cfg, check=False)
    else:
        predicted = math.nan
    opt = _best_optimum(colex_first_m(ts, m), alpha, cfg, cross_check)
    return _verdict("connection", hyp, predicted, opt)


def _default_mixed(types, t: int | None, theorem_id: str) -> Hypergraph:
    if t is None:
        raise ValueError(f"{theorem_id} needs t or a hypergraph")
    if t < 1:
        raise ValueError("t must be at least 1")
    return _complete_up_to(types, t)
