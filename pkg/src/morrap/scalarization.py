"""Multi-objective scalarizations over (reliability, cost).

All methods work on a payoff table of anchor values gathered from the two
single-objective optima plus the worst feasible cost:

* reliability_max and cost_max come from the reliability-optimal design
  (cost_max is the price of chasing reliability alone),
* reliability_min and cost_min come from the cost-optimal design,
* cost_worst is the largest cost any feasible design reaches.

Normalization conventions differ by method and are part of each method's
definition here: the global criterion and the weighted sum normalize cost
against [cost_min, cost_worst], while desirability, the fuzzy max-min and
the classification method normalize cost against [cost_min, cost_max].
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .model import ProblemInstance
from .solver import CompromiseSolution, optimize_scalarized, sweep_extremes

__all__ = [
    "METHODS",
    "PayoffTable",
    "DesirabilitySpec",
    "NimbusSpec",
    "build_payoff",
    "global_criterion_score",
    "weighted_sum_score",
    "desirability_score",
    "fuzzy_maxmin",
    "nimbus_score",
    "convergence_metric",
    "make_scalarization",
    "solve_scalarized",
]

METHODS = ("global", "weighted", "desirability", "fuzzy", "nimbus")

GLOBAL_VARIANTS = ("range", "ideal")
CONVERGENCE_VARIANTS = ("range", "ideal")
NIMBUS_CLASSES = ("improve", "improve-to-aspiration", "satisfactory", "worsen-to-bound", "free")


@dataclass(frozen=True)
class PayoffTable:
    """Anchor values of the two objectives over the feasible set."""

    reliability_max: float
    reliability_min: float
    cost_min: float
    cost_max: float
    cost_worst: float
    reliability_opt: CompromiseSolution
    cost_opt: CompromiseSolution
    cost_worst_opt: CompromiseSolution

    def __post_init__(self) -> None:
        if not (self.reliability_min <= self.reliability_max):
            raise ValidationError("payoff reliability anchors out of order")
        if not (self.cost_min <= self.cost_max <= self.cost_worst):
            raise ValidationError("payoff cost anchors out of order")


def build_payoff(inst: ProblemInstance, workers: int | None = None) -> PayoffTable:
    """Payoff table from one enumeration pass over the feasible set."""
    ext = sweep_extremes(inst, workers)
    rel_opt = ext["reliability_max"]
    cost_opt = ext["cost_min"]
    worst = ext["cost_max"]
    return PayoffTable(
        reliability_max=rel_opt.evaluation.reliability,
        reliability_min=cost_opt.evaluation.reliability,
        cost_min=cost_opt.evaluation.cost,
        cost_max=rel_opt.evaluation.cost,
        cost_worst=worst.evaluation.cost,
        reliability_opt=rel_opt,
        cost_opt=cost_opt,
        cost_worst_opt=worst,
    )


def _span(hi: float, lo: float, what: str) -> float:
    span = hi - lo
    if span <= 0.0:
        raise NumericalError(f"degenerate payoff table: {what} spans zero ({lo} to {hi})")
    return span


# --- method scores ---------------------------------------------------------

def global_criterion_score(reliability, cost, payoff: PayoffTable, p: float = 2.0, variant: str = "range"):
    """Distance-to-ideal compromise score; smaller is better.

    variant "range" normalizes each deviation by the objective's feasible
    range; variant "ideal" normalizes by the ideal value itself.
    """
    if variant not in GLOBAL_VARIANTS:
        raise ValidationError(f"global criterion variant must be one of {GLOBAL_VARIANTS}, got {variant!r}")
    if not p >= 1.0:
        raise ValidationError(f"global criterion exponent must be at least 1, got {p}")
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    if variant == "range":
        r_term = (payoff.reliability_max - reliability) / _span(
            payoff.reliability_max, payoff.reliability_min, "reliability"
        )
        c_term = (cost - payoff.cost_min) / _span(payoff.cost_worst, payoff.cost_min, "cost")
    else:
        r_term = (payoff.reliability_max - reliability) / payoff.reliability_max
        c_term = (cost - payoff.cost_min) / payoff.cost_min
    out = r_term**p + c_term**p
    return float(out) if out.ndim == 0 else out


def weighted_sum_score(reliability, cost, payoff: PayoffTable, weights=(0.5, 0.5)):
    """Weighted sum of range-normalized objectives; larger is better.

    Weights must be two nonnegative numbers, not both zero; they are
    normalized to sum to one.
    """
    w1, w2 = _normalize_weights(weights)
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    r_term = (reliability - payoff.reliability_min) / _span(
        payoff.reliability_max, payoff.reliability_min, "reliability"
    )
    c_term = (payoff.cost_worst - cost) / _span(payoff.cost_worst, payoff.cost_min, "cost")
    out = w1 * r_term + w2 * c_term
    return float(out) if out.ndim == 0 else out


def _normalize_weights(weights) -> tuple:
    try:
        w1, w2 = (float(w) for w in weights)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"weights must be two numbers, got {weights!r}") from exc
    if w1 < 0 or w2 < 0:
        raise ValidationError(f"weights must be nonnegative, got {weights!r}")
    total = w1 + w2
    if total == 0:
        raise ValidationError("weights must not both be zero")
    return w1 / total, w2 / total


def _memberships(reliability, cost, payoff: PayoffTable):
    """Satisfaction grades in [0, 1]: reliability against its feasible range,
    cost against [cost_min, cost_max].  Clipped before any exponentiation."""
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    mu_r = (reliability - payoff.reliability_min) / _span(
        payoff.reliability_max, payoff.reliability_min, "reliability"
    )
    mu_c = (payoff.cost_max - cost) / _span(payoff.cost_max, payoff.cost_min, "cost")
    return np.clip(mu_r, 0.0, 1.0), np.clip(mu_c, 0.0, 1.0)


@dataclass(frozen=True)
class DesirabilitySpec:
    """Shape parameters of the desirability method.

    exponents (one per objective) bend the individual desirability curves;
    weights are small positive integers expressing relative importance in
    the geometric composition.
    """

    exponents: tuple = (1.0, 1.0)
    weights: tuple = (1, 1)

    def __post_init__(self) -> None:
        exps = tuple(float(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) != 2 or any(not np.isfinite(e) or e <= 0 for e in exps):
            raise ValidationError(f"desirability exponents must be two positive numbers, got {self.exponents!r}")
        try:
            ws = tuple(int(w) for w in self.weights)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"desirability weights must be two integers, got {self.weights!r}") from exc
        if len(ws) != 2 or any(not 1 <= w <= 5 for w in ws):
            raise ValidationError(f"desirability weights must be integers from 1 to 5, got {self.weights!r}")
        object.__setattr__(self, "weights", ws)


def desirability_score(reliability, cost, payoff: PayoffTable, spec: DesirabilitySpec | None = None):
    """Weighted geometric mean of per-objective desirabilities; larger is better."""
    spec = spec or DesirabilitySpec()
    mu_r, mu_c = _memberships(reliability, cost, payoff)
    t1, t2 = spec.exponents
    w1, w2 = spec.weights
    d_rel = mu_r**t1
    d_cost = mu_c**t2
    out = (d_rel**w1 * d_cost**w2) ** (1.0 / (w1 + w2))
    return float(out) if out.ndim == 0 else out


def fuzzy_maxmin(reliability, cost, payoff: PayoffTable):
    """Smallest satisfaction grade across the objectives; larger is better."""
    mu_r, mu_c = _memberships(reliability, cost, payoff)
    out = np.minimum(mu_r, mu_c)
    return float(out) if out.ndim == 0 else out


# --- classification method --------------------------------------------------

@dataclass(frozen=True)
class NimbusSpec:
    """Interactive classification of the two objectives.

    Each objective is placed in one class: improve as far as possible,
    improve to an aspiration level, keep satisfactory, allow worsening to
    a bound, or leave free.  A classification must improve something and
    relax something, otherwise no move from the current point exists.
    Aspirations and bounds are given in original objective units.
    """

    reliability: str = "free"
    cost: str = "improve"
    reliability_aspiration: float | None = None
    cost_aspiration: float | None = None
    reliability_bound: float | None = None
    cost_bound: float | None = None
    rho: float = 1e-4

    def __post_init__(self) -> None:
        for name in ("reliability", "cost"):
            cls = getattr(self, name)
            if cls not in NIMBUS_CLASSES:
                raise ValidationError(f"{name} class must be one of {NIMBUS_CLASSES}, got {cls!r}")
            asp = getattr(self, f"{name}_aspiration")
            bound = getattr(self, f"{name}_bound")
            if cls == "improve-to-aspiration" and asp is None:
                raise ValidationError(f"{name} is classified improve-to-aspiration but has no aspiration level")
            if cls == "worsen-to-bound" and bound is None:
                raise ValidationError(f"{name} is classified worsen-to-bound but has no bound")
        improving = {c for c in (self.reliability, self.cost) if c in ("improve", "improve-to-aspiration")}
        relaxing = {c for c in (self.reliability, self.cost) if c in ("worsen-to-bound", "free")}
        if not improving or not relaxing:
            raise ValidationError(
                "classification must improve at least one objective and leave at "
                "least one free or allowed to worsen; nothing can move otherwise"
            )
        if self.rho <= 0:
            raise ValidationError(f"augmentation coefficient must be positive, got {self.rho}")


def nimbus_score(reliability, cost, payoff: PayoffTable, spec: NimbusSpec, current: CompromiseSolution):
    """Achievement score of the classification method; smaller is better.

    Both objectives are handled in minimization form: negated reliability
    with ideal -reliability_max and nadir -reliability_min, and cost with
    ideal cost_min and nadir cost_max.  The score is the largest scaled
    deviation among the improvement terms plus a small augmentation.
    """
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    r_span = _span(payoff.reliability_max, payoff.reliability_min, "reliability")
    c_span = _span(payoff.cost_max, payoff.cost_min, "cost")
    terms = []
    if spec.reliability == "improve":
        terms.append((payoff.reliability_max - reliability) / r_span)
    elif spec.reliability == "improve-to-aspiration":
        terms.append((spec.reliability_aspiration - reliability) / r_span)
    if spec.cost == "improve":
        terms.append((cost - payoff.cost_min) / c_span)
    elif spec.cost == "improve-to-aspiration":
        terms.append((cost - spec.cost_aspiration) / c_span)
    achieved = terms[0]
    for t in terms[1:]:
        achieved = np.maximum(achieved, t)
    augmentation = spec.rho * (-reliability / r_span + cost / c_span)
    out = achieved + augmentation
    return float(out) if out.ndim == 0 else out


def nimbus_mask(reliability, cost, spec: NimbusSpec, current: CompromiseSolution):
    """Admissible-region mask of the classification method.

    Objectives classified improve, improve-to-aspiration or satisfactory
    may not get worse than at the current point; worsen-to-bound enforces
    the stated bound; free objectives are unconstrained.
    """
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    mask = np.ones(np.broadcast(reliability, cost).shape, dtype=bool)
    hold = ("improve", "improve-to-aspiration", "satisfactory")
    if spec.reliability in hold:
        mask &= reliability >= current.evaluation.reliability
    elif spec.reliability == "worsen-to-bound":
        mask &= reliability >= spec.reliability_bound
    if spec.cost in hold:
        mask &= cost <= current.evaluation.cost
    elif spec.cost == "worsen-to-bound":
        mask &= cost <= spec.cost_bound
    return mask


# --- convergence -------------------------------------------------------------

def convergence_metric(reliability, cost, payoff: PayoffTable, variant: str = "range"):
    """Euclidean distance from the ideal point in normalized objective space.

    variant "range" scales reliability by its feasible range and cost by
    [cost_min, cost_max]; variant "ideal" scales each deviation by the
    ideal value itself.  Zero means the (unattainable) ideal point.
    """
    if variant not in CONVERGENCE_VARIANTS:
        raise ValidationError(f"convergence variant must be one of {CONVERGENCE_VARIANTS}, got {variant!r}")
    reliability = np.asarray(reliability, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    if variant == "range":
        dr = (payoff.reliability_max - reliability) / _span(
            payoff.reliability_max, payoff.reliability_min, "reliability"
        )
        dc = (cost - payoff.cost_min) / _span(payoff.cost_max, payoff.cost_min, "cost")
    else:
        dr = (payoff.reliability_max - reliability) / payoff.reliability_max
        dc = (cost - payoff.cost_min) / payoff.cost_min
    out = np.hypot(dr, dc)
    return float(out) if out.ndim == 0 else out


# --- solver glue --------------------------------------------------------------

class _Adapter:
    """Binds a score function to the interface optimize_scalarized expects."""

    def __init__(self, method_name, sense, score_fn, mask_fn=None):
        self.method_name = method_name
        self.sense = sense
        self._score_fn = score_fn
        self._mask_fn = mask_fn

    def score_arrays(self, reliability, cost):
        return self._score_fn(reliability, cost)

    @property
    def mask_arrays(self):
        return self._mask_fn


def make_scalarization(
    method: str,
    payoff: PayoffTable,
    *,
    p: float = 2.0,
    variant: str = "range",
    weights=(0.5, 0.5),
    desirability: DesirabilitySpec | None = None,
    nimbus: NimbusSpec | None = None,
    current: CompromiseSolution | None = None,
) -> _Adapter:
    """Adapter for one named method, with its parameters baked in."""
    if method == "global":
        # validate eagerly, not on the first chunk
        global_criterion_score(payoff.reliability_max, payoff.cost_min, payoff, p, variant)
        return _Adapter("global", "min", lambda r, c: global_criterion_score(r, c, payoff, p, variant))
    if method == "weighted":
        _normalize_weights(weights)
        return _Adapter("weighted", "max", lambda r, c: weighted_sum_score(r, c, payoff, weights))
    if method == "desirability":
        spec = desirability or DesirabilitySpec()
        return _Adapter("desirability", "max", lambda r, c: desirability_score(r, c, payoff, spec))
    if method == "fuzzy":
        return _Adapter("fuzzy", "max", lambda r, c: fuzzy_maxmin(r, c, payoff))
    if method == "nimbus":
        spec = nimbus or NimbusSpec()
        if current is None:
            raise ValidationError("the classification method needs a current solution to move from")
        return _Adapter(
            "nimbus",
            "min",
            lambda r, c: nimbus_score(r, c, payoff, spec, current),
            mask_fn=lambda r, c: nimbus_mask(r, c, spec, current),
        )
    raise ValidationError(f"unknown method {method!r}; choose from {METHODS}")


def solve_scalarized(
    inst: ProblemInstance,
    method: str,
    payoff: PayoffTable,
    *,
    workers: int | None = None,
    convergence_variant: str = "range",
    **params,
) -> CompromiseSolution:
    """Optimize one scalarization and attach its convergence value.

    For the classification method, a missing current solution defaults to
    the equal-weights weighted-sum compromise.
    """
    if method == "nimbus" and params.get("current") is None:
        ws = make_scalarization("weighted", payoff, weights=(0.5, 0.5))
        params["current"] = optimize_scalarized(inst, ws, workers)
    adapter = make_scalarization(method, payoff, **params)
    sol = optimize_scalarized(inst, adapter, workers)
    conv = convergence_metric(
        sol.evaluation.reliability, sol.evaluation.cost, payoff, convergence_variant
    )
    return dataclasses.replace(sol, convergence=float(conv))
