"""Exact enumeration over the redundancy lattice.

Designs are indexed in mixed radix: subsystem 1 is the most significant
digit, so ascending linear index is ascending lexicographic design order.
The sweep walks the index range in chunks, gathers per-subsystem term
tables (the same cached tables the scalar evaluator reads, folded in the
same order, so results agree bit for bit), and reduces each chunk to the
running best or to collected feasible points.

Tie handling is exact: designs whose scores compare equal as floats are
counted, and the lexicographically smallest one is reported.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, NumericalError, ValidationError
from .model import DesignVector, Evaluation, ProblemInstance, evaluate, _subsystem_tables

__all__ = [
    "CHUNK_SIZE",
    "DESIGN_BUDGET",
    "WORKERS_ENV_VAR",
    "CompromiseSolution",
    "ParetoPoint",
    "ParetoFront",
    "enumerate_feasible",
    "optimize_single",
    "optimize_scalarized",
    "sweep_extremes",
    "pareto_front",
]

CHUNK_SIZE = 1 << 20
DESIGN_BUDGET = 10**8
WORKERS_ENV_VAR = "MORRAP_WORKERS"


@dataclass(frozen=True)
class CompromiseSolution:
    """One optimized design with its fresh evaluation and tie diagnostics.

    score is the scalarized objective value actually optimized; ties is the
    number of designs attaining a float-equal score (1 means unique);
    convergence is filled by the scalarization layer when a payoff table is
    available, else None.
    """

    design: DesignVector
    evaluation: Evaluation
    method: str
    score: float
    convergence: float | None
    ties: int


@dataclass(frozen=True)
class ParetoPoint:
    design: DesignVector
    evaluation: Evaluation


@dataclass(frozen=True)
class ParetoFront:
    """Nondominated designs sorted by ascending cost."""

    points: tuple

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV_VAR)
        if env is not None:
            try:
                workers = int(env)
            except ValueError as exc:
                raise ValidationError(f"{WORKERS_ENV_VAR} must be an integer, got {env!r}") from exc
        else:
            workers = 1
    if workers < 1:
        raise ValidationError(f"worker count must be at least 1, got {workers}")
    return workers


def _check_budget(inst: ProblemInstance) -> int:
    size = inst.design_space_size
    if size > DESIGN_BUDGET:
        raise ValidationError(
            f"design space holds {size} candidates, beyond the exact-enumeration "
            f"budget of {DESIGN_BUDGET}; lower the n_max caps"
        )
    return size


def _radices_strides(inst: ProblemInstance):
    radices = [p.n_max for p in inst.subsystems]
    strides = [0] * len(radices)
    s = 1
    for i in range(len(radices) - 1, -1, -1):
        strides[i] = s
        s *= radices[i]
    return radices, strides


def _decode(inst: ProblemInstance, index: int) -> DesignVector:
    radices, strides = _radices_strides(inst)
    return DesignVector(tuple((index // s) % r + 1 for r, s in zip(radices, strides)))


def _chunk_arrays(inst: ProblemInstance, start: int, stop: int):
    """Objective/constraint arrays for the index range [start, stop)."""
    radices, strides = _radices_strides(inst)
    rel_t, cost_t, vol_t, wt_t = _subsystem_tables(inst)
    idx = np.arange(start, stop, dtype=np.int64)
    reliability = np.ones(stop - start)
    cost = np.zeros(stop - start)
    volume = np.zeros(stop - start)
    weight = np.zeros(stop - start)
    for i in range(len(radices)):
        digit = (idx // strides[i]) % radices[i]
        reliability = reliability * rel_t[i][digit]
        cost = cost + cost_t[i][digit]
        volume = volume + vol_t[i][digit]
        weight = weight + wt_t[i][digit]
    feasible = (volume <= inst.volume_limit) & (weight <= inst.weight_limit)
    return idx, reliability, cost, volume, weight, feasible


def _iter_chunks(inst: ProblemInstance, workers: int | None = None, chunk: int = CHUNK_SIZE):
    """Yield per-chunk arrays in ascending index order.

    With several workers, chunks are computed in parallel but always
    yielded in order, so every consumer sees a deterministic stream.
    """
    size = _check_budget(inst)
    workers = _resolve_workers(workers)
    ranges = [(a, min(a + chunk, size)) for a in range(0, size, chunk)]
    if workers == 1:
        for a, b in ranges:
            yield _chunk_arrays(inst, a, b)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i in range(0, len(ranges), workers):
            futures = [pool.submit(_chunk_arrays, inst, a, b) for a, b in ranges[i : i + workers]]
            for f in futures:
                yield f.result()


class _ArgBest:
    """Running argbest with exact tie counting.

    Scores are compared as floats; equal scores accumulate the tie count
    and keep the smallest design index, so the winner is the
    lexicographically smallest tied design.
    """

    __slots__ = ("sign", "value", "count", "first")

    def __init__(self, sense: str):
        self.sign = 1.0 if sense == "max" else -1.0
        self.value = None
        self.count = 0
        self.first = None

    def update(self, idx, values, mask) -> None:
        work = np.where(mask, self.sign * values, -np.inf)
        m = work.max(initial=-np.inf)
        if m == -np.inf:
            return
        cnt = int((work == m).sum())
        first = int(idx[int(np.argmax(work))])
        if self.value is None or m > self.value:
            self.value, self.count, self.first = float(m), cnt, first
        elif m == self.value:
            self.count += cnt
            if first < self.first:
                self.first = first

    @property
    def best(self) -> float | None:
        return None if self.value is None else self.value * self.sign


def _solution_from(inst: ProblemInstance, tracker: _ArgBest, method: str) -> CompromiseSolution:
    if tracker.value is None:
        raise InfeasibleError(
            f"no design satisfies volume <= {inst.volume_limit} and weight <= {inst.weight_limit}"
        )
    design = _decode(inst, tracker.first)
    return CompromiseSolution(
        design=design,
        evaluation=evaluate(inst, design),
        method=method,
        score=tracker.best,
        convergence=None,
        ties=tracker.count,
    )


def enumerate_feasible(inst: ProblemInstance, workers: int | None = None):
    """Generate (design, evaluation) for every feasible design, lexicographically."""
    for idx, rel, cost, vol, wt, feas in _iter_chunks(inst, workers):
        for j in np.flatnonzero(feas):
            yield (
                _decode(inst, int(idx[j])),
                Evaluation(
                    reliability=float(rel[j]),
                    cost=float(cost[j]),
                    volume=float(vol[j]),
                    weight=float(wt[j]),
                    feasible=True,
                    violations=(),
                ),
            )


def optimize_single(inst: ProblemInstance, objective: str, workers: int | None = None) -> CompromiseSolution:
    """Best feasible design for one objective: maximal reliability or minimal cost."""
    senses = {"reliability": "max", "cost": "min"}
    if objective not in senses:
        raise ValidationError(f"objective must be one of {sorted(senses)}, got {objective!r}")
    tracker = _ArgBest(senses[objective])
    for idx, rel, cost, _vol, _wt, feas in _iter_chunks(inst, workers):
        tracker.update(idx, rel if objective == "reliability" else cost, feas)
    return _solution_from(inst, tracker, method=f"{objective}-{senses[objective]}")


def sweep_extremes(inst: ProblemInstance, workers: int | None = None):
    """One pass collecting the three anchor optima used by payoff tables.

    Returns a dict with keys "reliability_max", "cost_min" and "cost_max",
    each a CompromiseSolution.
    """
    rel_best = _ArgBest("max")
    cost_best = _ArgBest("min")
    cost_worst = _ArgBest("max")
    for idx, rel, cost, _vol, _wt, feas in _iter_chunks(inst, workers):
        rel_best.update(idx, rel, feas)
        cost_best.update(idx, cost, feas)
        cost_worst.update(idx, cost, feas)
    return {
        "reliability_max": _solution_from(inst, rel_best, "reliability-max"),
        "cost_min": _solution_from(inst, cost_best, "cost-min"),
        "cost_max": _solution_from(inst, cost_worst, "cost-max"),
    }


def optimize_scalarized(inst: ProblemInstance, spec, workers: int | None = None) -> CompromiseSolution:
    """Best feasible design under a scalarization.

    spec must provide method_name, sense ("max" or "min") and
    score_arrays(reliability, cost) -> ndarray; it may provide
    mask_arrays(reliability, cost) -> bool ndarray to restrict the feasible
    set further (used by classification-based methods).
    """
    if spec.sense not in ("max", "min"):
        raise ValidationError(f"scalarization sense must be 'max' or 'min', got {spec.sense!r}")
    tracker = _ArgBest(spec.sense)
    extra_mask = getattr(spec, "mask_arrays", None)
    for idx, rel, cost, _vol, _wt, feas in _iter_chunks(inst, workers):
        scores = np.asarray(spec.score_arrays(rel, cost), dtype=np.float64)
        mask = feas if extra_mask is None else feas & extra_mask(rel, cost)
        if np.isnan(scores[mask]).any():
            raise NumericalError(f"scalarization {spec.method_name!r} produced NaN scores")
        tracker.update(idx, scores, mask)
    return _solution_from(inst, tracker, method=spec.method_name)


def pareto_front(inst: ProblemInstance, workers: int | None = None) -> ParetoFront:
    """All nondominated feasible designs, sorted by ascending cost.

    Distinct designs sharing one nondominated (reliability, cost) pair are
    all kept; a design is dropped only if some other design is at least as
    good in both objectives and strictly better in one.
    """
    idx_parts, rel_parts, cost_parts = [], [], []
    for idx, rel, cost, _vol, _wt, feas in _iter_chunks(inst, workers):
        if feas.any():
            idx_parts.append(idx[feas])
            rel_parts.append(rel[feas])
            cost_parts.append(cost[feas])
    if not idx_parts:
        raise InfeasibleError(
            f"no design satisfies volume <= {inst.volume_limit} and weight <= {inst.weight_limit}"
        )
    idx = np.concatenate(idx_parts)
    rel = np.concatenate(rel_parts)
    cost = np.concatenate(cost_parts)

    # cost ascending, then reliability descending, then index ascending
    order = np.lexsort((idx, -rel, cost))
    rs, cs, ks = rel[order], cost[order], idx[order]
    running = np.maximum.accumulate(rs)
    prev = np.concatenate(([-np.inf], running[:-1]))
    strictly_better = rs > prev
    pos = np.arange(len(rs))
    holder = np.maximum.accumulate(np.where(strictly_better, pos, -1))
    duplicate = ~strictly_better & (rs == rs[holder]) & (cs == cs[holder])
    keep = strictly_better | duplicate

    points = []
    for j in pos[keep]:
        design = _decode(inst, int(ks[j]))
        points.append(ParetoPoint(design=design, evaluation=evaluate(inst, design)))
    return ParetoFront(points=tuple(points))
