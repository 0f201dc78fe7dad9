"""Series-parallel redundancy allocation model.

A system is a series of subsystems; subsystem i holds n_i identical
components in parallel, each with reliability r_i.  The model evaluates

* system reliability: product over subsystems of 1 - (1 - r_i)^n_i,
* system cost: sum of unit_cost_i * (n_i + exp(n_i / 4)),
* system volume: sum of v_i * n_i^2,
* system weight: sum of w_i * n_i * exp(n_i / 4),

where the unit cost follows a mission-time/Weibull form
alpha * (-T / ln r)^beta.  Volume and weight are capacity constraints.

Per-subsystem term tables are cached per problem instance; the scalar
evaluator and the solver's vectorized sweep read the same tables and fold
them in the same subsystem order, so a design evaluates to bit-identical
numbers along both paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ValidationError

__all__ = [
    "SubsystemParams",
    "ProblemInstance",
    "DesignVector",
    "Evaluation",
    "component_cost",
    "evaluate",
    "check_feasible",
]


@dataclass(frozen=True)
class SubsystemParams:
    """Static data of one subsystem stage.

    alpha, beta parameterize the unit cost; v and w are the per-component
    volume and weight coefficients; n_max caps the redundancy level the
    solver will consider; [r_min, r_max] is the admissible reliability
    range for components of this stage.
    """

    alpha: float
    beta: float
    v: float
    w: float
    n_max: int = 6
    r_min: float = 1e-9
    r_max: float = 1.0 - 1e-9

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "v", "w", "r_min", "r_max"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "n_max", int(self.n_max))
        if self.alpha <= 0 or self.beta <= 0:
            raise ValidationError(f"cost parameters must be positive, got alpha={self.alpha}, beta={self.beta}")
        if self.v <= 0 or self.w <= 0:
            raise ValidationError(f"volume and weight coefficients must be positive, got v={self.v}, w={self.w}")
        if self.n_max < 1:
            raise ValidationError(f"n_max must be at least 1, got {self.n_max}")
        if not (0.0 < self.r_min < self.r_max < 1.0):
            raise ValidationError(
                f"reliability range must satisfy 0 < r_min < r_max < 1, got [{self.r_min}, {self.r_max}]"
            )


@dataclass(frozen=True)
class ProblemInstance:
    """A full allocation problem: subsystems, their reliabilities, limits."""

    subsystems: tuple
    reliabilities: tuple
    volume_limit: float
    weight_limit: float
    mission_time: float = 1000.0
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "subsystems", tuple(self.subsystems))
        object.__setattr__(self, "reliabilities", tuple(float(r) for r in self.reliabilities))
        object.__setattr__(self, "volume_limit", float(self.volume_limit))
        object.__setattr__(self, "weight_limit", float(self.weight_limit))
        object.__setattr__(self, "mission_time", float(self.mission_time))
        if not self.subsystems:
            raise ValidationError("a problem instance needs at least one subsystem")
        for p in self.subsystems:
            if not isinstance(p, SubsystemParams):
                raise ValidationError(f"subsystems must be SubsystemParams, got {type(p).__name__}")
        if len(self.reliabilities) != len(self.subsystems):
            raise ValidationError(
                f"{len(self.reliabilities)} reliabilities for {len(self.subsystems)} subsystems"
            )
        for i, (p, r) in enumerate(zip(self.subsystems, self.reliabilities), start=1):
            if not (p.r_min <= r <= p.r_max):
                raise ValidationError(
                    f"reliability {r} of subsystem {i} outside its admissible range [{p.r_min}, {p.r_max}]"
                )
        if self.volume_limit <= 0 or self.weight_limit <= 0:
            raise ValidationError("volume and weight limits must be positive")
        if self.mission_time <= 0:
            raise ValidationError(f"mission time must be positive, got {self.mission_time}")

    @property
    def n_subsystems(self) -> int:
        return len(self.subsystems)

    @property
    def design_space_size(self) -> int:
        """Number of candidate designs, the product of the n_max caps."""
        size = 1
        for p in self.subsystems:
            size *= p.n_max
        return size


@dataclass(frozen=True)
class DesignVector:
    """Redundancy levels, one positive integer per subsystem."""

    counts: tuple

    def __post_init__(self) -> None:
        try:
            counts = tuple(int(c) for c in self.counts)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"design entries must be integers, got {self.counts!r}") from exc
        if any(float(orig) != c for orig, c in zip(self.counts, counts)):
            raise ValidationError(f"design entries must be whole numbers, got {self.counts!r}")
        if any(c < 1 for c in counts):
            raise ValidationError(f"every subsystem needs at least one component, got {counts}")
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    @classmethod
    def coerce(cls, design) -> "DesignVector":
        if isinstance(design, cls):
            return design
        return cls(counts=tuple(design))


@dataclass(frozen=True)
class Evaluation:
    """Objective and constraint values of one design."""

    reliability: float
    cost: float
    volume: float
    weight: float
    feasible: bool
    violations: tuple


def component_cost(alpha: float, beta: float, r: float, mission_time: float) -> float:
    """Unit component cost alpha * (-T / ln r)^beta for reliability r over mission time T."""
    if not (0.0 < r < 1.0):
        raise ValidationError(f"component reliability must lie strictly between 0 and 1, got {r}")
    return alpha * (-mission_time / math.log(r)) ** beta


@lru_cache(maxsize=16)
def _subsystem_tables(inst: ProblemInstance):
    """Per-subsystem term tables indexed by redundancy level minus one.

    Shared by the scalar evaluator and the vectorized sweep so that both
    produce bit-identical results for any in-cap design.
    """
    rel, cost, vol, wt = [], [], [], []
    for p, r in zip(inst.subsystems, inst.reliabilities):
        n = np.arange(1, p.n_max + 1, dtype=np.float64)
        boost = np.exp(n / 4.0)
        rel.append(1.0 - (1.0 - r) ** n)
        rel[-1].setflags(write=False)
        unit = component_cost(p.alpha, p.beta, r, inst.mission_time)
        cost.append(unit * (n + boost))
        vol.append(p.v * n * n)
        wt.append(p.w * n * boost)
        for arr in (cost[-1], vol[-1], wt[-1]):
            arr.setflags(write=False)
    return tuple(rel), tuple(cost), tuple(vol), tuple(wt)


def _direct_terms(p: SubsystemParams, r: float, n: int, mission_time: float):
    # fallback for redundancy levels beyond the cached table caps
    boost = math.exp(n / 4.0)
    return (
        1.0 - (1.0 - r) ** n,
        component_cost(p.alpha, p.beta, r, mission_time) * (n + boost),
        p.v * n * n,
        p.w * n * boost,
    )


def _violations(inst: ProblemInstance, volume: float, weight: float) -> tuple:
    out = []
    if volume > inst.volume_limit:
        out.append(
            f"volume {volume:.4f} exceeds the limit {inst.volume_limit:.4f} "
            f"by {volume - inst.volume_limit:.4f}"
        )
    if weight > inst.weight_limit:
        out.append(
            f"weight {weight:.4f} exceeds the limit {inst.weight_limit:.4f} "
            f"by {weight - inst.weight_limit:.4f}"
        )
    return tuple(out)


def evaluate(inst: ProblemInstance, design) -> Evaluation:
    """Evaluate one design: objectives, constraint values, feasibility."""
    dv = DesignVector.coerce(design)
    if len(dv) != inst.n_subsystems:
        raise ValidationError(f"design has {len(dv)} entries for {inst.n_subsystems} subsystems")
    reliability = 1.0
    cost = 0.0
    volume = 0.0
    weight = 0.0
    if all(c <= p.n_max for c, p in zip(dv, inst.subsystems)):
        rel_t, cost_t, vol_t, wt_t = _subsystem_tables(inst)
        for i, n in enumerate(dv):
            k = n - 1
            reliability = reliability * rel_t[i][k]
            cost = cost + cost_t[i][k]
            volume = volume + vol_t[i][k]
            weight = weight + wt_t[i][k]
    else:
        for p, r, n in zip(inst.subsystems, inst.reliabilities, dv):
            tr, tc, tv, tw = _direct_terms(p, r, n, inst.mission_time)
            reliability = reliability * tr
            cost = cost + tc
            volume = volume + tv
            weight = weight + tw
    violations = _violations(inst, float(volume), float(weight))
    return Evaluation(
        reliability=float(reliability),
        cost=float(cost),
        volume=float(volume),
        weight=float(weight),
        feasible=not violations,
        violations=violations,
    )


def check_feasible(inst: ProblemInstance, design) -> tuple:
    """Constraint violations of a design; empty means feasible."""
    return evaluate(inst, design).violations
