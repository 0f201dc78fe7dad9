"""Random construction of fuzzy reliabilities around crisp seeds.

Each crisp reliability r is widened into a triangle, or a nested pair of
triangles, by drawing uniform variates that place the triangle feet inside
a bracket [a, b] of admissible reliabilities.  The draws are chained so
that the lower membership function always sits inside the upper one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .fuzzy import IntervalType2Number, TriangularNumber

__all__ = ["GenerationSpec", "generate_t1", "generate_it2"]

DEFAULT_LOWER = 0.5
DEFAULT_UPPER = 1.0 - 1e-6


@dataclass(frozen=True)
class GenerationSpec:
    """Inputs for fuzzification: crisp seeds, bracket, RNG seed.

    a and b bound every generated support.  Each r in r_values must lie in
    [a, b]; the generated triangles then also stay inside the bracket.
    """

    r_values: tuple
    a: float = DEFAULT_LOWER
    b: float = DEFAULT_UPPER
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_values", tuple(float(r) for r in self.r_values))
        if not self.r_values:
            raise ValidationError("r_values must contain at least one reliability")
        if not (0.0 < self.a < self.b < 1.0):
            raise ValidationError(f"bracket must satisfy 0 < a < b < 1, got a={self.a}, b={self.b}")
        for r in self.r_values:
            if not (self.a <= r <= self.b):
                raise ValidationError(f"reliability {r} outside the bracket [{self.a}, {self.b}]")


def _base_feet(r: float, a: float, b: float, rng: np.random.Generator) -> tuple[float, float]:
    # left foot lands in [a, r], right foot in [r, b]
    r_left = a + (r - a) * rng.random()
    r_right = b - (b - r) * rng.random()
    return r_left, r_right


def generate_t1(spec: GenerationSpec) -> list[TriangularNumber]:
    """One triangle per crisp seed, apex at the seed, feet drawn inside the bracket.

    Consumes two uniform draws per seed (left foot, then right foot).
    """
    rng = np.random.default_rng(spec.seed)
    out = []
    for r in spec.r_values:
        r_left, r_right = _base_feet(r, spec.a, spec.b, rng)
        out.append(TriangularNumber(r_left, r, r_right))
    return out


def generate_it2(spec: GenerationSpec) -> list[IntervalType2Number]:
    """One interval type-2 number per crisp seed.

    Consumes six uniform draws per seed, in order: the two base feet, the
    two lower-triangle feet pulled inward from the base feet toward the
    apex, and the two upper-triangle feet pushed outward from the base
    feet toward the bracket ends.  Nesting is so by construction.
    """
    rng = np.random.default_rng(spec.seed)
    out = []
    for r in spec.r_values:
        r_left, r_right = _base_feet(r, spec.a, spec.b, rng)
        lower_left = r_left + (r - r_left) * rng.random()
        lower_right = r_right - (r_right - r) * rng.random()
        upper_left = r_left - (r_left - spec.a) * rng.random()
        upper_right = r_right + (spec.b - r_right) * rng.random()
        out.append(
            IntervalType2Number(
                upper=TriangularNumber(upper_left, r, upper_right),
                lower=TriangularNumber(lower_left, r, lower_right),
            )
        )
    return out
