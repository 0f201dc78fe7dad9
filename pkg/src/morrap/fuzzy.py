"""Triangular type-1 and interval type-2 fuzzy numbers.

A type-1 triangular number is the usual (left, mode, right) membership
triangle.  An interval type-2 number pairs two such triangles sharing one
apex: an upper membership function and a lower one nested inside it.  The
region between them is the footprint of uncertainty (FOU).  Secondary
grades are identically one and are not stored.

Arithmetic is componentwise over the six triangle parameters, which is the
standard closed-form approximation for triangular shapes (products are kept
to nonnegative operands, where the formula is exact on supports).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "TriangularNumber",
    "IntervalType2Number",
    "DiscretizedFou",
    "membership_bounds",
    "it2_add",
    "it2_mul",
    "it2_scale",
    "it2_divide",
    "discretize",
    "parse_it2_text",
    "format_it2_text",
]


@dataclass(frozen=True)
class TriangularNumber:
    """Triangular membership function with support [left, right] and apex at mode."""

    left: float
    mode: float
    right: float

    def __post_init__(self) -> None:
        for name in ("left", "mode", "right"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValidationError(f"triangular parameter {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not (self.left <= self.mode <= self.right):
            raise ValidationError(
                f"triangular parameters must satisfy left <= mode <= right, "
                f"got ({self.left}, {self.mode}, {self.right})"
            )

    def membership(self, x):
        """Membership grade at x (scalar or array); zero outside the support."""
        x = np.asarray(x, dtype=float)
        g = np.zeros_like(x)
        if self.mode > self.left:
            rising = (x >= self.left) & (x < self.mode)
            g = np.where(rising, (x - self.left) / (self.mode - self.left), g)
        if self.right > self.mode:
            falling = (x > self.mode) & (x <= self.right)
            g = np.where(falling, (self.right - x) / (self.right - self.mode), g)
        g = np.where(x == self.mode, 1.0, g)
        return float(g) if g.ndim == 0 else g

    def centroid(self) -> float:
        """Center of gravity of the triangle, (left + mode + right) / 3."""
        return (self.left + self.mode + self.right) / 3.0

    @property
    def width(self) -> float:
        return self.right - self.left

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.left, self.mode, self.right)


@dataclass(frozen=True)
class IntervalType2Number:
    """Interval type-2 fuzzy number: nested upper/lower triangles with a shared apex.

    Invariants enforced at construction:

    * both triangles peak at the same mode,
    * upper.left <= lower.left and lower.right <= upper.right, so the lower
      membership never exceeds the upper one anywhere.
    """

    upper: TriangularNumber
    lower: TriangularNumber

    def __post_init__(self) -> None:
        if self.upper.mode != self.lower.mode:
            raise ValidationError(
                f"upper and lower membership functions must share an apex, "
                f"got modes {self.upper.mode} and {self.lower.mode}"
            )
        if self.upper.left > self.lower.left or self.lower.right > self.upper.right:
            raise ValidationError(
                "lower membership function must be contained in the upper one: "
                f"upper={self.upper.as_tuple()} lower={self.lower.as_tuple()}"
            )

    @property
    def mode(self) -> float:
        return self.upper.mode

    @property
    def support(self) -> tuple[float, float]:
        """Support of the number, the base of the upper triangle."""
        return (self.upper.left, self.upper.right)

    def membership_bounds(self, x):
        """(lower grade, upper grade) at x; both zero outside the support."""
        return (self.lower.membership(x), self.upper.membership(x))

    def as_tuples(self):
        return (self.upper.as_tuple(), self.lower.as_tuple())


@dataclass(frozen=True)
class DiscretizedFou:
    """Uniform sampling of a footprint of uncertainty over the support.

    xs is strictly increasing and spans exactly the support of the source
    number; grades are the lower/upper memberships evaluated at xs.
    """

    xs: np.ndarray
    lower_grades: np.ndarray
    upper_grades: np.ndarray

    @property
    def n(self) -> int:
        return len(self.xs)


# --- free-function forms -------------------------------------------------

def membership_bounds(f: IntervalType2Number, x):
    return f.membership_bounds(x)


def discretize(f: IntervalType2Number, n: int) -> DiscretizedFou:
    """Sample the FOU on a uniform n-point grid over the support.

    Both support endpoints are grid points.  n must be at least 3 so the
    grid can hold both endpoints plus an interior point.
    """
    if n < 3:
        raise ValidationError(f"grid size must be at least 3, got {n}")
    lo, hi = f.support
    xs = np.linspace(lo, hi, int(n))
    lower, upper = f.membership_bounds(xs)
    return DiscretizedFou(xs=xs, lower_grades=lower, upper_grades=upper)


def _combine(a: IntervalType2Number, b: IntervalType2Number, op) -> IntervalType2Number:
    ua, la = a.upper, a.lower
    ub, lb = b.upper, b.lower
    return IntervalType2Number(
        upper=TriangularNumber(op(ua.left, ub.left), op(ua.mode, ub.mode), op(ua.right, ub.right)),
        lower=TriangularNumber(op(la.left, lb.left), op(la.mode, lb.mode), op(la.right, lb.right)),
    )


def it2_add(a: IntervalType2Number, b: IntervalType2Number) -> IntervalType2Number:
    """Componentwise sum of the six triangle parameters."""
    return _combine(a, b, lambda x, y: x + y)


def it2_mul(a: IntervalType2Number, b: IntervalType2Number) -> IntervalType2Number:
    """Componentwise product; restricted to nonnegative parameters.

    The componentwise form is only valid when no parameter is negative
    (reliabilities always satisfy this), so negative inputs are rejected.
    """
    for f in (a, b):
        if f.upper.left < 0 or f.lower.left < 0:
            raise ValidationError("componentwise product requires nonnegative parameters")
    return _combine(a, b, lambda x, y: x * y)


def it2_scale(a: IntervalType2Number, factor: float) -> IntervalType2Number:
    """Scale all six parameters by a positive factor."""
    if not factor > 0:
        raise ValidationError(f"scale factor must be positive, got {factor}")
    return IntervalType2Number(
        upper=TriangularNumber(a.upper.left * factor, a.upper.mode * factor, a.upper.right * factor),
        lower=TriangularNumber(a.lower.left * factor, a.lower.mode * factor, a.lower.right * factor),
    )


def it2_divide(a: IntervalType2Number, divisor: float) -> IntervalType2Number:
    """Divide all six parameters by a positive divisor."""
    if not divisor > 0:
        raise ValidationError(f"divisor must be positive, got {divisor}")
    return it2_scale(a, 1.0 / divisor)


# --- textual tuple form ---------------------------------------------------
# ((u_left, mode, u_right),(l_left, mode, l_right)) with plain decimal numbers.

_TUPLE_RE = re.compile(
    r"^\s*\(\s*\(([^()]*)\)\s*,\s*\(([^()]*)\)\s*\)\s*$"
)


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValidationError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ValidationError(f"bad number in triple {text!r}") from exc


def parse_it2_text(text: str) -> IntervalType2Number:
    """Parse the ((a,m,b),(c,m,d)) textual form."""
    m = _TUPLE_RE.match(text)
    if m is None:
        raise ValidationError(f"cannot parse interval type-2 tuple from {text!r}")
    up = _parse_triple(m.group(1))
    lo = _parse_triple(m.group(2))
    return IntervalType2Number(upper=TriangularNumber(*up), lower=TriangularNumber(*lo))


def format_it2_text(f: IntervalType2Number, decimals: int = 6) -> str:
    """Serialize to the ((a,m,b),(c,m,d)) textual form."""
    def triple(t: TriangularNumber) -> str:
        return ",".join(f"{v:.{decimals}f}" for v in t.as_tuple())

    return f"(({triple(f.upper)}),({triple(f.lower)}))"
