"""Type reduction and defuzzification of interval type-2 fuzzy numbers.

Four reduction strategies are provided:

* ``km_centroid``: the Karnik-Mendel iterative switch-point procedure.
  Exact on the discretized domain; returns the centroid interval.
* ``uncertainty_bounds``: closed-form inner/outer bounds on the centroid
  interval; no iteration, endpoints are midpoints of their bound pairs.
* ``nie_tan``: single closed form mixing both membership functions.
* ``geometric_centroid``: x-coordinate of the centroid of the closed
  polygon bounded by the two membership functions; grid free.

``t1_centroid`` covers the type-1 triangle case and ``defuzzify`` is a
string-keyed dispatcher used by the CLI.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .fuzzy import DiscretizedFou, IntervalType2Number, TriangularNumber, discretize

__all__ = [
    "CentroidInterval",
    "DEFAULT_GRID",
    "GRID_ENV_VAR",
    "resolve_grid",
    "km_centroid",
    "uncertainty_bounds",
    "nie_tan",
    "geometric_centroid",
    "t1_centroid",
    "defuzzify",
    "REDUCTION_METHODS",
]

DEFAULT_GRID = 2001
GRID_ENV_VAR = "MORRAP_GRID"

# methods usable with defuzzify(); "t1-centroid" takes a TriangularNumber
REDUCTION_METHODS = ("km", "ub", "nt", "gc", "t1-centroid")


def resolve_grid(n: int | None = None) -> int:
    """Pick the grid size: explicit argument, else MORRAP_GRID, else 2001."""
    if n is not None:
        return int(n)
    env = os.environ.get(GRID_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError(f"{GRID_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_GRID


@dataclass(frozen=True)
class CentroidInterval:
    """Type-reduced set [left, right]; the defuzzified value is the midpoint."""

    left: float
    right: float

    def __post_init__(self) -> None:
        if self.left > self.right:
            raise ValidationError(f"centroid interval ends out of order: [{self.left}, {self.right}]")

    @property
    def defuzzified(self) -> float:
        return 0.5 * (self.left + self.right)

    @property
    def width(self) -> float:
        return self.right - self.left


def _grid(f: IntervalType2Number, n: int | None) -> DiscretizedFou:
    fou = discretize(f, resolve_grid(n))
    if fou.upper_grades.sum() == 0.0:
        raise NumericalError("membership mass is zero on the reduction grid")
    return fou


# --- Karnik-Mendel --------------------------------------------------------

def _km_endpoint(fou: DiscretizedFou, left_end: bool, max_iter: int = 300) -> float:
    """One KM endpoint by switch-point iteration.

    For the left end, grid points at or below the switch index take the
    upper grade and the rest take the lower grade; the right end swaps the
    roles.  Iteration stops when the integer switch index is a fixed point
    and the centroid no longer moves.
    """
    xs = fou.xs
    up = fou.upper_grades
    lo = fou.lower_grades
    theta = 0.5 * (up + lo)
    mass = theta.sum()
    if mass == 0.0:
        raise NumericalError("membership mass is zero on the reduction grid")
    y = float(np.dot(xs, theta) / mass)
    idx = np.arange(len(xs))
    k_prev = -1
    for _ in range(max_iter):
        k = int(np.searchsorted(xs, y, side="right") - 1)
        k = min(max(k, 0), len(xs) - 2)
        if left_end:
            theta = np.where(idx <= k, up, lo)
        else:
            theta = np.where(idx <= k, lo, up)
        mass = theta.sum()
        if mass == 0.0:
            raise NumericalError("membership mass is zero on the reduction grid")
        y_next = float(np.dot(xs, theta) / mass)
        if k == k_prev and abs(y_next - y) < 1e-15:
            return y_next
        y = y_next
        k_prev = k
    raise NumericalError("switch-point iteration did not reach a fixed point")


def km_centroid(f: IntervalType2Number, n: int | None = None) -> CentroidInterval:
    """Centroid interval of an interval type-2 number by the Karnik-Mendel procedure."""
    fou = _grid(f, n)
    return CentroidInterval(
        left=_km_endpoint(fou, left_end=True),
        right=_km_endpoint(fou, left_end=False),
    )


# --- uncertainty bounds ---------------------------------------------------

def uncertainty_bounds(f: IntervalType2Number, n: int | None = None) -> CentroidInterval:
    """Centroid interval estimate from closed-form inner and outer bounds.

    Each end of the type-reduced set is bracketed by two closed forms and
    reported as their midpoint; no iteration is involved.
    """
    fou = _grid(f, n)
    xs, lo, up = fou.xs, fou.lower_grades, fou.upper_grades
    s_lo = lo.sum()
    s_up = up.sum()
    if s_lo == 0.0 or s_up == 0.0:
        raise NumericalError("a membership function has zero mass on the grid")
    y_all_lower = float(np.dot(xs, lo) / s_lo)
    y_all_upper = float(np.dot(xs, up) / s_up)
    left_outer_base = min(y_all_lower, y_all_upper)
    right_outer_base = max(y_all_lower, y_all_upper)

    spread = (up - lo).sum() / (s_up * s_lo)
    x1, xn = xs[0], xs[-1]

    def shift(first, second) -> float:
        a = float(np.dot(first, xs - x1))
        b = float(np.dot(second, xn - xs))
        if a + b == 0.0:
            return 0.0  # point support, nothing to shift
        return spread * a * b / (a + b)

    left_inner = left_outer_base - shift(lo, up)
    right_inner = right_outer_base + shift(up, lo)
    return CentroidInterval(
        left=0.5 * (left_inner + left_outer_base),
        right=0.5 * (right_outer_base + right_inner),
    )


# --- Nie-Tan ----------------------------------------------------------------

def nie_tan(f: IntervalType2Number, n: int | None = None) -> float:
    """Crisp value from the average of the two membership functions."""
    fou = _grid(f, n)
    xs, lo, up = fou.xs, fou.lower_grades, fou.upper_grades
    den = up.sum() + lo.sum()
    if den == 0.0:
        raise NumericalError("membership mass is zero on the reduction grid")
    return float((np.dot(xs, up) + np.dot(xs, lo)) / den)


# --- geometric centroid -----------------------------------------------------

def geometric_centroid(f: IntervalType2Number) -> float:
    """x-coordinate of the centroid of the FOU polygon; closed form, no grid.

    The polygon walks the upper triangle left to right, then the lower
    triangle right to left, and closes.  A collapsed FOU (upper equal to
    lower) has zero area and no polygon centroid.
    """
    (ul, m, ur), (ll, _, lr) = f.as_tuples()
    px = np.array([ul, m, ur, lr, m, ll])
    py = np.array([0.0, 1.0, 0.0, 0.0, 1.0, 0.0])
    qx = np.roll(px, -1)
    qy = np.roll(py, -1)
    cross = px * qy - qx * py
    area2 = cross.sum()  # twice the signed area
    if abs(area2) < 1e-12:
        raise NumericalError(
            "FOU polygon has zero area (upper and lower membership functions "
            "coincide); use nie_tan for collapsed FOUs"
        )
    return float(((px + qx) * cross).sum() / (3.0 * area2))


def t1_centroid(f: TriangularNumber) -> float:
    """Centroid of a type-1 triangle, (left + mode + right) / 3."""
    return f.centroid()


def defuzzify(f, method: str = "km", n: int | None = None) -> float:
    """Crisp value of a fuzzy number by the named method.

    Parameters
    ----------
    f : IntervalType2Number or TriangularNumber
        The number to defuzzify.  "t1-centroid" expects a TriangularNumber,
        every other method an IntervalType2Number.
    method : str
        One of "km", "ub", "nt", "gc", "t1-centroid".
    n : int, optional
        Grid size for the grid-based methods; defaults to MORRAP_GRID or 2001.
    """
    if method in ("km", "ub", "nt", "gc") and not isinstance(f, IntervalType2Number):
        raise ValidationError(f"{method} expects an interval type-2 number")
    if method == "km":
        return km_centroid(f, n).defuzzified
    if method == "ub":
        return uncertainty_bounds(f, n).defuzzified
    if method == "nt":
        return nie_tan(f, n)
    if method == "gc":
        return geometric_centroid(f)
    if method == "t1-centroid":
        if not isinstance(f, TriangularNumber):
            raise ValidationError("t1-centroid expects a type-1 triangular number")
        return t1_centroid(f)
    raise ValidationError(f"unknown reduction method {method!r}; choose from {REDUCTION_METHODS}")
