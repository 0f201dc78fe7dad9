"""Structural properties the reduction methods must share.

Two families: a symmetric uncertainty footprint must defuzzify to the apex,
and a footprint collapsed onto a single triangle must agree with the plain
type-1 centroid (the polygon method degenerates there and must say so).
"""

import numpy as np
import pytest

from morrap.errors import NumericalError
from morrap.fuzzy import IntervalType2Number, TriangularNumber
from morrap.reduction import (
    geometric_centroid,
    km_centroid,
    nie_tan,
    t1_centroid,
    uncertainty_bounds,
)


def symmetric_fou(rng):
    mode = rng.uniform(0.3, 0.7)
    outer = rng.uniform(0.05, 0.25)
    inner = rng.uniform(0.01, outer)
    upper = TriangularNumber(mode - outer, mode, mode + outer)
    lower = TriangularNumber(mode - inner, mode, mode + inner)
    return IntervalType2Number(upper=upper, lower=lower), mode


def collapsed_fou(rng):
    # side widths stay above 0.02 so the discretized mass is well conditioned
    mode = rng.uniform(0.3, 0.7)
    left = mode - rng.uniform(0.02, 0.25)
    right = mode + rng.uniform(0.02, 0.25)
    t = TriangularNumber(left, mode, right)
    return IntervalType2Number(upper=t, lower=t), t


def test_symmetric_fou_defuzzifies_to_apex():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        f, mode = symmetric_fou(rng)
        assert km_centroid(f, 801).defuzzified == pytest.approx(mode, abs=1e-6)
        assert uncertainty_bounds(f, 801).defuzzified == pytest.approx(mode, abs=1e-6)
        assert nie_tan(f, 801) == pytest.approx(mode, abs=1e-6)
        assert geometric_centroid(f) == pytest.approx(mode, abs=1e-6)


def test_symmetric_fou_intervals_are_centered():
    rng = np.random.default_rng(99)
    for _ in range(50):
        f, mode = symmetric_fou(rng)
        for c in (km_centroid(f, 801), uncertainty_bounds(f, 801)):
            assert (c.left + c.right) / 2.0 == pytest.approx(mode, abs=1e-6)
            assert c.width >= -1e-12


def test_collapsed_fou_matches_type1_centroid():
    rng = np.random.default_rng(7)
    for _ in range(200):
        f, t = collapsed_fou(rng)
        want = t1_centroid(t)
        assert km_centroid(f, 2001).defuzzified == pytest.approx(want, abs=1e-6)
        assert uncertainty_bounds(f, 2001).defuzzified == pytest.approx(want, abs=1e-6)
        assert nie_tan(f, 2001) == pytest.approx(want, abs=1e-6)


def test_collapsed_fou_breaks_the_polygon_method():
    # zero FOU area: the polygon centroid is undefined by construction
    rng = np.random.default_rng(11)
    for _ in range(20):
        f, _ = collapsed_fou(rng)
        with pytest.raises(NumericalError):
            geometric_centroid(f)


def test_km_interval_contains_every_other_point_estimate():
    # NT and the midpoint estimates all live inside the widest support
    rng = np.random.default_rng(31)
    for _ in range(100):
        mode = rng.uniform(0.3, 0.7)
        up = TriangularNumber(mode - rng.uniform(0.05, 0.3), mode, mode + rng.uniform(0.05, 0.3))
        lo = TriangularNumber(mode - rng.uniform(0.01, 0.04), mode, mode + rng.uniform(0.01, 0.04))
        f = IntervalType2Number(upper=up, lower=lo)
        lo_s, hi_s = f.support
        for value in (
            km_centroid(f, 401).defuzzified,
            uncertainty_bounds(f, 401).defuzzified,
            nie_tan(f, 401),
            geometric_centroid(f),
        ):
            assert lo_s - 1e-9 <= value <= hi_s + 1e-9
