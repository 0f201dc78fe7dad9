"""Walk one fuzzy reliability through every reduction method.

Shows how the four interval type-2 reductions and the plain type-1 centroid
land on different crisp values for the same component, and how the grid
size moves the grid-based ones.
"""

from morrap import IntervalType2Number, TriangularNumber
from morrap.reduction import (
    geometric_centroid,
    km_centroid,
    nie_tan,
    t1_centroid,
    uncertainty_bounds,
)

# component with seed reliability 0.55, wide upper and tight lower triangle
upper = TriangularNumber(0.511813, 0.55, 0.893671)
lower = TriangularNumber(0.542672, 0.55, 0.615958)
f = IntervalType2Number(upper=upper, lower=lower)

# matching type-1 triangle around the same seed
t1 = TriangularNumber(0.520268, 0.55, 0.817585)

print("support:", f.support, " apex:", f.mode)
print()

for grid in (41, 201, 2001):
    km = km_centroid(f, grid)
    ub = uncertainty_bounds(f, grid)
    nt = nie_tan(f, grid)
    print(f"grid {grid:5d}")
    print(f"  switch-point interval   [{km.left:.6f}, {km.right:.6f}] -> {km.defuzzified:.6f}")
    print(f"  uncertainty bounds      [{ub.left:.6f}, {ub.right:.6f}] -> {ub.defuzzified:.6f}")
    print(f"  membership-average      {nt:.6f}")

# the polygon centroid needs no grid at all
print()
print(f"footprint polygon centroid {geometric_centroid(f):.6f}")
print(f"type-1 triangle centroid   {t1_centroid(t1):.6f}")
