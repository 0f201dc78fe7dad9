"""Export the exact nondominated front of the bundled plant to CSV.

The front comes from one exhaustive pass, so it is the complete set of
nondominated designs, not a heuristic sample.  Writes pareto_front.csv
next to this script.
"""

import csv
from pathlib import Path

from morrap.config import bundled_path, load_problem
from morrap.reduction import km_centroid
from morrap.solver import pareto_front

pc = load_problem(str(bundled_path()))
rel = [km_centroid(f, pc.grid).defuzzified for f in pc.it2_numbers()]
inst = pc.instance(rel, "reproduce")

front = pareto_front(inst)
print(f"{len(front)} nondominated designs")

out = Path(__file__).with_name("pareto_front.csv")
with open(out, "w", newline="", encoding="utf-8") as fh:
    writer = csv.writer(fh)
    writer.writerow(["rank", "design", "reliability", "cost", "volume", "weight"])
    for rank, point in enumerate(front, start=1):
        ev = point.evaluation
        writer.writerow([
            rank,
            " ".join(str(c) for c in point.design),
            f"{ev.reliability:.7f}",
            f"{ev.cost:.4f}",
            f"{ev.volume:.2f}",
            f"{ev.weight:.2f}",
        ])
print(f"wrote {out}")

# corners for a quick sanity read
cheap = front[0].evaluation
top = front[-1].evaluation
print(f"cheapest  R={cheap.reliability:.5f} C={cheap.cost:.2f}")
print(f"most reliable R={top.reliability:.5f} C={top.cost:.2f}")
