"""Type-1 vs interval type-2 modelling of the same plant, side by side.

The extra degree of uncertainty in the type-2 footprints shifts the crisp
reliabilities and with them every downstream compromise design.
"""

from morrap.config import bundled_path, load_problem
from morrap.reduction import km_centroid, t1_centroid
from morrap.scalarization import build_payoff, solve_scalarized

pc = load_problem(str(bundled_path()))

rel_t1 = [t1_centroid(t) for t in pc.t1_numbers()]
rel_it2 = [km_centroid(f, pc.grid).defuzzified for f in pc.it2_numbers()]

print("component reliabilities")
for i, (a, b) in enumerate(zip(rel_t1, rel_it2), start=1):
    print(f"  {i:2d}  t1 {a:.6f}   it2 {b:.6f}   shift {b - a:+.6f}")
print()

lanes = {}
for label, rel in (("t1", rel_t1), ("it2", rel_it2)):
    inst = pc.instance(rel, "reproduce")
    payoff = build_payoff(inst)
    lanes[label] = (inst, payoff)
    print(f"{label:3s} anchors: R_max {payoff.reliability_max:.7f}  "
          f"C_min {payoff.cost_min:.4f}")
print()

for method in ("global", "weighted", "fuzzy"):
    row = []
    for label in ("t1", "it2"):
        inst, payoff = lanes[label]
        sol = solve_scalarized(inst, method, payoff)
        ev = sol.evaluation
        row.append(f"{label} {tuple(sol.design)} R={ev.reliability:.5f} C={ev.cost:.2f}")
    print(f"{method:9s} " + "   ".join(row))
