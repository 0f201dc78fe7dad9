"""Full solve on the bundled plant: reduce, anchor, compromise.

Same flow as `morrap solve`, but using the library directly so the
intermediate objects are visible.
"""

from morrap.config import bundled_path, load_problem
from morrap.reduction import km_centroid
from morrap.scalarization import DesirabilitySpec, build_payoff, solve_scalarized

pc = load_problem(str(bundled_path()))
print(f"instance {pc.name}: {len(pc.subsystems)} subsystems, "
      f"V <= {pc.volume_limit}, W <= {pc.weight_limit}")

# type-reduce every component reliability at the bundled grid
rel = [km_centroid(f, pc.grid).defuzzified for f in pc.it2_numbers()]
print("crisp reliabilities:", " ".join(f"{r:.4f}" for r in rel))

inst = pc.instance(rel, "reproduce")
print(f"design space: {inst.design_space_size} candidates")
print()

payoff = build_payoff(inst)
print(f"reliability anchor {payoff.reliability_max:.7f} at "
      f"{tuple(payoff.reliability_opt.design)} (cost {payoff.cost_max:.4f})")
print(f"cost anchor        {payoff.cost_min:.4f} at "
      f"{tuple(payoff.cost_opt.design)} (reliability {payoff.reliability_min:.7f})")
print()

runs = [
    ("global criterion", "global", {}),
    ("weighted sum", "weighted", {}),
    ("desirability", "desirability", {"desirability": DesirabilitySpec(exponents=(1.0, 0.1))}),
    ("fuzzy max-min", "fuzzy", {}),
    ("classification", "nimbus", {}),
]
for label, method, kwargs in runs:
    sol = solve_scalarized(inst, method, payoff, **kwargs)
    ev = sol.evaluation
    print(f"{label:17s} {tuple(sol.design)}  R={ev.reliability:.7f} "
          f"C={ev.cost:.4f}  distance={sol.convergence:.5f}")
