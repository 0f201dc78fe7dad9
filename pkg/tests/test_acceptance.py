"""Acceptance criteria for the bundled pharmaceutical-plant case study.

One test per criterion; each prints a single PASS/FAIL verdict line (visible
with -s, and in the -v listing through the test name).  Tolerances come from
the bundled reference tables: 1e-3 on defuzzified values, 1e-4 on system
reliability, 0.05 on system cost, 1e-3 on convergence distances.
"""

import math
import time

import numpy as np
import pytest

from morrap.cli import RunConfig, run_pipeline
from morrap.config import bundled_path
from morrap.errors import NumericalError
from morrap.fuzzy import IntervalType2Number, TriangularNumber
from morrap.generation import GenerationSpec, generate_it2, generate_t1
from morrap.model import DesignVector, ProblemInstance, SubsystemParams, evaluate
from morrap.reduction import (
    geometric_centroid,
    km_centroid,
    nie_tan,
    t1_centroid,
    uncertainty_bounds,
)
from morrap.scalarization import (
    DesirabilitySpec,
    NimbusSpec,
    convergence_metric,
    desirability_score,
    fuzzy_maxmin,
    global_criterion_score,
    nimbus_score,
    solve_scalarized,
    weighted_sum_score,
)
from morrap.solver import pareto_front

PLANT = str(bundled_path())


def verdict(criterion, ok, detail):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_type_reduction_tables(pharma, reference):
    """Every defuzzified entry within 1e-3 of the recorded tables at the
    bundled grid, the two recorded outliers confirmed as outliers, and all
    four methods together under one second at the fine default grid."""
    block = reference["defuzzified"]
    tol = reference["tolerances"]["defuzzified"]
    grid = block["grid"]
    fns = pharma.it2_numbers()
    outliers = {(o["component"], o["method"], o["field"]) for o in block["known_outliers"]}

    mismatches = []
    confirmed_outliers = 0
    checked = 0
    for i, f in enumerate(fns, start=1):
        km = km_centroid(f, grid)
        ub = uncertainty_bounds(f, grid)
        got = {
            ("km", "left"): km.left, ("km", "right"): km.right,
            ("km", "value"): km.defuzzified,
            ("ub", "left"): ub.left, ("ub", "right"): ub.right,
            ("ub", "value"): ub.defuzzified,
            ("nt", "value"): nie_tan(f, grid),
            ("gc", "value"): geometric_centroid(f),
        }
        for (method, field), value in got.items():
            want = block[method][field][i - 1]
            close = abs(value - want) <= tol
            if (i, method, field) in outliers:
                assert not close, f"recorded outlier {i}/{method}/{field} matches now"
                confirmed_outliers += 1
                continue
            checked += 1
            if not close:
                mismatches.append(f"{i}/{method}/{field}: {value:.7f} vs {want:.7f}")

    start = time.perf_counter()
    for f in fns:
        km_centroid(f, 2001)
        uncertainty_bounds(f, 2001)
        nie_tan(f, 2001)
        geometric_centroid(f)
    elapsed = time.perf_counter() - start

    ok = not mismatches and confirmed_outliers == 2 and elapsed < 1.0
    verdict(
        "1", ok,
        f"{checked} entries within {tol} at grid {grid}, "
        f"{confirmed_outliers} recorded outliers confirmed, "
        f"four methods on ten numbers at 2001 points in {elapsed * 1000:.0f} ms"
        + (f"; mismatches: {mismatches}" if mismatches else ""),
    )


def test_criterion_2_recorded_compromise_rows(reference, km_instance, km_solutions):
    """The four internally consistent recorded rows re-evaluate to their
    printed objectives within 1e-4 / 0.05, and the scan lands on the same
    designs where a consistent argmax is recorded."""
    tol_r = reference["tolerances"]["reliability"]
    tol_c = reference["tolerances"]["cost"]
    methods = reference["pipelines"]["km"]["methods"]

    rows = {
        "global": methods["global"]["design"],
        "weighted": methods["weighted"]["design"],
        "nimbus": methods["nimbus"]["design"],
        "fuzzy": methods["fuzzy"].get("consistent_design", methods["fuzzy"]["design"]),
    }
    problems = []
    for key, design in rows.items():
        ev = evaluate(km_instance, DesignVector(tuple(design)))
        want_r = methods[key]["reliability"]
        want_c = methods[key]["cost"]
        if abs(ev.reliability - want_r) > tol_r:
            problems.append(f"{key} reliability {ev.reliability:.7f} vs {want_r:.7f}")
        if abs(ev.cost - want_c) > tol_c:
            problems.append(f"{key} cost {ev.cost:.4f} vs {want_c:.4f}")

    # where the recorded row is consistent, the exhaustive scan finds it
    for key in ("global", "weighted", "fuzzy"):
        got = tuple(km_solutions[key].design)
        if got != tuple(rows[key]):
            problems.append(f"{key} argmax {got} vs recorded {tuple(rows[key])}")

    verdict(
        "2", not problems,
        "four recorded rows re-evaluate within tolerance and the scan "
        "reproduces the three consistent argmax designs"
        + (f"; problems: {problems}" if problems else ""),
    )


def test_criterion_3_certified_anchor_optima(km_instance, km_payoff, km_solutions):
    """Anchor optima are feasible, agree with an independent slow oracle,
    and bound every compromise solution on their own objective."""
    def slow_oracle(counts):
        rel = 1.0
        cost = []
        for p, r, n in zip(km_instance.subsystems, km_instance.reliabilities, counts):
            rel *= 1.0 - (1.0 - r) ** n
            unit = p.alpha * (-km_instance.mission_time / math.log(r)) ** p.beta
            cost.append(unit * (n + math.exp(n / 4.0)))
        return rel, math.fsum(cost)

    problems = []
    r_opt = km_payoff.reliability_opt
    c_opt = km_payoff.cost_opt
    for name, sol in (("reliability-max", r_opt), ("cost-min", c_opt)):
        if not sol.evaluation.feasible:
            problems.append(f"{name} anchor infeasible")
        rel, cost = slow_oracle(tuple(sol.design))
        if not math.isclose(rel, sol.evaluation.reliability, rel_tol=1e-10):
            problems.append(f"{name} reliability disagrees with the oracle")
        if not math.isclose(cost, sol.evaluation.cost, rel_tol=1e-10):
            problems.append(f"{name} cost disagrees with the oracle")

    max_r_dev = max(
        km_payoff.reliability_max - s.evaluation.reliability for s in km_solutions.values()
    )
    min_r_dev = min(
        km_payoff.reliability_max - s.evaluation.reliability for s in km_solutions.values()
    )
    min_c_dev = min(
        s.evaluation.cost - km_payoff.cost_min for s in km_solutions.values()
    )
    if min_r_dev < -1e-12:
        problems.append("a compromise solution beats the reliability anchor")
    if min_c_dev < -1e-9:
        problems.append("a compromise solution beats the cost anchor")

    verdict(
        "3", not problems,
        f"anchors feasible and oracle-verified; compromise reliabilities sit "
        f"{min_r_dev:.3e}..{max_r_dev:.3e} below the certified maximum, "
        f"costs at least {min_c_dev:.4f} above the certified minimum"
        + (f"; problems: {problems}" if problems else ""),
    )


def test_criterion_4_full_scan_certificates(km_instance, km_payoff, km_solutions):
    """All five methods re-solved by exhaustive scan in under ten seconds,
    each winner's score re-derived independently from its objectives."""
    start = time.perf_counter()
    fresh = {
        "global": solve_scalarized(km_instance, "global", km_payoff),
        "weighted": solve_scalarized(km_instance, "weighted", km_payoff),
        "desirability": solve_scalarized(
            km_instance, "desirability", km_payoff,
            desirability=DesirabilitySpec(exponents=(1.0, 0.1)),
        ),
        "fuzzy": solve_scalarized(km_instance, "fuzzy", km_payoff),
        "nimbus": solve_scalarized(
            km_instance, "nimbus", km_payoff, current=km_solutions["weighted"]
        ),
    }
    elapsed = time.perf_counter() - start

    rescore = {
        "global": lambda ev: global_criterion_score(ev.reliability, ev.cost, km_payoff),
        "weighted": lambda ev: weighted_sum_score(ev.reliability, ev.cost, km_payoff),
        "desirability": lambda ev: desirability_score(
            ev.reliability, ev.cost, km_payoff, DesirabilitySpec(exponents=(1.0, 0.1))
        ),
        "fuzzy": lambda ev: fuzzy_maxmin(ev.reliability, ev.cost, km_payoff),
        "nimbus": lambda ev: nimbus_score(
            ev.reliability, ev.cost, km_payoff, NimbusSpec(), km_solutions["weighted"],
        ),
    }
    problems = []
    for key, sol in fresh.items():
        again = float(rescore[key](sol.evaluation))
        if not math.isclose(again, sol.score, rel_tol=0, abs_tol=1e-10):
            problems.append(f"{key} score {sol.score} vs re-derived {again}")
        if not sol.evaluation.feasible:
            problems.append(f"{key} winner infeasible")
        session_key = "desirability_1" if key == "desirability" else key
        if tuple(sol.design) != tuple(km_solutions[session_key].design):
            problems.append(f"{key} design unstable across runs")
    if elapsed >= 10.0:
        problems.append(f"five scans took {elapsed:.2f}s")

    verdict(
        "4", not problems,
        f"five exhaustive scans over {km_instance.design_space_size} designs "
        f"in {elapsed:.2f}s with independently re-derived winner scores"
        + (f"; problems: {problems}" if problems else ""),
    )


def test_criterion_5_pareto_front_and_sweep(km_instance, km_payoff):
    """No dominated pair on the front; every weighted-sum sweep optimum
    (w1 = 0.05..0.95) is a front member."""
    front = pareto_front(km_instance)
    pts = [(p.evaluation.reliability, p.evaluation.cost) for p in front]
    problems = []

    for i, (ri, ci) in enumerate(pts):
        for j, (rj, cj) in enumerate(pts):
            if i != j and rj >= ri and cj <= ci and (rj > ri or cj < ci):
                problems.append(f"front point {i} dominated by {j}")
                break

    members = set(pts)
    off_front = 0
    for k in range(1, 20):
        w1 = round(0.05 * k, 2)
        sol = solve_scalarized(km_instance, "weighted", km_payoff,
                               weights=(w1, round(1.0 - w1, 2)))
        if (sol.evaluation.reliability, sol.evaluation.cost) not in members:
            off_front += 1
            problems.append(f"sweep w1={w1} lands off the front")

    verdict(
        "5", not problems,
        f"{len(front)} front points, zero dominated pairs, "
        f"{19 - off_front}/19 sweep optima on the front"
        + (f"; problems: {problems}" if problems else ""),
    )


def test_criterion_6_convergence_distances(reference, km_payoff):
    """The six recorded per-method distances are reproduced within 1e-3 by
    the documented ideal-anchored variant, and the report carries both
    variants side by side."""
    km_ref = reference["pipelines"]["km"]
    recorded = km_ref["convergence"]
    order = km_ref["convergence_order"]
    tol = reference["tolerances"]["convergence"]

    problems = []
    ideal_seq = []
    range_seq = []
    for key, want in zip(order, recorded):
        row = km_ref["methods"][key]
        ideal = float(convergence_metric(row["reliability"], row["cost"], km_payoff, "ideal"))
        rng = float(convergence_metric(row["reliability"], row["cost"], km_payoff, "range"))
        ideal_seq.append(ideal)
        range_seq.append(rng)
        if abs(ideal - want) > tol:
            problems.append(f"{key}: ideal {ideal:.7f} vs recorded {want:.7f}")
    max_dev = max(abs(a - b) for a, b in zip(ideal_seq, recorded))

    report = run_pipeline(RunConfig(instance_path=PLANT))
    header_ok = "convergence_range" in report and "convergence_ideal" in report
    calib_ok = "# section: convergence-calibration" in report
    both_desirability = "t1=1 t2=0.1" in report and "t1=0.5 t2=0.1" in report
    if not header_ok:
        problems.append("report lacks the two convergence columns")
    if not calib_ok:
        problems.append("report lacks the calibration section")
    if not both_desirability:
        problems.append("report lacks the two recorded desirability parameter rows")

    verdict(
        "6", not problems,
        f"six distances within {tol} under the ideal-anchored variant "
        f"(max deviation {max_dev:.2e}); report shows both variants; "
        f"range-variant sequence {['%.7f' % v for v in range_seq]} documented alongside"
        + (f"; problems: {problems}" if problems else ""),
    )


def test_criterion_7_property_suites(pharma):
    """Structural invariants: symmetric footprints defuzzify to the apex,
    collapsed footprints match the type-1 centroid, redundancy raises both
    objectives, generated numbers nest correctly, and the pipeline is
    deterministic under a fixed seed."""
    problems = []
    rng = np.random.default_rng(808)

    # symmetric footprint -> apex, all four methods
    for _ in range(100):
        mode = rng.uniform(0.3, 0.7)
        outer = rng.uniform(0.05, 0.25)
        inner = rng.uniform(0.01, outer)
        f = IntervalType2Number(
            upper=TriangularNumber(mode - outer, mode, mode + outer),
            lower=TriangularNumber(mode - inner, mode, mode + inner),
        )
        for name, value in (
            ("km", km_centroid(f, 801).defuzzified),
            ("ub", uncertainty_bounds(f, 801).defuzzified),
            ("nt", nie_tan(f, 801)),
            ("gc", geometric_centroid(f)),
        ):
            if abs(value - mode) > 1e-6:
                problems.append(f"symmetric {name} off apex by {abs(value - mode):.2e}")

    # collapsed footprint -> type-1 centroid; the polygon method must refuse
    for _ in range(100):
        mode = rng.uniform(0.3, 0.7)
        t = TriangularNumber(mode - rng.uniform(0.02, 0.25), mode,
                             mode + rng.uniform(0.02, 0.25))
        f = IntervalType2Number(upper=t, lower=t)
        want = t1_centroid(t)
        for name, value in (
            ("km", km_centroid(f, 2001).defuzzified),
            ("ub", uncertainty_bounds(f, 2001).defuzzified),
            ("nt", nie_tan(f, 2001)),
        ):
            if abs(value - want) > 1e-6:
                problems.append(f"collapsed {name} off the type-1 centroid")
        try:
            geometric_centroid(f)
            problems.append("collapsed gc did not refuse")
        except NumericalError:
            pass

    # more redundancy always raises reliability and cost
    for _ in range(1000):
        k = int(rng.integers(2, 6))
        subs = tuple(
            SubsystemParams(
                alpha=float(rng.uniform(1e-6, 1e-4)), beta=float(rng.uniform(1.0, 2.0)),
                v=float(rng.integers(1, 6)), w=float(rng.integers(4, 11)), n_max=5,
            )
            for _ in range(k)
        )
        inst = ProblemInstance(
            subsystems=subs,
            reliabilities=tuple(float(r) for r in rng.uniform(0.55, 0.97, size=k)),
            volume_limit=1e9, weight_limit=1e9,
        )
        counts = [int(c) for c in rng.integers(1, 4, size=k)]
        j = int(rng.integers(0, k))
        base = evaluate(inst, DesignVector(tuple(counts)))
        counts[j] += 1
        bumped = evaluate(inst, DesignVector(tuple(counts)))
        if not (bumped.reliability > base.reliability and bumped.cost > base.cost):
            problems.append("monotonicity violated")
            break

    # generated numbers nest around their seeds, ten thousand draws
    seeds = tuple(pharma.crisp_seeds())
    draws = 0
    for seed in range(1000):
        spec = GenerationSpec(r_values=seeds, a=pharma.support[0],
                              b=pharma.support[1], seed=seed)
        for r, f in zip(seeds, generate_it2(spec)):
            if not (spec.a <= f.upper.left <= f.lower.left <= r
                    <= f.lower.right <= f.upper.right <= spec.b):
                problems.append(f"nesting broken at seed {seed}")
            draws += 1
    if draws != 10_000:
        problems.append(f"expected 10000 draws, got {draws}")

    # determinism: same seed, same numbers; same run, same report bytes
    spec = GenerationSpec(r_values=seeds, seed=99)
    if generate_t1(spec) != generate_t1(spec) or generate_it2(spec) != generate_it2(spec):
        problems.append("generation not deterministic under a fixed seed")
    cfg = RunConfig(instance_path=PLANT, profile="strict", method="weighted")
    if run_pipeline(cfg) != run_pipeline(cfg):
        problems.append("pipeline report not byte-deterministic")

    verdict(
        "7", not problems,
        "symmetric-apex, collapsed-centroid, monotonicity (1000 instances), "
        "generation nesting (10000 draws) and determinism all hold"
        + (f"; problems: {problems[:5]}" if problems else ""),
    )
