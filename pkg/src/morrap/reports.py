"""Table-shaped report sections with deterministic CSV/JSON rendering.

Every report is a list of named sections; a section is a header plus rows
of preformatted strings.  Rendering involves no timestamps, no hashes and
no dict-order dependence, so identical inputs give byte-identical output.

When a reference table is available (bundled case studies), rows gain
comparison columns.  The `flag` column states whether the row itself is
self-consistent (a fresh re-evaluation of its design reproduces its
printed objectives); `reference-inconsistent` marks rows whose reference
counterpart fails that same check.  `matches_reference` says whether our
values agree with the reference values within the stated tolerances; a
mismatch with an explanatory note is expected where the reference is
flagged, and is a red flag otherwise.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .model import ProblemInstance, evaluate
from .scalarization import PayoffTable, convergence_metric, make_scalarization
from .solver import ParetoFront, optimize_scalarized

__all__ = [
    "Section",
    "render_csv",
    "render_json",
    "defuzzified_section",
    "payoff_section",
    "methods_section",
    "calibration_section",
    "front_sections",
    "compare_section",
    "DEFAULT_TOLERANCES",
]

DEFAULT_TOLERANCES = {"defuzzified": 1e-3, "reliability": 1e-4, "cost": 0.05, "convergence": 1e-3}

FLAG_OK = "ok"
FLAG_BAD = "reference-inconsistent"


@dataclass(frozen=True)
class Section:
    name: str
    columns: tuple
    rows: tuple


def render_csv(sections) -> str:
    out = io.StringIO()
    for i, sec in enumerate(sections):
        if i:
            out.write("\n")
        out.write(f"# section: {sec.name}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(sec.columns)
        writer.writerows(sec.rows)
    return out.getvalue()


def render_json(sections) -> str:
    payload = {
        "sections": [
            {"name": s.name, "columns": list(s.columns), "rows": [list(r) for r in s.rows]}
            for s in sections
        ]
    }
    return json.dumps(payload, indent=2) + "\n"


# --- cell formatting -------------------------------------------------------

def _fr(x: float) -> str:
    return f"{x:.7f}"


def _fc(x: float) -> str:
    return f"{x:.4f}"


def _fvw(x: float) -> str:
    return f"{x:.2f}"


def _fd(design) -> str:
    return " ".join("?" if c is None else str(int(c)) for c in design)


def _tol(reference: dict | None) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    if reference:
        tol.update(reference.get("tolerances", {}))
    return tol


def _close(got: float, want: float, tol: float) -> bool:
    return abs(got - want) <= tol


# --- sections ---------------------------------------------------------------

def defuzzified_section(per_method: dict, reference: dict | None = None) -> Section:
    """One block of rows per reduction method, Table-3 shaped.

    per_method maps a method token to its per-component results: centroid
    intervals for km/ub, plain floats for nt/gc/t1-centroid.
    """
    ref_block = (reference or {}).get("defuzzified", {})
    tol = _tol(reference)["defuzzified"]
    outliers = {
        (o["component"], o["method"], o["field"]) for o in ref_block.get("known_outliers", ())
    }
    rows = []
    for method, values in per_method.items():
        ref_m = ref_block.get(method)
        for i, val in enumerate(values, start=1):
            interval = hasattr(val, "left")
            left = _fr(val.left) if interval else ""
            right = _fr(val.right) if interval else ""
            value = val.defuzzified if interval else float(val)
            fields = {}
            if ref_m is not None:
                fields["value"] = (value, ref_m["value"][i - 1])
                if interval and "left" in ref_m:
                    fields["left"] = (val.left, ref_m["left"][i - 1])
                    fields["right"] = (val.right, ref_m["right"][i - 1])
            matches = ""
            if fields:
                matches = "yes" if all(_close(g, w, tol) for g, w in fields.values()) else "no"
            flagged = any((i, method, f) in outliers for f in ("left", "right", "value"))
            rows.append((
                str(i), method, left, right, _fr(value),
                FLAG_BAD if flagged else FLAG_OK,
                matches,
                ref_block.get("note", "") if flagged else "",
            ))
    return Section(
        name="defuzzified",
        columns=("component", "method", "left", "right", "defuzzified",
                 "flag", "matches_reference", "note"),
        rows=tuple(rows),
    )


def payoff_section(pt: PayoffTable, reference: dict | None = None) -> Section:
    """The three anchor optima with reference comparison of the two published ones."""
    ref_ind = (reference or {}).get("individual", {})
    tol = _tol_pipeline(reference)
    rows = []
    for label, sol, ref_field, ref_tol in (
        ("reliability-max", pt.reliability_opt, "reliability_max", tol["reliability"]),
        ("cost-min", pt.cost_opt, "cost_min", tol["cost"]),
        ("cost-worst", pt.cost_worst_opt, "", 0.0),
    ):
        matches = ""
        note = ""
        if ref_field and ref_field in ref_ind:
            got = sol.evaluation.reliability if ref_field == "reliability_max" else sol.evaluation.cost
            matches = "yes" if _close(got, ref_ind[ref_field], ref_tol) else "no"
            note = ref_ind.get("note", "")
        ev = sol.evaluation
        rows.append((
            label, _fd(sol.design), _fr(ev.reliability), _fc(ev.cost),
            _fvw(ev.volume), _fvw(ev.weight), FLAG_OK, matches, note,
        ))
    return Section(
        name="payoff",
        columns=("anchor", "design", "reliability", "cost", "volume", "weight",
                 "flag", "matches_reference", "note"),
        rows=tuple(rows),
    )


def _tol_pipeline(reference: dict | None) -> dict:
    # pipeline blocks inherit the case-study tolerances stored one level up;
    # callers pass {"__tolerances__": ...} merged in, or we fall back
    tol = dict(DEFAULT_TOLERANCES)
    if reference:
        tol.update(reference.get("__tolerances__", {}))
    return tol


def attach_tolerances(pipeline_ref: dict | None, case_ref: dict | None) -> dict | None:
    """Copy the case-level tolerances into a pipeline reference block."""
    if pipeline_ref is None:
        return None
    out = dict(pipeline_ref)
    if case_ref and "tolerances" in case_ref:
        out["__tolerances__"] = case_ref["tolerances"]
    return out


def _reference_flag(inst: ProblemInstance, ref_row: dict, tol: dict) -> str:
    """Re-evaluate the reference design against its printed objectives."""
    design = ref_row.get("design")
    if design is None:
        return ""
    if any(c is None for c in design):
        return FLAG_BAD  # incomplete print; note carries the recovered design
    ev = evaluate(inst, design)
    if not ev.feasible:
        return FLAG_BAD
    ok = _close(ev.reliability, ref_row["reliability"], tol["reliability"]) and _close(
        ev.cost, ref_row["cost"], tol["cost"]
    )
    return FLAG_OK if ok else FLAG_BAD


def methods_section(
    results,
    inst: ProblemInstance,
    payoff: PayoffTable,
    reference: dict | None = None,
) -> Section:
    """Compromise rows, Table-4 shaped.

    results is an ordered list of (label, params, solution, ref_key); the
    ref_key selects the matching row of the reference pipeline block, if
    any.
    """
    ref_methods = (reference or {}).get("methods", {})
    tol = _tol_pipeline(reference)
    rows = []
    for label, params, sol, ref_key in results:
        ev = sol.evaluation
        fresh = evaluate(inst, sol.design)
        self_ok = fresh == ev
        conv_range = convergence_metric(ev.reliability, ev.cost, payoff, "range")
        conv_ideal = convergence_metric(ev.reliability, ev.cost, payoff, "ideal")
        ref_row = ref_methods.get(ref_key) if ref_key else None
        if ref_row:
            ref_design = _fd(ref_row["design"]) if ref_row.get("design") else ""
            ref_rel = _fr(ref_row["reliability"])
            ref_cost = _fc(ref_row["cost"])
            ref_flag = _reference_flag(inst, ref_row, tol)
            matches = "yes" if (
                _close(ev.reliability, ref_row["reliability"], tol["reliability"])
                and _close(ev.cost, ref_row["cost"], tol["cost"])
            ) else "no"
            note = ref_row.get("note", "")
        else:
            ref_design = ref_rel = ref_cost = ref_flag = matches = note = ""
        rows.append((
            label, params, _fd(sol.design), _fr(ev.reliability), _fc(ev.cost),
            _fr(sol.score), _fr(conv_range), _fr(conv_ideal), str(sol.ties),
            FLAG_OK if self_ok else FLAG_BAD,
            ref_design, ref_rel, ref_cost, ref_flag, matches, note,
        ))
    return Section(
        name="methods",
        columns=("method", "parameters", "design", "reliability", "cost", "score",
                 "convergence_range", "convergence_ideal", "ties", "flag",
                 "reference_design", "reference_reliability", "reference_cost",
                 "reference_flag", "matches_reference", "note"),
        rows=tuple(rows),
    )


def calibration_section(payoff: PayoffTable, reference: dict | None) -> Section | None:
    """Both convergence conventions evaluated at the reference solution rows.

    Emitted only when the reference pipeline records published distances.
    Shows which normalization convention reproduces them.
    """
    if not reference or "convergence" not in reference:
        return None
    tol = _tol_pipeline(reference)["convergence"]
    rows = []
    for key, want in zip(reference["convergence_order"], reference["convergence"]):
        ref_row = reference["methods"][key]
        got_range = convergence_metric(ref_row["reliability"], ref_row["cost"], payoff, "range")
        got_ideal = convergence_metric(ref_row["reliability"], ref_row["cost"], payoff, "ideal")
        rows.append((
            key, _fr(ref_row["reliability"]), _fc(ref_row["cost"]), _fr(want),
            _fr(got_range), _fr(got_ideal),
            "yes" if _close(got_range, want, tol) else "no",
            "yes" if _close(got_ideal, want, tol) else "no",
        ))
    return Section(
        name="convergence-calibration",
        columns=("method", "reference_reliability", "reference_cost", "reference_distance",
                 "computed_range", "computed_ideal", "range_matches", "ideal_matches"),
        rows=tuple(rows),
    )


def front_sections(front: ParetoFront, inst: ProblemInstance, payoff: PayoffTable) -> list:
    """The exact front plus the weighted-sum sweep with membership flags."""
    front_pairs = {(p.evaluation.reliability, p.evaluation.cost) for p in front}
    rows = []
    for rank, p in enumerate(front, start=1):
        ev = p.evaluation
        rows.append((
            str(rank), _fd(p.design), _fr(ev.reliability), _fc(ev.cost),
            _fvw(ev.volume), _fvw(ev.weight),
        ))
    front_sec = Section(
        name="front",
        columns=("rank", "design", "reliability", "cost", "volume", "weight"),
        rows=tuple(rows),
    )

    sweep_rows = []
    for k in range(1, 20):
        w1 = round(0.05 * k, 2)
        weights = (w1, round(1.0 - w1, 2))
        sol = optimize_scalarized(inst, make_scalarization("weighted", payoff, weights=weights))
        ev = sol.evaluation
        on_front = (ev.reliability, ev.cost) in front_pairs
        sweep_rows.append((
            f"{weights[0]:.2f}", f"{weights[1]:.2f}", _fd(sol.design),
            _fr(ev.reliability), _fc(ev.cost), "yes" if on_front else "no",
        ))
    sweep_sec = Section(
        name="weighted-sum-sweep",
        columns=("w1", "w2", "design", "reliability", "cost", "on_front"),
        rows=tuple(sweep_rows),
    )
    return [front_sec, sweep_sec]


def compare_section(rows) -> Section:
    """Side-by-side type-1 vs interval type-2 rows, Table-8 shaped.

    rows is an ordered list of dicts with keys: label, t1 (solution or
    None), it2 (solution or None), t1_ref, it2_ref (reference rows or
    None), tol (tolerance dict).
    """
    out = []
    for row in rows:
        cells = [row["label"]]
        for side in ("t1", "it2"):
            sol = row[side]
            ref = row.get(f"{side}_ref")
            if sol is None:
                cells += ["", "", "", "", ""]
                continue
            ev = sol.evaluation
            matches = ""
            note = ""
            if ref:
                # anchor rows carry only one objective, method rows both
                tol = row["tol"]
                checks = []
                if ref.get("reliability") is not None:
                    checks.append(_close(ev.reliability, ref["reliability"], tol["reliability"]))
                if ref.get("cost") is not None:
                    checks.append(_close(ev.cost, ref["cost"], tol["cost"]))
                if checks:
                    matches = "yes" if all(checks) else "no"
                note = ref.get("note", "")
            cells += [_fd(sol.design), _fr(ev.reliability), _fc(ev.cost), matches, note]
        out.append(tuple(cells))
    return Section(
        name="comparison",
        columns=("row",
                 "t1_design", "t1_reliability", "t1_cost", "t1_matches_reference", "t1_note",
                 "it2_design", "it2_reliability", "it2_cost", "it2_matches_reference", "it2_note"),
        rows=tuple(out),
    )
