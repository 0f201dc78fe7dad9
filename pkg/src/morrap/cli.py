"""Command line interface: load a problem file, run pipelines, emit reports.

Subcommands:

* defuzzify: type-reduce the configured fuzzy reliabilities
* payoff:    defuzzify, then compute the anchor optima
* solve:     full pipeline through the compromise methods
* pareto:    exact nondominated front plus the weighted-sum sweep
* compare:   side-by-side type-1 vs interval type-2 pipelines
* gen:       draw fuzzy reliabilities around the configured crisp seeds

Exit codes: 0 success, 2 configuration or parameter error, 3 infeasible
instance, 4 numerical degeneracy.  Grid size resolution: --grid flag, then
the MORRAP_GRID environment variable, then the config file, then 2001.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from .config import PROFILES, ProblemConfig, load_problem, load_reference
from .errors import InfeasibleError, MorrapError, NumericalError, ValidationError
from .fuzzy import format_it2_text
from .generation import GenerationSpec, generate_it2, generate_t1
from .reduction import (
    DEFAULT_GRID,
    GRID_ENV_VAR,
    km_centroid,
    nie_tan,
    geometric_centroid,
    t1_centroid,
    uncertainty_bounds,
)
from .scalarization import (
    DesirabilitySpec,
    NimbusSpec,
    build_payoff,
    solve_scalarized,
)
from .solver import pareto_front
from . import reports

__all__ = ["RunConfig", "run_pipeline", "compare_t1_it2", "emit_pareto", "main"]

REDUCTIONS = ("km", "ub", "nt", "gc", "t1-centroid")
_PIPELINE_KEYS = {"km": "km", "ub": "ub", "nt": "nt", "gc": "gc", "t1-centroid": "t1"}


@dataclass
class RunConfig:
    """Everything one CLI invocation needs; flags map onto these fields."""

    instance_path: str
    reduction: str | None = "km"
    method: str = "all"
    p: float = 2.0
    variant: str = "range"
    weights: tuple = (0.5, 0.5)
    t1_exponent: float | None = None
    t2_exponent: float | None = None
    classification: str | None = None
    rho: float = 1e-4
    grid: int | None = None
    seed: int | None = None
    profile: str | None = None
    fmt: str = "csv"
    out: str | None = None
    workers: int | None = None


@contextmanager
def _stage(name: str):
    """Prefix tool errors with the pipeline stage that raised them."""
    try:
        yield
    except MorrapError as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def _effective_grid(cfg: RunConfig, pc: ProblemConfig) -> int:
    if cfg.grid is not None:
        return int(cfg.grid)
    env = os.environ.get(GRID_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError(f"{GRID_ENV_VAR} must be an integer, got {env!r}") from exc
    if pc.grid is not None:
        return pc.grid
    return DEFAULT_GRID


def _load(cfg: RunConfig):
    with _stage("configuration"):
        pc = load_problem(cfg.instance_path)
        profile = cfg.profile or pc.profile
        if profile not in PROFILES:
            raise ValidationError(f"profile must be one of {sorted(PROFILES)}, got {profile!r}")
        grid = _effective_grid(cfg, pc)
        reference = load_reference(pc.reference) if pc.reference else None
    return pc, reference, grid, profile


def _reduce_all(pc: ProblemConfig, grid: int, only: str | None = None) -> dict:
    """Per-method defuzzification results, insertion-ordered for reporting."""
    out: dict = {}
    wants = (only,) if only else REDUCTIONS
    have_t1 = all(s.t1 is not None for s in pc.subsystems)
    for method in wants:
        if method == "t1-centroid":
            if only is None and not have_t1:
                continue
            out["t1-centroid"] = [t1_centroid(t) for t in pc.t1_numbers()]
            continue
        fns = pc.it2_numbers()
        if method == "km":
            out["km"] = [km_centroid(f, grid) for f in fns]
        elif method == "ub":
            out["ub"] = [uncertainty_bounds(f, grid) for f in fns]
        elif method == "nt":
            out["nt"] = [nie_tan(f, grid) for f in fns]
        elif method == "gc":
            out["gc"] = [geometric_centroid(f) for f in fns]
        else:
            raise ValidationError(f"reduction must be one of {REDUCTIONS}, got {method!r}")
    return out


def _reliabilities(values) -> list:
    return [v.defuzzified if hasattr(v, "defuzzified") else float(v) for v in values]


def _parse_classification(text: str | None, rho: float) -> NimbusSpec:
    """Build a classification spec from 'objective=class[:value],...' syntax.

    Example: "reliability=worsen-to-bound:0.4,cost=improve".
    """
    if text is None:
        return NimbusSpec(rho=rho)
    kwargs = {"rho": rho}
    for part in text.split(","):
        part = part.strip()
        if not part or "=" not in part:
            raise ValidationError(f"bad classification entry {part!r}; use objective=class[:value]")
        name, rest = part.split("=", 1)
        name = name.strip()
        if name not in ("reliability", "cost"):
            raise ValidationError(f"classification objective must be reliability or cost, got {name!r}")
        cls, _, value = rest.partition(":")
        cls = cls.strip()
        kwargs[name] = cls
        if value:
            try:
                level = float(value)
            except ValueError as exc:
                raise ValidationError(f"bad level {value!r} in classification entry {part!r}") from exc
            if cls == "improve-to-aspiration":
                kwargs[f"{name}_aspiration"] = level
            elif cls == "worsen-to-bound":
                kwargs[f"{name}_bound"] = level
            else:
                raise ValidationError(f"class {cls!r} takes no level, got {part!r}")
    return NimbusSpec(**kwargs)


def _desirability_rows(cfg: RunConfig, profile: str) -> list:
    """Desirability parameter sets to run, with their reference keys.

    Explicit --t1/--t2 flags select a single parameter set.  Otherwise the
    reproduce profile runs the two bundled-reference parameter sets and the
    strict profile runs the neutral (1, 1) set.
    """
    canon = {(1.0, 0.1): "desirability_1", (0.5, 0.1): "desirability_05"}
    if cfg.t1_exponent is not None or cfg.t2_exponent is not None:
        pair = (
            1.0 if cfg.t1_exponent is None else float(cfg.t1_exponent),
            1.0 if cfg.t2_exponent is None else float(cfg.t2_exponent),
        )
        return [(pair, canon.get(pair))]
    if profile == "reproduce":
        return [((1.0, 0.1), "desirability_1"), ((0.5, 0.1), "desirability_05")]
    return [((1.0, 1.0), None)]


def _method_plan(cfg: RunConfig, profile: str) -> list:
    """Ordered (label, params, method, kwargs, ref_key) rows to solve."""
    wanted = ("global", "weighted", "desirability", "fuzzy", "nimbus") if cfg.method == "all" else (cfg.method,)
    plan = []
    for token in wanted:
        if token == "global":
            ref = "global" if (cfg.p == 2.0 and cfg.variant == "range") else None
            plan.append((token, f"p={cfg.p:g} variant={cfg.variant}",
                         "global", {"p": cfg.p, "variant": cfg.variant}, ref))
        elif token == "weighted":
            w = (float(cfg.weights[0]), float(cfg.weights[1]))
            ref = "weighted" if w == (0.5, 0.5) else None
            plan.append((token, f"w1={w[0]:g} w2={w[1]:g}", "weighted", {"weights": w}, ref))
        elif token == "desirability":
            for pair, ref in _desirability_rows(cfg, profile):
                spec = DesirabilitySpec(exponents=pair)
                plan.append((token, f"t1={pair[0]:g} t2={pair[1]:g}",
                             "desirability", {"desirability": spec}, ref))
        elif token == "fuzzy":
            plan.append((token, "", "fuzzy", {}, "fuzzy"))
        elif token == "nimbus":
            spec = _parse_classification(cfg.classification, cfg.rho)
            ref = "nimbus" if (cfg.classification is None and cfg.rho == 1e-4) else None
            params = f"reliability={spec.reliability} cost={spec.cost} rho={spec.rho:g}"
            for extra in ("reliability_aspiration", "cost_aspiration",
                          "reliability_bound", "cost_bound"):
                val = getattr(spec, extra)
                if val is not None:
                    params += f" {extra}={val:g}"
            plan.append((token, params, "nimbus", {"nimbus": spec}, ref))
        else:
            raise ValidationError(
                f"method must be global, weighted, desirability, fuzzy, nimbus or all, got {token!r}"
            )
    return plan


def _render(cfg: RunConfig, sections) -> str:
    if cfg.fmt == "json":
        return reports.render_json(sections)
    if cfg.fmt == "csv":
        return reports.render_csv(sections)
    raise ValidationError(f"format must be csv or json, got {cfg.fmt!r}")


def run_pipeline(cfg: RunConfig, through: str = "methods") -> str:
    """Run defuzzification, payoff and compromise stages; return the report.

    through selects how far to go: "defuzzified", "payoff" or "methods".
    """
    if through not in ("defuzzified", "payoff", "methods"):
        raise ValidationError(f"through must be defuzzified, payoff or methods, got {through!r}")
    pc, reference, grid, profile = _load(cfg)
    sections = []

    if through != "defuzzified" and cfg.reduction is None:
        raise ValidationError("a reduction method is required beyond the defuzzified stage")
    with _stage("defuzzification"):
        per_method = _reduce_all(pc, grid, only=cfg.reduction)
        sections.append(reports.defuzzified_section(per_method, reference))
    if through == "defuzzified":
        return _render(cfg, sections)

    pipe_key = _PIPELINE_KEYS[cfg.reduction]
    pipeline_ref = reports.attach_tolerances(
        (reference or {}).get("pipelines", {}).get(pipe_key), reference
    )
    with _stage("payoff"):
        inst = pc.instance(_reliabilities(per_method[cfg.reduction]), profile)
        payoff = build_payoff(inst, cfg.workers)
        sections.append(reports.payoff_section(payoff, pipeline_ref))
    if through == "payoff":
        return _render(cfg, sections)

    with _stage("optimization"):
        results = []
        for label, params, method, kwargs, ref_key in _method_plan(cfg, profile):
            sol = solve_scalarized(inst, method, payoff, workers=cfg.workers, **kwargs)
            results.append((label, params, sol, ref_key))
        sections.append(reports.methods_section(results, inst, payoff, pipeline_ref))
        calib = reports.calibration_section(payoff, pipeline_ref)
        if calib is not None:
            sections.append(calib)
    return _render(cfg, sections)


def compare_t1_it2(cfg: RunConfig) -> str:
    """Run the pipeline under type-1 and interval type-2 inputs side by side.

    The type-1 lane defuzzifies with the triangle centroid; the interval
    type-2 lane type-reduces with the switch-point procedure.
    """
    pc, reference, grid, profile = _load(cfg)
    with _stage("defuzzification"):
        per_method = _reduce_all(pc, grid, only=None)
        if "t1-centroid" not in per_method:
            per_method["t1-centroid"] = [t1_centroid(t) for t in pc.t1_numbers()]
    tol = reports.DEFAULT_TOLERANCES
    if reference:
        tol = {**tol, **reference.get("tolerances", {})}
    pipelines_ref = (reference or {}).get("pipelines", {})
    lanes = {}
    with _stage("payoff"):
        for lane, reduction, key in (("t1", "t1-centroid", "t1"), ("it2", "km", "km")):
            inst = pc.instance(_reliabilities(per_method[reduction]), profile)
            lanes[lane] = {
                "inst": inst,
                "payoff": build_payoff(inst, cfg.workers),
                "ref": pipelines_ref.get(key, {}),
            }
    rows = []
    for label, anchor, ref_field in (
        ("individual-reliability-max", "reliability_opt", "reliability_max"),
        ("individual-cost-min", "cost_opt", "cost_min"),
    ):
        row = {"label": label, "tol": tol}
        for lane in ("t1", "it2"):
            row[lane] = getattr(lanes[lane]["payoff"], anchor)
            ind = lanes[lane]["ref"].get("individual", {})
            ref = None
            if ref_field in ind:
                side = "reliability" if ref_field == "reliability_max" else "cost"
                ref = {side: ind[ref_field], "note": ind.get("note", "")}
            row[f"{lane}_ref"] = ref
        rows.append(row)
    with _stage("optimization"):
        for label, params, method, kwargs, ref_key in _method_plan(cfg, profile):
            row = {"label": f"{label} {params}".strip(), "tol": tol}
            for lane in ("t1", "it2"):
                sol = solve_scalarized(
                    lanes[lane]["inst"], method, lanes[lane]["payoff"],
                    workers=cfg.workers, **kwargs,
                )
                row[lane] = sol
                ref_row = lanes[lane]["ref"].get("methods", {}).get(ref_key) if ref_key else None
                row[f"{lane}_ref"] = ref_row
            rows.append(row)
    sections = [
        reports.defuzzified_section(
            {k: per_method[k] for k in ("t1-centroid", "km") if k in per_method}, reference
        ),
        reports.compare_section(rows),
    ]
    return _render(cfg, sections)


def emit_pareto(cfg: RunConfig) -> str:
    """Exact nondominated front plus the weighted-sum sweep, as a report."""
    pc, reference, grid, profile = _load(cfg)
    with _stage("defuzzification"):
        per_method = _reduce_all(pc, grid, only=cfg.reduction)
    with _stage("payoff"):
        inst = pc.instance(_reliabilities(per_method[cfg.reduction]), profile)
        payoff = build_payoff(inst, cfg.workers)
    with _stage("optimization"):
        front = pareto_front(inst, cfg.workers)
        sections = reports.front_sections(front, inst, payoff)
    return _render(cfg, sections)


def _generate(cfg: RunConfig) -> str:
    """Draw type-1 and interval type-2 numbers around the crisp seeds."""
    pc, _reference, _grid, _profile = _load(cfg)
    with _stage("generation"):
        spec = GenerationSpec(
            r_values=tuple(pc.crisp_seeds()),
            a=pc.support[0],
            b=pc.support[1],
            seed=cfg.seed,
        )
        t1s = generate_t1(spec)
        it2s = generate_it2(spec)
    rows = []
    for i, (r, t1, it2) in enumerate(zip(spec.r_values, t1s, it2s), start=1):
        t1_text = "(" + ",".join(f"{v:.6f}" for v in t1.as_tuple()) + ")"
        rows.append((str(i), f"{r:g}", t1_text, format_it2_text(it2)))
    section = reports.Section(
        name="generated",
        columns=("component", "r", "t1", "it2"),
        rows=tuple(rows),
    )
    return _render(cfg, [section])


# --- argument parsing ---------------------------------------------------------

def _add_common(sub, *, reduction_default="km", reduction_all=False):
    sub.add_argument("config", help="problem configuration file (.toml or .json)")
    if reduction_all:
        sub.add_argument("--reduction", choices=REDUCTIONS, default=None,
                         help="reduction method (default: all available)")
    else:
        sub.add_argument("--reduction", choices=REDUCTIONS, default=reduction_default,
                         help=f"reduction method (default: {reduction_default})")
    sub.add_argument("--grid", type=int, default=None, help="discretization grid size")
    sub.add_argument("--profile", choices=sorted(PROFILES), default=None,
                     help="redundancy-cap profile (default: from the config file)")
    sub.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="write the report to this path")


def _add_method_params(sub):
    sub.add_argument("--p", type=float, default=2.0, help="global-criterion exponent")
    sub.add_argument("--variant", choices=("range", "ideal"), default="range",
                     help="global-criterion normalization")
    sub.add_argument("--weights", type=float, nargs=2, default=(0.5, 0.5),
                     metavar=("W1", "W2"), help="weighted-sum weights")
    sub.add_argument("--t1", dest="t1_exponent", type=float, default=None,
                     help="desirability exponent for reliability")
    sub.add_argument("--t2", dest="t2_exponent", type=float, default=None,
                     help="desirability exponent for cost")
    sub.add_argument("--classification", default=None,
                     help="objective classes, e.g. reliability=free,cost=improve")
    sub.add_argument("--rho", type=float, default=1e-4,
                     help="classification augmentation coefficient")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morrap",
        description="Redundancy allocation under fuzzy component reliabilities.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("defuzzify", help="type-reduce the configured fuzzy reliabilities")
    _add_common(p, reduction_all=True)

    p = commands.add_parser("payoff", help="defuzzify and compute the anchor optima")
    _add_common(p)

    p = commands.add_parser("solve", help="full pipeline through the compromise methods")
    _add_common(p)
    p.add_argument("--method", choices=("global", "weighted", "desirability", "fuzzy",
                                        "nimbus", "all"), default="all")
    _add_method_params(p)

    p = commands.add_parser("pareto", help="exact nondominated front plus weighted-sum sweep")
    _add_common(p)

    p = commands.add_parser("compare", help="type-1 vs interval type-2 side by side")
    _add_common(p)
    _add_method_params(p)

    p = commands.add_parser("gen", help="draw fuzzy numbers around the crisp seeds")
    _add_common(p)
    p.add_argument("--seed", type=int, default=None, help="random seed")

    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(instance_path=args.config)
    for name in ("reduction", "method", "p", "variant", "t1_exponent", "t2_exponent",
                 "classification", "rho", "grid", "seed", "profile", "fmt", "out"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "weights"):
        cfg.weights = tuple(args.weights)
    return cfg


_COMMANDS = {
    "defuzzify": lambda cfg: run_pipeline(cfg, through="defuzzified"),
    "payoff": lambda cfg: run_pipeline(cfg, through="payoff"),
    "solve": run_pipeline,
    "pareto": emit_pareto,
    "compare": compare_t1_it2,
    "gen": _generate,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    try:
        text = _COMMANDS[args.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
