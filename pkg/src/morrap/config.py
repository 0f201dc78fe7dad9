"""Problem configuration files (TOML or JSON) and bundled data.

A configuration holds the crisp model data (cost/volume/weight parameters,
resource limits, mission time) plus, per subsystem, any of: a crisp
reliability seed, a type-1 triangle, an interval type-2 number.  Top-level
fields:

* V, W: volume and weight limits (required)
* T: mission time, default 1000
* name, grid, profile, support, reference: optional
* subsystems: array of tables, each with alpha_scaled_1e5, beta, v, w
  (required) and r, t1, it2, n_max (optional)

alpha is stored premultiplied by 1e5 so data tables transcribe digit for
digit; the scaling is undone at load.  The redundancy cap of a subsystem
comes from its own n_max if given, else from the profile: "strict" caps at
3, "reproduce" at 5.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from .errors import ValidationError
from .fuzzy import IntervalType2Number, TriangularNumber, parse_it2_text
from .model import ProblemInstance, SubsystemParams

__all__ = [
    "PROFILES",
    "ALPHA_SCALE",
    "SubsystemConfig",
    "ProblemConfig",
    "load_problem",
    "bundled_path",
    "load_reference",
]

PROFILES = {"strict": 3, "reproduce": 5}
ALPHA_SCALE = 1e-5
DEFAULT_SUPPORT = (1e-9, 1.0 - 1e-9)


@dataclass(frozen=True)
class SubsystemConfig:
    alpha: float
    beta: float
    v: float
    w: float
    r: float | None = None
    t1: TriangularNumber | None = None
    it2: IntervalType2Number | None = None
    n_max: int | None = None


@dataclass(frozen=True)
class ProblemConfig:
    name: str
    volume_limit: float
    weight_limit: float
    mission_time: float
    subsystems: tuple
    grid: int | None = None
    support: tuple = DEFAULT_SUPPORT
    profile: str = "strict"
    reference: str | None = None

    def caps(self, profile: str | None = None) -> tuple:
        """Redundancy caps per subsystem under the given (or configured) profile."""
        prof = profile or self.profile
        if prof not in PROFILES:
            raise ValidationError(f"profile must be one of {sorted(PROFILES)}, got {prof!r}")
        default_cap = PROFILES[prof]
        return tuple(s.n_max if s.n_max is not None else default_cap for s in self.subsystems)

    def it2_numbers(self) -> list:
        missing = [i for i, s in enumerate(self.subsystems, start=1) if s.it2 is None]
        if missing:
            raise ValidationError(
                f"subsystems {missing} have no interval type-2 reliability; "
                "add it2 entries or generate them with the gen command"
            )
        return [s.it2 for s in self.subsystems]

    def t1_numbers(self) -> list:
        missing = [i for i, s in enumerate(self.subsystems, start=1) if s.t1 is None]
        if missing:
            raise ValidationError(
                f"subsystems {missing} have no type-1 reliability; "
                "add t1 entries or generate them with the gen command"
            )
        return [s.t1 for s in self.subsystems]

    def crisp_seeds(self) -> list:
        missing = [i for i, s in enumerate(self.subsystems, start=1) if s.r is None]
        if missing:
            raise ValidationError(f"subsystems {missing} have no crisp reliability seed r")
        return [s.r for s in self.subsystems]

    def instance(self, reliabilities, profile: str | None = None) -> ProblemInstance:
        """Problem instance with the given component reliabilities."""
        caps = self.caps(profile)
        lo, hi = self.support
        subsystems = tuple(
            SubsystemParams(
                alpha=s.alpha, beta=s.beta, v=s.v, w=s.w,
                n_max=cap, r_min=lo, r_max=hi,
            )
            for s, cap in zip(self.subsystems, caps)
        )
        return ProblemInstance(
            subsystems=subsystems,
            reliabilities=tuple(reliabilities),
            volume_limit=self.volume_limit,
            weight_limit=self.weight_limit,
            mission_time=self.mission_time,
            name=self.name,
        )


def _require(raw: dict, key: str, where: str):
    if key not in raw:
        raise ValidationError(f"{where} is missing the required field {key!r}")
    return raw[key]


def _parse_triple(value, where: str) -> TriangularNumber:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ValidationError(f"{where} must be a list of three numbers, got {value!r}")
    return TriangularNumber(*[float(x) for x in value])


def _parse_it2(value, where: str) -> IntervalType2Number:
    if isinstance(value, str):
        return parse_it2_text(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return IntervalType2Number(
            upper=_parse_triple(value[0], f"{where} upper"),
            lower=_parse_triple(value[1], f"{where} lower"),
        )
    raise ValidationError(
        f"{where} must be [[upper triple], [lower triple]] or a ((a,m,b),(c,m,d)) string, got {value!r}"
    )


def _parse_subsystem(raw: dict, index: int) -> SubsystemConfig:
    where = f"subsystem {index}"
    if not isinstance(raw, dict):
        raise ValidationError(f"{where} must be a table, got {raw!r}")
    alpha = float(_require(raw, "alpha_scaled_1e5", where)) * ALPHA_SCALE
    beta = float(_require(raw, "beta", where))
    v = float(_require(raw, "v", where))
    w = float(_require(raw, "w", where))
    r = raw.get("r")
    t1 = raw.get("t1")
    it2 = raw.get("it2")
    n_max = raw.get("n_max")
    known = {"alpha_scaled_1e5", "beta", "v", "w", "r", "t1", "it2", "n_max"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValidationError(f"{where} has unknown fields {unknown}")
    return SubsystemConfig(
        alpha=alpha,
        beta=beta,
        v=v,
        w=w,
        r=None if r is None else float(r),
        t1=None if t1 is None else _parse_triple(t1, f"{where} t1"),
        it2=None if it2 is None else _parse_it2(it2, f"{where} it2"),
        n_max=None if n_max is None else int(n_max),
    )


def _build_config(raw: dict, default_name: str) -> ProblemConfig:
    if not isinstance(raw, dict):
        raise ValidationError("the configuration root must be a table")
    subs_raw = _require(raw, "subsystems", "the configuration")
    if not isinstance(subs_raw, list) or not subs_raw:
        raise ValidationError("subsystems must be a nonempty array of tables")
    support_raw = raw.get("support", list(DEFAULT_SUPPORT))
    if not isinstance(support_raw, (list, tuple)) or len(support_raw) != 2:
        raise ValidationError(f"support must be [low, high], got {support_raw!r}")
    support = (float(support_raw[0]), float(support_raw[1]))
    if not (0.0 < support[0] < support[1] < 1.0):
        raise ValidationError(f"support must satisfy 0 < low < high < 1, got {support}")
    profile = raw.get("profile", "strict")
    if profile not in PROFILES:
        raise ValidationError(f"profile must be one of {sorted(PROFILES)}, got {profile!r}")
    grid = raw.get("grid")
    known = {"name", "V", "W", "T", "grid", "support", "profile", "reference", "subsystems"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValidationError(f"the configuration has unknown fields {unknown}")
    return ProblemConfig(
        name=str(raw.get("name", default_name)),
        volume_limit=float(_require(raw, "V", "the configuration")),
        weight_limit=float(_require(raw, "W", "the configuration")),
        mission_time=float(raw.get("T", 1000.0)),
        subsystems=tuple(_parse_subsystem(s, i) for i, s in enumerate(subs_raw, start=1)),
        grid=None if grid is None else int(grid),
        support=support,
        profile=profile,
        reference=raw.get("reference"),
    )


def load_problem(path) -> ProblemConfig:
    """Load a problem configuration from a .toml or .json file."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"configuration file {path} does not exist")
    suffix = path.suffix.lower()
    try:
        if suffix == ".toml":
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        elif suffix == ".json":
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        else:
            raise ValidationError(f"configuration must be a .toml or .json file, got {path.name}")
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot parse {path}: {exc}") from exc
    return _build_config(raw, default_name=path.stem)


def bundled_path(name: str = "pharma_plant") -> Path:
    """Filesystem path of a bundled configuration."""
    resource = files("morrap").joinpath(f"data/{name}.toml")
    path = Path(str(resource))
    if not path.exists():
        raise ValidationError(f"no bundled configuration named {name!r}")
    return path


def load_reference(name: str) -> dict | None:
    """Reference-value tables for a named case study, or None if unknown."""
    resource = files("morrap").joinpath("data/reference_tables.json")
    tables = json.loads(resource.read_text(encoding="utf-8"))
    return tables.get(name)
