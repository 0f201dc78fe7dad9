import json

import pytest

from morrap.config import (
    ALPHA_SCALE,
    PROFILES,
    bundled_path,
    load_problem,
    load_reference,
)
from morrap.errors import ValidationError
from morrap.fuzzy import format_it2_text

MINIMAL = {
    "name": "toy",
    "V": 100.0,
    "W": 150.0,
    "support": [0.5, 0.999999],
    "subsystems": [
        {"alpha_scaled_1e5": 2.0, "beta": 1.5, "v": 4, "w": 9, "r": 0.8,
         "it2": [[0.6, 0.8, 0.95], [0.7, 0.8, 0.9]],
         "t1": [0.65, 0.8, 0.92]},
        {"alpha_scaled_1e5": 3.0, "beta": 1.5, "v": 5, "w": 7, "r": 0.85,
         "it2": [[0.65, 0.85, 0.97], [0.75, 0.85, 0.92]]},
    ],
}


def write_json(tmp_path, raw, name="toy.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw), encoding="utf-8")
    return path


class TestBundled:
    def test_plant_loads(self):
        pc = load_problem(str(bundled_path()))
        assert pc.name == "pharma-plant"
        assert len(pc.subsystems) == 10
        assert pc.volume_limit == 289.0
        assert pc.weight_limit == 483.0
        assert pc.mission_time == 1000.0
        assert pc.grid == 41
        assert pc.profile == "reproduce"
        assert pc.reference == "pharma-plant"

    def test_alpha_unscaling(self):
        pc = load_problem(str(bundled_path()))
        assert pc.subsystems[0].alpha == pytest.approx(0.611360 * ALPHA_SCALE, rel=1e-12)
        assert pc.subsystems[1].alpha == pytest.approx(4.032464 * ALPHA_SCALE, rel=1e-12)

    def test_every_subsystem_carries_both_fuzzy_forms(self):
        pc = load_problem(str(bundled_path()))
        assert len(pc.it2_numbers()) == 10
        assert len(pc.t1_numbers()) == 10
        assert pc.crisp_seeds() == [0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.92, 0.95]

    def test_unknown_bundle_name(self):
        with pytest.raises(ValidationError):
            bundled_path("unknown_case")

    def test_reference_tables(self):
        ref = load_reference("pharma-plant")
        assert ref is not None
        assert set(ref["pipelines"]) == {"km", "ub", "nt", "gc", "t1"}
        assert load_reference("missing-case") is None


class TestLoading:
    def test_json_round_trip(self, tmp_path):
        pc = load_problem(write_json(tmp_path, MINIMAL))
        assert pc.name == "toy"
        assert pc.subsystems[0].alpha == pytest.approx(2.0 * ALPHA_SCALE)
        assert pc.subsystems[0].it2.mode == 0.8
        assert pc.profile == "strict"  # default for non-bundled configs
        assert pc.mission_time == 1000.0  # default horizon
        assert pc.grid is None

    def test_it2_textual_form(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        original = load_problem(write_json(tmp_path, MINIMAL)).subsystems[0].it2
        raw["subsystems"][0]["it2"] = format_it2_text(original, decimals=9)
        pc = load_problem(write_json(tmp_path, raw, "text.json"))
        assert pc.subsystems[0].it2.upper.left == pytest.approx(original.upper.left, abs=1e-8)

    def test_missing_limits_rejected(self, tmp_path):
        for field in ("V", "W"):
            raw = json.loads(json.dumps(MINIMAL))
            del raw[field]
            with pytest.raises(ValidationError, match=field):
                load_problem(write_json(tmp_path, raw, f"no_{field}.json"))

    def test_unknown_fields_rejected(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        raw["volume"] = 100.0
        with pytest.raises(ValidationError, match="unknown"):
            load_problem(write_json(tmp_path, raw, "extra.json"))
        raw = json.loads(json.dumps(MINIMAL))
        raw["subsystems"][0]["gamma"] = 1.0
        with pytest.raises(ValidationError, match="unknown"):
            load_problem(write_json(tmp_path, raw, "extra_sub.json"))

    def test_missing_subsystem_cost_field(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        del raw["subsystems"][0]["alpha_scaled_1e5"]
        with pytest.raises(ValidationError, match="alpha_scaled_1e5"):
            load_problem(write_json(tmp_path, raw, "no_alpha.json"))

    def test_bad_extension_and_missing_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("V: 1", encoding="utf-8")
        with pytest.raises(ValidationError):
            load_problem(path)
        with pytest.raises(ValidationError):
            load_problem(tmp_path / "nope.toml")

    def test_malformed_toml(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("V = [unclosed", encoding="utf-8")
        with pytest.raises(ValidationError):
            load_problem(path)

    def test_bad_support(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        raw["support"] = [0.9, 0.5]
        with pytest.raises(ValidationError, match="support"):
            load_problem(write_json(tmp_path, raw, "bad_support.json"))


class TestInstanceBuilding:
    def test_profile_caps(self, tmp_path):
        pc = load_problem(write_json(tmp_path, MINIMAL))
        assert pc.caps("strict") == (PROFILES["strict"],) * 2
        assert pc.caps("reproduce") == (PROFILES["reproduce"],) * 2

    def test_per_subsystem_cap_override(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        raw["subsystems"][0]["n_max"] = 2
        pc = load_problem(write_json(tmp_path, raw, "cap.json"))
        assert pc.caps("reproduce") == (2, PROFILES["reproduce"])

    def test_instance_applies_support_window(self, tmp_path):
        pc = load_problem(write_json(tmp_path, MINIMAL))
        inst = pc.instance([0.8, 0.85], "strict")
        assert inst.n_subsystems == 2
        assert inst.design_space_size == PROFILES["strict"] ** 2
        with pytest.raises(ValidationError):
            pc.instance([0.2, 0.85], "strict")  # below the support window

    def test_t1_numbers_missing(self, tmp_path):
        pc = load_problem(write_json(tmp_path, MINIMAL))
        with pytest.raises(ValidationError, match="gen"):
            pc.t1_numbers()

    def test_crisp_seeds_missing(self, tmp_path):
        raw = json.loads(json.dumps(MINIMAL))
        del raw["subsystems"][1]["r"]
        pc = load_problem(write_json(tmp_path, raw, "no_seed.json"))
        with pytest.raises(ValidationError):
            pc.crisp_seeds()
