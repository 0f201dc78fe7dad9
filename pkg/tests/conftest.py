import pytest

from morrap.config import bundled_path, load_problem, load_reference
from morrap.reduction import km_centroid
from morrap.scalarization import DesirabilitySpec, build_payoff, solve_scalarized


@pytest.fixture(scope="session")
def pharma():
    return load_problem(str(bundled_path()))


@pytest.fixture(scope="session")
def reference():
    ref = load_reference("pharma-plant")
    assert ref is not None
    return ref


@pytest.fixture(scope="session")
def km_reliabilities(pharma):
    grid = pharma.grid or 41
    return [km_centroid(f, grid).defuzzified for f in pharma.it2_numbers()]


@pytest.fixture(scope="session")
def km_instance(pharma, km_reliabilities):
    return pharma.instance(km_reliabilities, "reproduce")


@pytest.fixture(scope="session")
def km_instance_strict(pharma, km_reliabilities):
    return pharma.instance(km_reliabilities, "strict")


@pytest.fixture(scope="session")
def km_payoff(km_instance):
    return build_payoff(km_instance)


@pytest.fixture(scope="session")
def km_solutions(km_instance, km_payoff):
    """The six canonical compromise solutions, solved once per session."""
    out = {}
    out["global"] = solve_scalarized(km_instance, "global", km_payoff)
    out["weighted"] = solve_scalarized(km_instance, "weighted", km_payoff)
    out["desirability_1"] = solve_scalarized(
        km_instance, "desirability", km_payoff,
        desirability=DesirabilitySpec(exponents=(1.0, 0.1)),
    )
    out["desirability_05"] = solve_scalarized(
        km_instance, "desirability", km_payoff,
        desirability=DesirabilitySpec(exponents=(0.5, 0.1)),
    )
    out["fuzzy"] = solve_scalarized(km_instance, "fuzzy", km_payoff)
    out["nimbus"] = solve_scalarized(
        km_instance, "nimbus", km_payoff, current=out["weighted"]
    )
    return out
