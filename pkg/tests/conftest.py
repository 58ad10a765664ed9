import pytest
from hypothesis import HealthCheck, settings

from ughost.districts import enumerate_maps, load_bundled, make_language

settings.register_profile(
    "ci",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def six_county():
    graph, constraints = load_bundled("six_county")
    maps = enumerate_maps(graph, constraints)
    return graph, constraints, maps


@pytest.fixture(scope="session")
def six_county_language(six_county):
    graph, constraints, maps = six_county
    return make_language(maps, graph.atoms, constraints.k, first_party="A")


@pytest.fixture(scope="session")
def decomino():
    graph, constraints = load_bundled("decomino")
    maps = enumerate_maps(graph, constraints)
    return graph, constraints, maps


@pytest.fixture(scope="session")
def nh():
    graph, constraints = load_bundled("nh_counties")
    maps = enumerate_maps(graph, constraints)
    return graph, constraints, maps
