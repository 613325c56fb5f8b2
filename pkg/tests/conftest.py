import pytest
from hypothesis import HealthCheck, settings

from detour.bundled import BUNDLED, FOURBAR
from detour.dsl import parse_construction
from detour.tracer import TraceConfig, trace

# every property runs 1000 derandomized cases so failures reproduce exactly
settings.register_profile(
    "thorough",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("thorough")

EXAMPLES = dict(BUNDLED, **{"fourbar.cons": FOURBAR})


@pytest.fixture(scope="session")
def constructions():
    return {name: parse_construction(text) for name, text in EXAMPLES.items()}


@pytest.fixture(scope="session")
def traced(constructions):
    """Default-config Variant A traces, computed once per session."""
    cache = {}

    def get(name, **kw):
        key = (name, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = trace(constructions[name], 0.0, TraceConfig(**kw))
        return cache[key]

    return get


def pytest_configure(config):
    config.addinivalue_line("markers", "property: randomized hypothesis property test")


def pytest_collection_modifyitems(items):
    for item in items:
        if getattr(getattr(item, "obj", None), "is_hypothesis_test", False):
            item.add_marker(pytest.mark.property)
