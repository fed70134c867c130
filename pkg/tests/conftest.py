import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hyg.constructors import examples_registry
from hyg.spectral import dual

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REGISTRY = examples_registry()
NAMES = [H.name for H in REGISTRY]


@pytest.fixture(scope="session")
def registry():
    return {H.name: H for H in REGISTRY}


@pytest.fixture(scope="session")
def duals(registry):
    return {name: dual(H) for name, H in registry.items()}


@pytest.fixture(params=NAMES)
def member(request, registry, duals):
    return registry[request.param], duals[request.param]


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one PASS/FAIL line per acceptance criterion, shown after the run
_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome == "failed":
        name = report.nodeid.split("::")[-1]
        if report.outcome == "failed" or name not in _ACCEPTANCE:
            _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        number, label = name.split("_")[2], " ".join(name.split("_")[3:])
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {label}")
