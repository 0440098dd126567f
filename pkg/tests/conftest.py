import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from casimir_film import materials  # noqa: E402

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")


@pytest.fixture(scope="session")
def si():
    """Silicon substrate pinned to the package defaults used throughout the tests."""
    return materials.LorentzOscillator(eps_static=11.87, omega_res=0.66)


@pytest.fixture(scope="session")
def bulk_au():
    return materials.bulk_gold()


@pytest.fixture(params=[20.0, 15.0, 10.0, 6.4, 4.0], ids=lambda d: f"d{d:g}nm")
def film(request):
    return materials.film_record(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
