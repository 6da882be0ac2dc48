import pytest

import oracles
from krdecomp.tmonoid import StateSet, generate


@pytest.fixture(scope="session")
def small_factors():
    """Every transformation monoid on <= 3 states with <= 4 elements, up to relabelling."""
    return [generate(StateSet.range(n), [e for e in elems if e != tuple(range(n))])
            for n, elems in oracles.small_monoid_classes()]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
