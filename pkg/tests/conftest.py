"""
The crossing rule for Hom dimensions is checked against the AR-mesh
knitting oracle before anything else runs; every later test builds on it.
"""

import sys

import pytest

from ggk import polygon


def hom_rule_disagreements(n):
    N = n + 3
    diags = polygon.all_diagonals(n)
    return [(a, b) for a in diags for b in diags
            if polygon.hom_dim(N, a, b) != polygon.ar_mesh_hom_dim(n, a, b)]


def pytest_sessionstart(session):
    for n in (2, 3):
        bad = hom_rule_disagreements(n)
        if bad:
            pytest.exit("hom_dim crossing rule disagrees with the AR-mesh oracle for n=%d: %r"
                        % (n, bad[:5]), returncode=3)


@pytest.fixture(scope="session")
def a2():
    from ggk.model import generate
    return generate("a_n", n=2)


@pytest.fixture(scope="session")
def a3():
    from ggk.model import generate
    return generate("a_n", n=3)


@pytest.fixture(scope="session")
def dihedral3():
    from ggk.model import generate
    return generate("dihedral", m=3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
