import sys

import pytest

from hgrsim import fixtures as F
from hgrsim.protocols import Views
from hgrsim.topology import build_graph, derive_seed, generate_deployment, is_connected
from hgrsim.vcs import AnchorSet, assign_coordinates, select_anchors


def random_connected(n, seed, field=(200.0, 200.0), radio_range=45.0):
    """Small connected unit-disk deployment; walks sub-seeds until connected."""
    for retry in range(1000):
        d = generate_deployment(n, field, radio_range, derive_seed(seed, retry))
        g = build_graph(d)
        if is_connected(g):
            return d, g
    raise RuntimeError("could not draw a connected deployment")


def views_for(d, g, anchors=None, k=4, strategy="corners"):
    if anchors is None:
        anchors = select_anchors(g, d, k, strategy)
    elif not isinstance(anchors, AnchorSet):
        anchors = AnchorSet(tuple(anchors))
    return Views.build(d, g, assign_coordinates(g, anchors))


@pytest.fixture
def line5():
    d = F.line5()
    return d, build_graph(d)


@pytest.fixture
def uvoid():
    d = F.uvoid()
    return d, build_graph(d)


@pytest.fixture
def twoarms():
    d = F.twoarms()
    return d, build_graph(d)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "LINES", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[k])
