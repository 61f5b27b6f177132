import pytest
from hypothesis import given, settings, strategies as st

from hgrsim import fixtures as F
from hgrsim.errors import InvalidParameter, UnreachableNodeError
from hgrsim.topology import Deployment, Graph, build_graph
from hgrsim.vcs import AnchorSet, VcTable, assign_coordinates, find_vc_zones, select_anchors

from conftest import random_connected
from test_topology import floyd_warshall


def test_line5_two_anchors(line5):
    _, g = line5
    t = assign_coordinates(g, AnchorSet((0, 4)))
    assert t.rows == ((0, 4), (1, 3), (2, 2), (3, 1), (4, 0))
    assert find_vc_zones(g, t) == []


def test_uvoid_coordinates(uvoid):
    _, g = uvoid
    t = assign_coordinates(g, AnchorSet((F.L2, F.D)))
    assert t.rows == ((2, 7), (1, 6), (0, 5), (1, 4), (2, 3), (3, 2), (4, 1), (5, 0))


def test_single_anchor_is_one_dimensional(line5):
    _, g = line5
    t = assign_coordinates(g, AnchorSet((2,)))
    assert t.k == 1
    assert [r[0] for r in t.rows] == [2, 1, 0, 1, 2]


def test_twoarms_zones(twoarms):
    _, g = twoarms
    t = assign_coordinates(g, AnchorSet((F.A1, F.A2)))
    assert t[F.TOP1] == t[F.BOT1] == (1, 3)
    assert t[F.TOP2] == t[F.BOT2] == (2, 2)
    assert t[F.TOP3] == t[F.BOT3] == (3, 1)
    zones = find_vc_zones(g, t)
    assert len(zones) == 3
    assert all(z.disconnected and z.expanded for z in zones)
    spans = {z.coordinate: z.span_hops for z in zones}
    assert spans == {(1, 3): 2, (2, 2): 4, (3, 1): 2}


def test_unreachable_anchor():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(UnreachableNodeError):
        assign_coordinates(g, AnchorSet((0,)))


def test_anchor_set_validation():
    with pytest.raises(InvalidParameter):
        AnchorSet(())
    with pytest.raises(InvalidParameter):
        AnchorSet((1, 1))


@pytest.mark.parametrize("k", [0, 6])
def test_select_anchors_bad_k(line5, k):
    d, g = line5
    with pytest.raises(InvalidParameter):
        select_anchors(g, d, k)


def test_corner_anchors_pick_nearest_nodes():
    pts = [(0.1, 0.1), (5, 5), (9.9, 0.2), (9.8, 9.7), (0.3, 9.9), (5, 6)]
    d = Deployment.from_positions(pts, 20.0, field_size=(10, 10))
    g = build_graph(d)
    assert select_anchors(g, d, 4, "corners").anchors == (0, 2, 3, 4)
    # wraps around the corner list, never reusing a node
    assert len(set(select_anchors(g, d, 6, "corners").anchors)) == 6


@pytest.mark.parametrize("strategy", ["corners", "perimeter", "random"])
def test_strategies_deterministic_and_distinct(strategy):
    d, g = random_connected(40, 3)
    a = select_anchors(g, d, 5, strategy)
    assert a == select_anchors(g, d, 5, strategy)
    assert len(set(a.anchors)) == 5


def test_table_text_round_trip(uvoid):
    _, g = uvoid
    t = assign_coordinates(g, AnchorSet((F.L2, F.D)))
    assert VcTable.from_text(t.to_text(), (F.L2, F.D)) == t
    assert not t.coords.flags.writeable


@pytest.mark.parametrize("seed", range(100))
def test_lipschitz_on_random_scenarios(seed):
    d, g = random_connected(60, seed)
    t = assign_coordinates(g, select_anchors(g, d, 4))
    for u, v in g.edges():
        assert all(abs(a - b) <= 1 for a, b in zip(t[u], t[v]))


@pytest.mark.parametrize("seed", range(20))
def test_coordinates_equal_brute_force(seed):
    d, g = random_connected(45, seed)
    anchors = select_anchors(g, d, 5, "random")
    t = assign_coordinates(g, anchors)
    fw = floyd_warshall(g)
    for v in range(g.n):
        assert t[v] == tuple(int(fw[a, v]) for a in anchors)
    for i, a in enumerate(anchors):
        assert t[a][i] == 0


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), perm_seed=st.integers(0, 10**6))
def test_relabeling_equivariance(seed, perm_seed):
    import numpy as np
    d, g = random_connected(25, seed)
    perm = np.random.default_rng(perm_seed).permutation(g.n)  # old id -> new id
    edges = [(int(perm[u]), int(perm[v])) for u, v in g.edges()]
    h = Graph.from_edges(g.n, edges)
    anchors = (0, 7, 13)
    t = assign_coordinates(g, AnchorSet(anchors))
    s = assign_coordinates(h, AnchorSet(tuple(int(perm[a]) for a in anchors)))
    for v in range(g.n):
        assert t[v] == s[int(perm[v])]


@pytest.mark.parametrize("seed", range(10))
def test_zones_partition_duplicates(seed):
    d, g = random_connected(40, seed, field=(300, 300), radio_range=60)
    t = assign_coordinates(g, select_anchors(g, d, 2))
    zones = find_vc_zones(g, t)
    seen = set()
    for z in zones:
        assert len(z.members) >= 2
        assert len({t[m] for m in z.members}) == 1
        assert not (seen & z.members)
        seen |= z.members
    dup = {v for v in range(g.n) if sum(t[u] == t[v] for u in range(g.n)) > 1}
    assert seen == dup
    sizes = [(-len(z.members), z.coordinate) for z in zones]
    assert sizes == sorted(sizes)
