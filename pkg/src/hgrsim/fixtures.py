"""Small hand-built deployments used by tests, scripts and examples.

FIX-TWOARMS is shifted up by one unit so every node sits inside a
nonnegative field; pairwise distances are unchanged.
"""
from .topology import Deployment

# node ids for the U-shaped void layout
S, L1, L2, L3, L4, L5, L6, D = range(8)
# node ids for the two-arm layout
A1, A2, TOP1, TOP2, TOP3, BOT1, BOT2, BOT3 = range(8)


def line5() -> Deployment:
    return Deployment.from_positions([(i, 0) for i in range(5)], 1.0, field_size=(4.0, 1.0))


def uvoid() -> Deployment:
    """Greedy from S toward D stalls at S; the only route is the 7-hop U."""
    pts = [(2, 0), (1, 0), (0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    return Deployment.from_positions(pts, 1.0, field_size=(2.0, 3.0))


def twoarms() -> Deployment:
    """Two anchors joined by two arms that only touch through the anchors."""
    pts = [(0, 1), (4, 1),
           (1, 2), (2, 2), (3, 2),
           (1, 0), (2, 0), (3, 0)]
    return Deployment.from_positions(pts, 1.5, field_size=(4.0, 2.0))


def uvoid_spur() -> Deployment:
    """U-void plus a dead-end side branch off L3 that looks attractive in VC space.

    Nodes 8 and 9 hang off L3 to the right; with corner-ish anchors the
    branch tip is a VC local minimum for destinations on the far arm.
    """
    pts = [(2, 0), (1, 0), (0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3),
           (0.9, 1.2), (1.8, 1.2)]
    return Deployment.from_positions(pts, 1.0, field_size=(2.0, 3.0))
